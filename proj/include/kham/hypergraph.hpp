// hypergraph.hpp - immutable k-uniform hypergraph with co-degree queries
#ifndef KHAM_HYPERGRAPH_HPP
#define KHAM_HYPERGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kham {

using Vertex = int;
using Edge = std::vector<Vertex>;  // always kept sorted ascending

// Packs a sorted vertex set (size <= 8, vertices < 255) into a 64-bit key.
inline std::uint64_t pack_set(const std::vector<Vertex>& sorted) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        key |= (static_cast<std::uint64_t>(sorted[i]) + 1) << (8 * i);
    return key;
}

class KGraph {
public:
    KGraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n) {
        if (k < 2) throw std::invalid_argument("KGraph: k must be >= 2");
        if (k > 8) throw std::invalid_argument("KGraph: k > 8 unsupported");
        if (n < 0 || n > 254) throw std::invalid_argument("KGraph: n out of range");
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(edges.size() * 2);
        for (auto& e : edges) {
            std::sort(e.begin(), e.end());
            if (static_cast<int>(e.size()) != k)
                throw std::invalid_argument("KGraph: edge of wrong size");
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < 0 || e[i] >= n)
                    throw std::invalid_argument("KGraph: vertex out of range");
                if (i > 0 && e[i] == e[i - 1])
                    throw std::invalid_argument("KGraph: repeated vertex in edge");
            }
            if (!seen.insert(pack_set(e)).second)
                throw std::invalid_argument("KGraph: duplicate edge");
        }
        std::sort(edges.begin(), edges.end());
        edges_ = std::move(edges);
        keys_ = std::move(seen);
        index_ = std::make_shared<Index>();
    }

    int k() const { return k_; }
    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(const Edge& sorted_edge) const {
        return keys_.count(pack_set(sorted_edge)) != 0;
    }

    bool has_edge_unsorted(Edge e) const {
        std::sort(e.begin(), e.end());
        return has_edge(e);
    }

    // Vertices v with X + {v} in E, for a (k-1)-set X. Empty if none.
    const std::vector<Vertex>& completions(const std::vector<Vertex>& x) const {
        if (static_cast<int>(x.size()) != k_ - 1)
            throw std::invalid_argument("completions: need a (k-1)-set");
        ensure_index();
        Edge s = x;
        std::sort(s.begin(), s.end());
        auto it = index_->map.find(pack_set(s));
        static const std::vector<Vertex> kEmpty;
        return it == index_->map.end() ? kEmpty : it->second;
    }

    int codegree(const std::vector<Vertex>& x) const {
        return static_cast<int>(completions(x).size());
    }

private:
    struct Index {
        std::once_flag once;
        std::unordered_map<std::uint64_t, std::vector<Vertex>> map;
    };

    // (k-1)-set -> completion list, built on first co-degree query.
    // Held behind a shared_ptr so copies of the graph share it and the
    // graph stays movable.
    void ensure_index() const {
        std::call_once(index_->once, [this] {
            auto& map = index_->map;
            for (const auto& e : edges_) {
                Edge sub(e.begin(), e.end() - 1);
                for (int out = k_ - 1; out >= 0; --out) {
                    // sub = e minus e[out]
                    map[pack_set(sub)].push_back(e[out]);
                    if (out > 0) sub[out - 1] = e[out];
                }
            }
            for (auto& [key, v] : map) std::sort(v.begin(), v.end());
        });
    }

    int k_;
    int n_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> keys_;
    std::shared_ptr<Index> index_;
};

// Enumerates all r-subsets of {0,...,n-1} in lex order, invoking f on each.
template <typename F>
void for_each_subset(int n, int r, F&& f) {
    if (r > n) return;
    std::vector<Vertex> sub(r);
    for (int i = 0; i < r; ++i) sub[i] = i;
    for (;;) {
        f(const_cast<const std::vector<Vertex>&>(sub));
        int i = r - 1;
        while (i >= 0 && sub[i] == n - r + i) --i;
        if (i < 0) break;
        ++sub[i];
        for (int j = i + 1; j < r; ++j) sub[j] = sub[j - 1] + 1;
    }
}

inline int min_codegree(const KGraph& h) {
    if (h.n() < h.k()) throw std::invalid_argument("min_codegree: n < k");
    int best = h.n();  // > n-k+1, the attainable maximum
    for_each_subset(h.n(), h.k() - 1, [&](const std::vector<Vertex>& x) {
        best = std::min(best, h.codegree(x));
    });
    return best;
}

inline bool is_delta_dirac(const KGraph& h, double delta) {
    return min_codegree(h) >= delta * h.n();
}

struct InducedGraph {
    KGraph graph;                  // on 0..|S|-1
    std::vector<Vertex> to_global; // new label -> old label (ascending)

    Vertex to_local(Vertex global) const {
        auto it = std::lower_bound(to_global.begin(), to_global.end(), global);
        if (it == to_global.end() || *it != global)
            throw std::invalid_argument("to_local: vertex not in induced set");
        return static_cast<Vertex>(it - to_global.begin());
    }
};

inline InducedGraph induced(const KGraph& h, std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (Vertex v : s)
        if (v < 0 || v >= h.n())
            throw std::invalid_argument("induced: vertex out of range");
    std::vector<int> local(h.n(), -1);
    for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        Edge mapped;
        mapped.reserve(h.k());
        for (Vertex v : e) {
            if (local[v] < 0) break;
            mapped.push_back(local[v]);
        }
        if (static_cast<int>(mapped.size()) == h.k()) edges.push_back(std::move(mapped));
    }
    return InducedGraph{KGraph(h.k(), static_cast<int>(s.size()), std::move(edges)),
                        std::move(s)};
}

// Ordered list of disjoint vertex subsets of a base graph.
struct PartiteView {
    const KGraph* base = nullptr;
    std::vector<std::vector<Vertex>> parts;

    PartiteView(const KGraph& g, std::vector<std::vector<Vertex>> p)
        : base(&g), parts(std::move(p)) {
        std::vector<char> seen(g.n(), 0);
        for (const auto& part : parts)
            for (Vertex v : part) {
                if (v < 0 || v >= g.n())
                    throw std::invalid_argument("PartiteView: vertex out of range");
                if (seen[v]++)
                    throw std::invalid_argument("PartiteView: parts not disjoint");
            }
    }

    std::size_t num_parts() const { return parts.size(); }

    bool is_equipartition() const {
        for (const auto& p : parts)
            if (p.size() != parts[0].size()) return false;
        return true;
    }

    std::size_t part_size() const { return parts.empty() ? 0 : parts[0].size(); }

    // View restricted to a contiguous range [first, first+count) of parts.
    PartiteView slice(std::size_t first, std::size_t count) const {
        std::vector<std::vector<Vertex>> p(parts.begin() + first,
                                           parts.begin() + first + count);
        return PartiteView(*base, std::move(p));
    }
};

// delta*_{k-1}: min over (k-1)-sets X spanning k-1 distinct parts and a
// further part index i of d(X, V_i), counting partite edges only.
inline int partite_min_codegree(const PartiteView& view) {
    const KGraph& h = *view.base;
    const int k = h.k();
    const int s = static_cast<int>(view.num_parts());
    if (s < k) throw std::invalid_argument("partite_min_codegree: fewer than k parts");

    std::vector<int> part_of(h.n(), -1);
    for (int i = 0; i < s; ++i)
        for (Vertex v : view.parts[i]) part_of[v] = i;

    int best = -1;
    std::vector<Vertex> x(k - 1);
    // choose k-1 distinct parts, a tuple X from them, and a target part i
    for_each_subset(s, k - 1, [&](const std::vector<Vertex>& part_idx) {
        std::vector<std::size_t> pos(k - 1, 0);
        for (;;) {
            for (int j = 0; j < k - 1; ++j)
                x[j] = view.parts[part_idx[j]][pos[j]];
            for (int i = 0; i < s; ++i) {
                if (std::find(part_idx.begin(), part_idx.end(), i) != part_idx.end())
                    continue;
                int d = 0;
                for (Vertex v : h.completions(x))
                    if (part_of[v] == i) ++d;
                if (best < 0 || d < best) best = d;
            }
            int j = k - 2;
            while (j >= 0 && ++pos[j] == view.parts[part_idx[j]].size()) {
                pos[j] = 0;
                --j;
            }
            if (j < 0) break;
        }
    });
    return best < 0 ? 0 : best;
}

// ---------------------------------------------------------------------------
// Text instance format: first line "k n", then one edge per line as k
// space-separated vertex indices; '#' lines and blank lines ignored.
// ---------------------------------------------------------------------------

inline KGraph read_kgraph(std::istream& in) {
    std::string line;
    int k = -1, n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<long> nums;
        long v;
        while (ls >> v) nums.push_back(v);
        if (nums.empty()) continue;
        if (k < 0) {
            if (nums.size() != 2)
                throw std::invalid_argument("instance: header must be 'k n'");
            k = static_cast<int>(nums[0]);
            n = static_cast<int>(nums[1]);
            continue;
        }
        Edge e(nums.begin(), nums.end());
        edges.push_back(std::move(e));
    }
    if (k < 0) throw std::invalid_argument("instance: missing header");
    return KGraph(k, n, std::move(edges));
}

inline void write_kgraph(std::ostream& out, const KGraph& h) {
    out << h.k() << ' ' << h.n() << '\n';
    for (const auto& e : h.edges()) {  // already lex-sorted: byte-stable
        for (std::size_t i = 0; i < e.size(); ++i)
            out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

}  // namespace kham

#endif  // KHAM_HYPERGRAPH_HPP
