// oracle.hpp - exponential-time exact counters used as ground truth
#ifndef KHAM_ORACLE_HPP
#define KHAM_ORACLE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "kham/cycles.hpp"
#include "kham/formulas.hpp"
#include "kham/hypergraph.hpp"

namespace kham {

struct CensusLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleCensus {
    long long distinct_cycles = 0;  // canonical edge-set classes
    long long orderings = 0;        // phase-0 vertex sequences realizing a cycle

    BigRational symmetry_ratio() const {
        return BigRational(orderings, distinct_cycles);
    }
};

namespace detail {

inline void census_backtrack(const KGraph& h, int ell, int pos,
                             std::vector<Vertex>& order,
                             std::vector<char>& used, long long& rooted,
                             std::set<CanonicalCycle>& canon) {
    const int n = h.n();
    const int k = h.k();
    const int d = k - ell;
    if (pos == n) {
        // wrapped windows: starts s with s + k > n
        Edge w(k);
        for (int s = ((n - k) / d + 1) * d; s < n; s += d) {
            for (int i = 0; i < k; ++i) w[i] = order[(s + i) % n];
            std::sort(w.begin(), w.end());
            if (!h.has_edge(w)) return;
        }
        ++rooted;
        canon.insert(canonical_cycle(order, k, ell));
        return;
    }
    // root: vertex 0 must land in the first stride block
    if (pos == d && !used[0]) return;
    for (Vertex v = 0; v < n; ++v) {
        if (used[v]) continue;
        order[pos] = v;
        if (pos >= k - 1 && (pos - k + 1) % d == 0) {
            Edge w(order.begin() + (pos - k + 1), order.begin() + pos + 1);
            std::sort(w.begin(), w.end());
            if (!h.has_edge(w)) continue;
        }
        used[v] = 1;
        census_backtrack(h, ell, pos + 1, order, used, rooted, canon);
        used[v] = 0;
    }
}

}  // namespace detail

// Exhaustive Hamiltonian ell-cycle census. Rooted enumeration (vertex 0 in
// the first stride block) with the free rotation count multiplied back.
inline CycleCensus count_ham_ell_cycles(const KGraph& h, int ell,
                                        int limit_n = 12) {
    const int n = h.n();
    const int k = h.k();
    const int d = k - ell;
    if (ell < 0 || ell >= k)
        throw std::invalid_argument("count_ham_ell_cycles: need 0 <= ell < k");
    if (n < k || n % d != 0)
        throw std::invalid_argument("count_ham_ell_cycles: (k-ell) must divide n");
    if (n > limit_n)
        throw CensusLimitExceeded(
            "count_ham_ell_cycles: n exceeds the census limit; raise the limit "
            "explicitly if the runtime is acceptable");
    std::vector<Vertex> order(n);
    std::vector<char> used(n, 0);
    long long rooted = 0;
    std::set<CanonicalCycle> canon;
    detail::census_backtrack(h, ell, 0, order, used, rooted, canon);
    CycleCensus res;
    res.distinct_cycles = static_cast<long long>(canon.size());
    res.orderings = rooted * (n / d);
    return res;
}

// Number of unordered perfect matchings of a k-partite k-graph given as an
// equipartition view with s = k parts.
inline long long count_perfect_matchings_partite(const PartiteView& view,
                                                 int limit_m = 10) {
    const KGraph& h = *view.base;
    const int k = h.k();
    if (static_cast<int>(view.num_parts()) != k || !view.is_equipartition())
        throw std::invalid_argument(
            "count_perfect_matchings_partite: need an equipartition into k parts");
    const int m = static_cast<int>(view.part_size());
    if (m > limit_m)
        throw CensusLimitExceeded("count_perfect_matchings_partite: m over limit");

    std::vector<char> used(h.n(), 0);
    long long count = 0;
    // one edge per part-0 vertex, processed in order: each matching once
    auto rec = [&](auto&& self, int j) -> void {
        if (j == m) {
            ++count;
            return;
        }
        Edge e(k);  // per level: deeper calls must not clobber this edge
        e[0] = view.parts[0][j];
        auto pick = [&](auto&& pickself, int part) -> void {
            if (part == k) {
                if (h.has_edge_unsorted(e)) {
                    for (int i = 1; i < k; ++i) used[e[i]] = 1;
                    self(self, j + 1);
                    for (int i = 1; i < k; ++i) used[e[i]] = 0;
                }
                return;
            }
            for (Vertex v : view.parts[part]) {
                if (used[v]) continue;
                e[part] = v;
                pickself(pickself, part + 1);
            }
        };
        pick(pick, 1);
        return;
    };
    rec(rec, 0);
    return count;
}

// Ryser's inclusion-exclusion with Gray-code subset iteration.
inline BigInt permanent(const std::vector<std::vector<int>>& b) {
    const int m = static_cast<int>(b.size());
    if (m == 0) return 1;
    if (m > 24) throw CensusLimitExceeded("permanent: m > 24 refused");
    for (const auto& row : b)
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("permanent: matrix not square");

    std::vector<long long> row_sums(m, 0);
    BigInt total = 0;
    __int128 chunk = 0;
    int chunk_fill = 0;
    auto flush = [&] {
        bool neg = chunk < 0;
        unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(chunk)
                                    : static_cast<unsigned __int128>(chunk);
        BigInt v = static_cast<std::uint64_t>(mag >> 64);
        v <<= 64;
        v += static_cast<std::uint64_t>(mag);
        total += neg ? -v : v;
        chunk = 0;
        chunk_fill = 0;
    };

    const std::uint64_t subsets = 1ULL << m;
    std::uint64_t gray = 0;
    for (std::uint64_t idx = 1; idx < subsets; ++idx) {
        const std::uint64_t new_gray = idx ^ (idx >> 1);
        const std::uint64_t diff = gray ^ new_gray;
        const int col = __builtin_ctzll(diff);
        const int sign_col = (new_gray & diff) ? 1 : -1;
        for (int i = 0; i < m; ++i) row_sums[i] += sign_col * b[i][col];
        gray = new_gray;

        __int128 prod = 1;
        for (int i = 0; i < m && prod != 0; ++i) prod *= row_sums[i];
        const int popcnt = __builtin_popcountll(gray);
        // (-1)^{m - |S|}
        if ((m - popcnt) % 2 == 1) prod = -prod;
        chunk += prod;
        if (++chunk_fill == 16384) flush();
    }
    flush();
    return total;
}

// Independent matching counter for cross-checking the permanent: plain
// row-by-row backtracking.
inline long long count_matchings_backtrack(const std::vector<std::vector<int>>& b) {
    const int m = static_cast<int>(b.size());
    std::vector<char> used(m, 0);
    long long count = 0;
    auto rec = [&](auto&& self, int row) -> void {
        if (row == m) {
            ++count;
            return;
        }
        for (int col = 0; col < m; ++col) {
            if (used[col] || !b[row][col]) continue;
            used[col] = 1;
            self(self, row + 1);
            used[col] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

// Exact number of tuples (pi_{r+1},...,pi_k) completing a fixed prefix of r
// permutations into a tuple that induces a perfect matching. Tuples are
// counted, not matchings.
inline long long count_matching_extensions(
    const PartiteView& view, const std::vector<std::vector<Vertex>>& prefix,
    int limit_m = 8) {
    const KGraph& h = *view.base;
    const int k = h.k();
    const int r = static_cast<int>(prefix.size());
    if (static_cast<int>(view.num_parts()) != k || !view.is_equipartition())
        throw std::invalid_argument("count_matching_extensions: bad view");
    if (r > k - 2)
        throw std::invalid_argument("count_matching_extensions: r must be <= k-2");
    const int m = static_cast<int>(view.part_size());
    if (m > limit_m)
        throw CensusLimitExceeded("count_matching_extensions: m over limit");
    for (int i = 0; i < r; ++i) {
        std::vector<Vertex> sorted = prefix[i];
        std::sort(sorted.begin(), sorted.end());
        std::vector<Vertex> part = view.parts[i];
        std::sort(part.begin(), part.end());
        if (sorted != part)
            throw std::invalid_argument(
                "count_matching_extensions: prefix is not a bijection onto its part");
    }

    std::vector<char> used(h.n(), 0);
    long long count = 0;
    auto rec = [&](auto&& self, int j) -> void {
        if (j == m) {
            ++count;
            return;
        }
        Edge e(k);  // per level: deeper calls must not clobber this edge
        for (int i = 0; i < r; ++i) e[i] = prefix[i][j];
        auto pick = [&](auto&& pickself, int part) -> void {
            if (part == k) {
                if (h.has_edge_unsorted(e)) {
                    for (int i = r; i < k; ++i) used[e[i]] = 1;
                    self(self, j + 1);
                    for (int i = r; i < k; ++i) used[e[i]] = 0;
                }
                return;
            }
            for (Vertex v : view.parts[part]) {
                if (used[v]) continue;
                e[part] = v;
                pickself(pickself, part + 1);
            }
        };
        pick(pick, r);
    };
    rec(rec, 0);
    return count;
}

namespace detail {

// Constrained Hamiltonian ell-path search over a partially fixed position
// array. Fail-first: each step expands whichever frontier position has fewer
// viable candidates; candidates tried in ascending label order.
class PathSearcher {
public:
    PathSearcher(const KGraph& f, int ell)
        : f_(f), k_(f.k()), d_(f.k() - ell), n_(f.n()) {}

    std::optional<std::vector<Vertex>> run(const Edge& first_order,
                                           const Edge& last_order) {
        pos_.assign(n_, -1);
        used_.assign(n_, 0);
        if ((n_ - k_) % d_ != 0)
            throw std::invalid_argument(
                "find_ell_path_constrained: need N ≡ k (mod k-ell)");
        if (static_cast<int>(first_order.size()) != k_ ||
            static_cast<int>(last_order.size()) != k_)
            throw std::invalid_argument(
                "find_ell_path_constrained: end edges must have k vertices");
        if (!f_.has_edge_unsorted(first_order) || !f_.has_edge_unsorted(last_order))
            throw std::invalid_argument(
                "find_ell_path_constrained: end sequences are not edges of F");
        for (int i = 0; i < k_; ++i) {
            if (!place(i, first_order[i])) return std::nullopt;
        }
        for (int i = 0; i < k_; ++i) {
            int p = n_ - k_ + i;
            if (pos_[p] == last_order[i]) continue;
            if (!place(p, last_order[i])) return std::nullopt;
        }
        // verify windows already fully fixed
        for (int s = 0; s + k_ <= n_; s += d_) {
            bool full = true;
            for (int i = 0; i < k_; ++i) full &= pos_[s + i] >= 0;
            if (full && !window_ok(s)) return std::nullopt;
        }
        if (search()) return pos_;
        return std::nullopt;
    }

private:
    bool place(int p, Vertex v) {
        if (pos_[p] >= 0) return pos_[p] == v;
        if (used_[v]) return false;
        pos_[p] = v;
        used_[v] = 1;
        return true;
    }

    bool window_ok(int start) const {
        Edge w(pos_.begin() + start, pos_.begin() + start + k_);
        std::sort(w.begin(), w.end());
        return f_.has_edge(w);
    }

    bool ok_after(int p, Vertex v) {
        pos_[p] = v;
        bool ok = true;
        for (int s = std::max(0, ((p - k_ + 1) + d_ - 1) / d_ * d_);
             ok && s <= p && s + k_ <= n_; s += d_) {
            bool full = true;
            for (int i = 0; i < k_; ++i) full &= pos_[s + i] >= 0;
            if (full) ok = window_ok(s);
        }
        pos_[p] = -1;
        return ok;
    }

    std::vector<Vertex> candidates(int p) {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < n_; ++v)
            if (!used_[v] && ok_after(p, v)) out.push_back(v);
        return out;
    }

    bool search() {
        int left = -1, right = -1;
        for (int p = 0; p < n_; ++p)
            if (pos_[p] < 0) {
                left = p;
                break;
            }
        if (left < 0) return true;
        for (int p = n_ - 1; p >= 0; --p)
            if (pos_[p] < 0) {
                right = p;
                break;
            }
        auto cl = candidates(left);
        std::vector<Vertex> cands;
        int p;
        if (left == right) {
            p = left;
            cands = std::move(cl);
        } else {
            auto cr = candidates(right);
            if (cl.size() <= cr.size()) {
                p = left;
                cands = std::move(cl);
            } else {
                p = right;
                cands = std::move(cr);
            }
        }
        for (Vertex v : cands) {
            pos_[p] = v;
            used_[v] = 1;
            if (search()) return true;
            used_[v] = 0;
            pos_[p] = -1;
        }
        return false;
    }

    const KGraph& f_;
    int k_, d_, n_;
    std::vector<Vertex> pos_;
    std::vector<char> used_;
};

}  // namespace detail

// Hamiltonian ell-path of F whose first k positions equal first_order and
// last k positions equal last_order, if one exists.
inline std::optional<std::vector<Vertex>> find_ell_path_constrained(
    const KGraph& f, int ell, const Edge& first_order, const Edge& last_order) {
    detail::PathSearcher searcher(f, ell);
    return searcher.run(first_order, last_order);
}

// Variant anchored on ordered (k-1)-sets: tries all single-vertex completions
// of the end windows.
inline std::optional<std::vector<Vertex>> find_ell_path_constrained_ends(
    const KGraph& f, int ell, const std::vector<Vertex>& first_k1,
    const std::vector<Vertex>& last_k1) {
    const int k = f.k();
    if (static_cast<int>(first_k1.size()) != k - 1 ||
        static_cast<int>(last_k1.size()) != k - 1)
        throw std::invalid_argument("constrained ends must have k-1 vertices");
    std::vector<char> fixed(f.n(), 0);
    for (Vertex v : first_k1) fixed[v] = 1;
    for (Vertex v : last_k1) fixed[v] = 1;
    for (Vertex a = 0; a < f.n(); ++a) {
        if (fixed[a]) continue;
        Edge first = first_k1;
        first.push_back(a);
        if (!f.has_edge_unsorted(first)) continue;
        for (Vertex b = 0; b < f.n(); ++b) {
            if (fixed[b] || b == a) continue;
            Edge last;
            last.push_back(b);
            last.insert(last.end(), last_k1.begin(), last_k1.end());
            if (!f.has_edge_unsorted(last)) continue;
            auto res = find_ell_path_constrained(f, ell, first, last);
            if (res) return res;
        }
    }
    return std::nullopt;
}

// An ell-path on the same ordering as a tight ((k-1)-)path, keeping every
// (k-ell)-th window.
inline EllPath tight_path_to_ell_path(const std::vector<Vertex>& tight_order,
                                      int k, int ell) {
    const int d = k - ell;
    const int n = static_cast<int>(tight_order.size());
    if (n < k || (n - k) % d != 0)
        throw std::invalid_argument(
            "tight_path_to_ell_path: vertex count incompatible with an ell-path");
    // tight windows exist at every start; the ell-path keeps starts 0, d, ...
    (void)path_windows(tight_order, k, k - 1);
    return EllPath{tight_order, k, ell};
}

// --- helpers for general (non-partite) k-graphs, used by the extremal models ---

inline int max_disjoint_edges(const KGraph& h) {
    const auto& edges = h.edges();
    std::vector<char> used(h.n(), 0);
    int best = 0;
    auto rec = [&](auto&& self, std::size_t from, int size) -> void {
        best = std::max(best, size);
        for (std::size_t i = from; i < edges.size(); ++i) {
            bool free = true;
            for (Vertex v : edges[i]) free &= !used[v];
            if (!free) continue;
            for (Vertex v : edges[i]) used[v] = 1;
            self(self, i + 1, size + 1);
            for (Vertex v : edges[i]) used[v] = 0;
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline long long count_perfect_matchings_general(const KGraph& h) {
    if (h.n() % h.k() != 0)
        throw std::invalid_argument("count_perfect_matchings_general: k must divide n");
    std::vector<std::vector<std::size_t>> incident(h.n());
    for (std::size_t i = 0; i < h.edges().size(); ++i)
        for (Vertex v : h.edges()[i]) incident[v].push_back(i);
    std::vector<char> used(h.n(), 0);
    long long count = 0;
    auto rec = [&](auto&& self, Vertex lowest) -> void {
        while (lowest < h.n() && used[lowest]) ++lowest;
        if (lowest == h.n()) {
            ++count;
            return;
        }
        for (std::size_t i : incident[lowest]) {
            const auto& e = h.edges()[i];
            bool free = true;
            for (Vertex v : e) free &= !used[v];
            if (!free) continue;
            for (Vertex v : e) used[v] = 1;
            self(self, lowest + 1);
            for (Vertex v : e) used[v] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace kham

#endif  // KHAM_ORACLE_HPP
