// matching.hpp - the B_pi auxiliary bipartite machinery and randomized
// matching extensions
#ifndef KHAM_MATCHING_HPP
#define KHAM_MATCHING_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kham/hypergraph.hpp"
#include "kham/rng.hpp"

namespace kham {

// perms[i][j] = pi_{i+1}(j): a bijection [m] -> V_{i+1} per covered part.
struct PermutationTuple {
    std::vector<std::vector<Vertex>> perms;
};

inline void check_permutation(const std::vector<Vertex>& perm,
                              const std::vector<Vertex>& part) {
    std::vector<Vertex> a = perm, b = part;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw std::invalid_argument("permutation is not a bijection onto its part");
}

struct AuxBipartite {
    std::vector<std::vector<Vertex>> left;  // left[j] = {pi_1(j),...,pi_{k-1}(j)}
    std::vector<Vertex> right;              // V_k in part order
    std::vector<std::vector<int>> adjacency;
    int min_degree_left = 0;
    int min_degree_right = 0;

    int min_degree() const { return std::min(min_degree_left, min_degree_right); }
};

// B_pi(H): left vertex j adjacent to v in V_k iff left[j] + {v} is an edge.
inline AuxBipartite build_aux_bipartite(const PartiteView& view,
                                        const PermutationTuple& prefix) {
    const KGraph& h = *view.base;
    const int k = h.k();
    if (static_cast<int>(view.num_parts()) != k || !view.is_equipartition())
        throw std::invalid_argument("build_aux_bipartite: need k equal parts");
    if (static_cast<int>(prefix.perms.size()) != k - 1)
        throw std::invalid_argument("build_aux_bipartite: prefix must cover parts 1..k-1");
    const int m = static_cast<int>(view.part_size());
    for (int i = 0; i < k - 1; ++i) check_permutation(prefix.perms[i], view.parts[i]);

    AuxBipartite b;
    b.right = view.parts[k - 1];
    b.left.resize(m);
    b.adjacency.assign(m, std::vector<int>(m, 0));
    std::vector<int> right_deg(m, 0);
    b.min_degree_left = m;
    Edge e(k);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < k - 1; ++i) e[i] = prefix.perms[i][j];
        b.left[j] = std::vector<Vertex>(e.begin(), e.end() - 1);
        int deg = 0;
        for (int c = 0; c < m; ++c) {
            e[k - 1] = b.right[c];
            if (h.has_edge_unsorted(e)) {
                b.adjacency[j][c] = 1;
                ++deg;
                ++right_deg[c];
            }
        }
        b.min_degree_left = std::min(b.min_degree_left, deg);
    }
    b.min_degree_right = m == 0 ? 0 : *std::min_element(right_deg.begin(), right_deg.end());
    return b;
}

inline std::vector<Vertex> random_permutation(const std::vector<Vertex>& part,
                                              Rng& rng) {
    std::vector<Vertex> p = part;
    rng.shuffle(p);
    return p;
}

// Empirical probability that min degree of B_pi >= (delta - eps) m over
// uniformly random pi_{k-1}, with delta = delta*_{k-1}(view)/m. Deterministic
// per (seed, trials); trials may run on several workers with per-trial
// derived seeds.
inline double estimate_mindeg_probability(
    const PartiteView& view, const PermutationTuple& fixed_prefix, double eps,
    int trials, std::uint64_t seed, int workers = 1) {
    const KGraph& h = *view.base;
    const int k = h.k();
    if (trials < 1) throw std::invalid_argument("estimate_mindeg_probability: trials >= 1");
    if (static_cast<int>(fixed_prefix.perms.size()) != k - 2)
        throw std::invalid_argument(
            "estimate_mindeg_probability: prefix must cover parts 1..k-2");
    const int m = static_cast<int>(view.part_size());
    const double delta = static_cast<double>(partite_min_codegree(view)) / m;
    const double threshold = (delta - eps) * m;
    if (threshold <= 0) return 1.0;  // vacuous

    auto run_trial = [&](int t) -> int {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        PermutationTuple prefix = fixed_prefix;
        prefix.perms.push_back(random_permutation(view.parts[k - 2], rng));
        AuxBipartite b = build_aux_bipartite(view, prefix);
        return b.min_degree() >= threshold ? 1 : 0;
    };

    long long hits = 0;
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) hits += run_trial(t);
    } else {
        std::vector<long long> partial(workers, 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int t = w; t < trials; t += workers) partial[w] += run_trial(t);
            });
        for (auto& th : pool) th.join();
        for (long long p : partial) hits += p;
    }
    return static_cast<double>(hits) / trials;
}

// Kuhn's augmenting-path perfect matching on the aux bipartite graph; left
// vertices scanned in increasing j. Returns match_of_left or nullopt.
inline std::optional<std::vector<int>> bipartite_perfect_matching(
    const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(adj.size());
    std::vector<int> match_right(m, -1), match_left(m, -1);
    std::vector<char> visited(m);
    auto augment = [&](auto&& self, int j) -> bool {
        for (int c = 0; c < m; ++c) {
            if (!adj[j][c] || visited[c]) continue;
            visited[c] = 1;
            if (match_right[c] < 0 || self(self, match_right[c])) {
                match_right[c] = j;
                match_left[j] = c;
                return true;
            }
        }
        return false;
    };
    for (int j = 0; j < m; ++j) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, j)) return std::nullopt;
    }
    return match_left;
}

// Does the full tuple induce a perfect matching in the view?
inline bool tuple_induces_matching(const PartiteView& view,
                                   const PermutationTuple& tuple) {
    const KGraph& h = *view.base;
    const int k = h.k();
    if (static_cast<int>(tuple.perms.size()) != k) return false;
    const int m = static_cast<int>(view.part_size());
    Edge e(k);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < k; ++i) e[i] = tuple.perms[i][j];
        if (!h.has_edge_unsorted(e)) return false;
    }
    return true;
}

// Rejection sampler: completes a fixed prefix pi_1..pi_r with random
// pi_{r+1}..pi_{k-1}, then encodes a perfect matching of B_pi as pi_k.
inline std::optional<PermutationTuple> sample_matching_extension(
    const PartiteView& view, const PermutationTuple& fixed_prefix,
    std::uint64_t seed, int max_attempts = 20) {
    const KGraph& h = *view.base;
    const int k = h.k();
    const int r = static_cast<int>(fixed_prefix.perms.size());
    if (r > k - 2)
        throw std::invalid_argument("sample_matching_extension: r must be <= k-2");
    if (static_cast<int>(view.num_parts()) != k || !view.is_equipartition())
        throw std::invalid_argument("sample_matching_extension: need k equal parts");
    for (int i = 0; i < r; ++i) check_permutation(fixed_prefix.perms[i], view.parts[i]);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
        PermutationTuple tuple = fixed_prefix;
        for (int i = r; i < k - 1; ++i)
            tuple.perms.push_back(random_permutation(view.parts[i], rng));
        AuxBipartite b = build_aux_bipartite(view, tuple);
        if (b.min_degree_left == 0) return std::nullopt;  // isolated (k-1)-set
        auto match = bipartite_perfect_matching(b.adjacency);
        if (!match) continue;
        std::vector<Vertex> pi_k(view.part_size());
        for (std::size_t j = 0; j < pi_k.size(); ++j) pi_k[j] = b.right[(*match)[j]];
        tuple.perms.push_back(std::move(pi_k));
        if (!tuple_induces_matching(view, tuple))
            throw std::logic_error("sample_matching_extension: postcondition failed");
        return tuple;
    }
    return std::nullopt;
}

struct OrderedMatching {
    std::vector<Edge> edges;                      // e_j ordered by j
    std::vector<std::vector<Vertex>> trailing;    // X_j: last-ell-part slice
};

// Edges e_j = {pi_1(j),...,pi_k(j)} in index order, with the trailing-ell
// projections used to chain matchings across pipeline steps.
inline OrderedMatching ordered_matching_from_tuple(const PartiteView& view,
                                                   const PermutationTuple& tuple,
                                                   int ell) {
    if (!tuple_induces_matching(view, tuple))
        throw std::invalid_argument(
            "ordered_matching_from_tuple: tuple does not induce a matching");
    const int k = view.base->k();
    const int m = static_cast<int>(view.part_size());
    OrderedMatching out;
    out.edges.resize(m);
    out.trailing.resize(m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < k; ++i) out.edges[j].push_back(tuple.perms[i][j]);
        for (int i = k - ell; i < k; ++i) out.trailing[j].push_back(tuple.perms[i][j]);
    }
    return out;
}

}  // namespace kham

#endif  // KHAM_MATCHING_HPP
