// models.hpp - reproducible instance generators
#ifndef KHAM_MODELS_HPP
#define KHAM_MODELS_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "kham/hypergraph.hpp"
#include "kham/rng.hpp"

namespace kham {

inline KGraph gen_complete(int n, int k) {
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const std::vector<Vertex>& s) { edges.push_back(s); });
    return KGraph(k, n, std::move(edges));
}

// Each k-set included independently with probability p; k-sets drawn in lex
// order so the output is a pure function of (n, k, p, seed).
inline KGraph gen_binomial(int n, int k, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("gen_binomial: p must be in [0,1]");
    Rng rng(derive_seed(seed, {0x62696e6fULL}));
    std::vector<Edge> edges;
    for_each_subset(n, k, [&](const std::vector<Vertex>& s) {
        if (rng.unit() < p) edges.push_back(s);
    });
    return KGraph(k, n, std::move(edges));
}

struct DiracInstance {
    KGraph graph;
    int achieved_min_codegree = 0;
    double p_used = 0.0;
    int attempts = 0;
};

// Rejection sampling of binomial instances at p = delta + margin until the
// minimum co-degree condition holds; margin grows on failure.
inline DiracInstance gen_dirac(int n, int k, double delta, std::uint64_t seed,
                               int max_tries = 20) {
    if (delta <= 0.5 || delta >= 1.0)
        throw std::invalid_argument("gen_dirac: delta must be in (1/2, 1)");
    double margin = 0.05;
    for (int t = 0; t < max_tries; ++t) {
        double p = std::min(1.0, delta + margin);
        KGraph h = gen_binomial(n, k, p, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        int mc = min_codegree(h);
        if (mc >= delta * n)
            return DiracInstance{std::move(h), mc, p, t + 1};
        margin = std::min(1.0 - delta, margin * 1.5 + 0.02);
    }
    throw std::runtime_error(
        "gen_dirac: tries exhausted; retry with a larger margin (higher delta slack)");
}

// Extremal 3-graph: parts X (|X| = n/3 - 1) and Y, all triples meeting X.
inline KGraph gen_bipartite3(int n) {
    if (n % 3 != 0 || n < 9)
        throw std::invalid_argument("gen_bipartite3: need 3 | n and n >= 9");
    const int x_size = n / 3 - 1;
    std::vector<Edge> edges;
    for_each_subset(n, 3, [&](const std::vector<Vertex>& s) {
        if (s[0] < x_size) edges.push_back(s);  // sorted, so s[0] is the minimum
    });
    return KGraph(3, n, std::move(edges));
}

// Variant with |X| = floor((1/3 + eps) n); all triples meeting X.
inline KGraph gen_h_epsilon(int n, double eps) {
    if (eps <= 0.0 || eps >= 1.0 / 6.0)
        throw std::invalid_argument("gen_h_epsilon: eps must be in (0, 1/6)");
    const int x_size = static_cast<int>((1.0 / 3.0 + eps) * n);
    std::vector<Edge> edges;
    for_each_subset(n, 3, [&](const std::vector<Vertex>& s) {
        if (s[0] < x_size) edges.push_back(s);
    });
    return KGraph(3, n, std::move(edges));
}

}  // namespace kham

#endif  // KHAM_MODELS_HPP
