// cycles.hpp - ell-cycle / ell-path window arithmetic, validation, canonical form
#ifndef KHAM_CYCLES_HPP
#define KHAM_CYCLES_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kham/hypergraph.hpp"

namespace kham {

struct VertexSequence {
    std::vector<Vertex> order;
    bool cyclic = false;
};

inline void check_distinct(const std::vector<Vertex>& order) {
    std::vector<Vertex> s = order;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("vertex sequence has repeated vertices");
}

// Length-k windows at stride (k-ell) around a cyclic ordering; each window
// returned sorted. Requires (k-ell) | N and N >= k.
inline std::vector<Edge> cycle_windows(const std::vector<Vertex>& order, int k,
                                       int ell) {
    const int d = k - ell;
    const int N = static_cast<int>(order.size());
    if (d <= 0) throw std::invalid_argument("cycle_windows: need ell < k");
    if (N < k || N % d != 0)
        throw std::invalid_argument("cycle_windows: (k-ell) must divide N and N >= k");
    std::vector<Edge> windows;
    windows.reserve(N / d);
    for (int start = 0; start < N; start += d) {
        Edge w(k);
        for (int i = 0; i < k; ++i) w[i] = order[(start + i) % N];
        std::sort(w.begin(), w.end());
        windows.push_back(std::move(w));
    }
    return windows;
}

// Windows of a (non-cyclic) ell-path. Requires N ≡ k (mod k-ell), N >= k.
inline std::vector<Edge> path_windows(const std::vector<Vertex>& order, int k,
                                      int ell) {
    const int d = k - ell;
    const int N = static_cast<int>(order.size());
    if (d <= 0) throw std::invalid_argument("path_windows: need ell < k");
    if (N < k || (N - k) % d != 0)
        throw std::invalid_argument("path_windows: need N ≡ k (mod k-ell)");
    std::vector<Edge> windows;
    windows.reserve((N - k) / d + 1);
    for (int start = 0; start + k <= N; start += d) {
        Edge w(order.begin() + start, order.begin() + start + k);
        std::sort(w.begin(), w.end());
        windows.push_back(std::move(w));
    }
    return windows;
}

struct CycleValidation {
    bool ok = false;
    bool degenerate = false;            // only 2 windows: N == 2(k-ell)
    std::vector<int> violations;        // start positions of non-edge windows
};

inline CycleValidation validate_ell_cycle(const KGraph& h,
                                          const std::vector<Vertex>& order,
                                          int ell) {
    const int k = h.k();
    const int d = k - ell;
    check_distinct(order);
    auto windows = cycle_windows(order, k, ell);
    CycleValidation res;
    res.degenerate = static_cast<int>(order.size()) == 2 * d;
    for (std::size_t j = 0; j < windows.size(); ++j)
        if (!h.has_edge(windows[j]))
            res.violations.push_back(static_cast<int>(j) * d);
    res.ok = res.violations.empty();
    return res;
}

struct PathValidation {
    bool ok = false;
    std::vector<int> violations;
};

inline PathValidation validate_ell_path(const KGraph& h,
                                        const std::vector<Vertex>& order,
                                        int ell) {
    const int k = h.k();
    const int d = k - ell;
    check_distinct(order);
    auto windows = path_windows(order, k, ell);
    PathValidation res;
    for (std::size_t j = 0; j < windows.size(); ++j)
        if (!h.has_edge(windows[j]))
            res.violations.push_back(static_cast<int>(j) * d);
    res.ok = res.violations.empty();
    return res;
}

// Canonical form of an ell-cycle: its window edges, sorted. Invariant under
// rotation by multiples of (k-ell), reflection, and within-window
// reorderings that keep the window set.
using CanonicalCycle = std::vector<Edge>;

inline CanonicalCycle canonical_cycle(const std::vector<Vertex>& order, int k,
                                      int ell) {
    auto windows = cycle_windows(order, k, ell);
    std::sort(windows.begin(), windows.end());
    return windows;
}

// An ell-path as a concrete vertex ordering plus its parameters.
struct EllPath {
    std::vector<Vertex> order;
    int k = 0;
    int ell = 0;

    std::vector<Edge> edges() const { return path_windows(order, k, ell); }
    Edge first_edge_ordered() const {
        return Edge(order.begin(), order.begin() + k);
    }
    Edge last_edge_ordered() const {
        return Edge(order.end() - k, order.end());
    }
};

struct EllCycle {
    std::vector<Vertex> order;
    int k = 0;
    int ell = 0;

    CanonicalCycle canonical() const { return canonical_cycle(order, k, ell); }
};

}  // namespace kham

#endif  // KHAM_CYCLES_HPP
