// pipeline.hpp - parameter solving, connecting-systems, good partitions,
// chained matching path-systems, and Hamiltonian ell-cycle sampling
#ifndef KHAM_PIPELINE_HPP
#define KHAM_PIPELINE_HPP

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kham/cycles.hpp"
#include "kham/hypergraph.hpp"
#include "kham/matching.hpp"
#include "kham/oracle.hpp"
#include "kham/rng.hpp"

namespace kham {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StageFailure : std::runtime_error {
    StageFailure(const std::string& stage, int index, const std::string& what)
        : std::runtime_error(stage + " failed at index " + std::to_string(index) +
                             ": " + what),
          stage_name(stage),
          index(index) {}
    std::string stage_name;
    int index;
};

// The fully resolved finite-instance parameter tuple. s = n'/m parts of size
// m; each path has one vertex per part; each connector block has t vertices.
struct PipelineParams {
    int n = 0, k = 0, ell = 0;
    int m = 0;        // number of paths / connector blocks
    int t = 0;        // connector block size
    int n_prime = 0;  // n - m*t, covered by the path-system
    int parts = 0;    // n'/m
    int steps = 0;    // (n'/m - ell)/(k-ell)

    bool valid() const {
        const int d = k - ell;
        return ell >= 0 && ell < k - 1 && n % d == 0 && m >= 1 && t >= d &&
               m * t + n_prime == n && n_prime % m == 0 && parts == n_prime / m &&
               parts >= k && parts % d == ell % d && (t + ell) % d == 0 &&
               steps == (parts - ell) / d;
    }
};

// Feasible (m, t) closest to the targets under |m - target_m| + |t - target_t|;
// ties broken by smaller m, then smaller t.
inline PipelineParams solve_params(int n, int k, int ell, int target_m,
                                   int target_t) {
    const int d = k - ell;
    if (ell < 0 || ell >= k - 1)
        throw InfeasibleError("solve_params: need 0 <= ell < k-1");
    if (n % d != 0) throw InfeasibleError("solve_params: (k-ell) must divide n");

    std::optional<PipelineParams> best;
    long best_cost = 0;
    for (int m = 1; m <= n; ++m) {
        for (int t = d; m * t < n; ++t) {
            if ((t + ell) % d != 0) continue;
            const int n_prime = n - m * t;
            if (n_prime % m != 0) continue;
            const int parts = n_prime / m;
            if (parts < k) continue;
            if (parts % d != ell % d) continue;
            PipelineParams p{n, k, ell, m, t, n_prime, parts, (parts - ell) / d};
            long cost = std::abs(m - target_m) + std::abs(t - target_t);
            if (!best || cost < best_cost ||
                (cost == best_cost &&
                 (m < best->m || (m == best->m && t < best->t)))) {
                best = p;
                best_cost = cost;
            }
        }
    }
    if (!best)
        throw InfeasibleError(
            "solve_params: no feasible (m, t): require m*t < n, m | n-m*t, "
            "(n-m*t)/m >= k with (n-m*t)/m ≡ ell and t ≡ -ell (mod k-ell)");
    return *best;
}

struct ConnectingSystem {
    std::vector<std::vector<Vertex>> blocks;  // W_1..W_m, each of size t
    double eta = 0.0;                         // achieved min d(X, W_i)/t
};

struct ConnectingWitness {
    std::vector<Vertex> x;
    int block = 0;
    int degree = 0;
};

// Minimum of d(X, W_i)/t over all (k-1)-sets X of H and all blocks; fills the
// worst witness.
inline double connecting_min_ratio(const KGraph& h,
                                   const std::vector<std::vector<Vertex>>& blocks,
                                   ConnectingWitness* worst = nullptr) {
    const int m = static_cast<int>(blocks.size());
    std::vector<char> in_block(h.n(), 0);
    std::vector<int> block_of(h.n(), -1);
    for (int i = 0; i < m; ++i)
        for (Vertex v : blocks[i]) block_of[v] = i;
    double best = 2.0;
    for_each_subset(h.n(), h.k() - 1, [&](const std::vector<Vertex>& x) {
        std::vector<int> deg(m, 0);
        for (Vertex v : h.completions(x))
            if (block_of[v] >= 0) ++deg[block_of[v]];
        for (int i = 0; i < m; ++i) {
            double ratio = static_cast<double>(deg[i]) / blocks[i].size();
            if (ratio < best) {
                best = ratio;
                if (worst) *worst = ConnectingWitness{x, i, deg[i]};
            }
        }
    });
    return best;
}

inline ConnectingSystem find_connecting_system(const KGraph& h, int m, int t,
                                               double eta_target, int max_tries,
                                               std::uint64_t seed) {
    if (m * t > h.n())
        throw std::invalid_argument("find_connecting_system: m*t > n");
    std::vector<Vertex> all(h.n());
    for (int v = 0; v < h.n(); ++v) all[v] = v;
    ConnectingWitness worst_overall;
    double best_seen = -1.0;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Rng rng(derive_seed(seed, {0x636f6e6eULL, static_cast<std::uint64_t>(attempt)}));
        std::vector<Vertex> pool = all;
        rng.shuffle(pool);
        std::vector<std::vector<Vertex>> blocks(m);
        for (int i = 0; i < m; ++i)
            blocks[i].assign(pool.begin() + i * t, pool.begin() + (i + 1) * t);
        ConnectingWitness w;
        double ratio = connecting_min_ratio(h, blocks, &w);
        if (ratio >= eta_target) return ConnectingSystem{std::move(blocks), ratio};
        if (ratio > best_seen) {
            best_seen = ratio;
            worst_overall = w;
        }
    }
    std::ostringstream msg;
    msg << "find_connecting_system: " << max_tries
        << " tries exhausted; best min ratio " << best_seen << " (target "
        << eta_target << "), worst witness X={";
    for (std::size_t i = 0; i < worst_overall.x.size(); ++i)
        msg << (i ? "," : "") << worst_overall.x[i];
    msg << "} block " << worst_overall.block << " degree " << worst_overall.degree;
    throw StageFailure("connecting-system", 0, msg.str());
}

struct GoodPartition {
    PartiteView view;
    int dstar = 0;
    int attempts = 0;
};

// Uniform random ordered equipartition of V' into parts of size m, accepted
// once delta*_{k-1} meets the threshold.
inline GoodPartition sample_good_partition(const KGraph& h,
                                           const std::vector<Vertex>& v_prime,
                                           int m, double threshold, int max_tries,
                                           std::uint64_t seed) {
    if (v_prime.size() % m != 0)
        throw std::invalid_argument("sample_good_partition: m must divide |V'|");
    const int s = static_cast<int>(v_prime.size()) / m;
    std::vector<int> histogram;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Rng rng(derive_seed(seed, {0x70617274ULL, static_cast<std::uint64_t>(attempt)}));
        std::vector<Vertex> pool = v_prime;
        rng.shuffle(pool);
        std::vector<std::vector<Vertex>> parts(s);
        for (int i = 0; i < s; ++i)
            parts[i].assign(pool.begin() + i * m, pool.begin() + (i + 1) * m);
        PartiteView view(h, std::move(parts));
        int dstar = partite_min_codegree(view);
        if (dstar >= threshold)
            return GoodPartition{std::move(view), dstar, attempt + 1};
        histogram.push_back(dstar);
    }
    std::ostringstream msg;
    msg << "no partition reached delta* >= " << threshold << "; achieved:";
    for (int d : histogram) msg << ' ' << d;
    throw StageFailure("good-partition", 0, msg.str());
}

struct PathSystem {
    std::vector<EllPath> paths;    // ordered: permuting them changes the system
    std::vector<Vertex> covered;   // sorted union of path vertices
};

// Chained matching construction: step 1 is a free ordered matching on the
// first k parts; step s >= 2 fixes its first ell permutations to the trailing
// ell of step s-1 and extends on the next k parts.
inline PathSystem build_path_system(const KGraph& h, const PartiteView& view,
                                    int ell, std::uint64_t seed,
                                    int attempts_per_step = 20) {
    const int k = h.k();
    const int d = k - ell;
    const int s_parts = static_cast<int>(view.num_parts());
    const int m = static_cast<int>(view.part_size());
    if (s_parts < k || (s_parts - ell) % d != 0)
        throw std::invalid_argument("build_path_system: part count must be ≡ ell (mod k-ell)");
    const int steps = (s_parts - ell) / d;

    std::vector<std::vector<Vertex>> orders(m);
    PermutationTuple prev;
    for (int step = 0; step < steps; ++step) {
        PartiteView slice = view.slice(step * d, k);
        PermutationTuple prefix;
        if (step > 0 && ell > 0)
            prefix.perms.assign(prev.perms.end() - ell, prev.perms.end());
        auto tuple = sample_matching_extension(
            slice, prefix, derive_seed(seed, {0x73746570ULL, static_cast<std::uint64_t>(step)}),
            attempts_per_step);
        if (!tuple)
            throw StageFailure("path-system step", step,
                               "matching extension attempts exhausted");
        for (int j = 0; j < m; ++j)
            for (int i = (step == 0 ? 0 : ell); i < k; ++i)
                orders[j].push_back(tuple->perms[i][j]);
        prev = *tuple;
    }

    PathSystem ps;
    for (int j = 0; j < m; ++j) {
        auto val = validate_ell_path(h, orders[j], ell);
        if (!val.ok)
            throw std::logic_error("build_path_system: constructed path invalid");
        ps.paths.push_back(EllPath{std::move(orders[j]), k, ell});
    }
    for (const auto& p : ps.paths)
        ps.covered.insert(ps.covered.end(), p.order.begin(), p.order.end());
    std::sort(ps.covered.begin(), ps.covered.end());
    return ps;
}

// Splices connector paths through the W_i blocks between consecutive paths
// (indices mod m) and returns the validated Hamiltonian ell-cycle.
inline EllCycle connect_paths(const KGraph& h, const PathSystem& ps,
                              const ConnectingSystem& cs, int ell) {
    const int k = h.k();
    const int m = static_cast<int>(ps.paths.size());
    if (static_cast<int>(cs.blocks.size()) != m)
        throw std::invalid_argument("connect_paths: |blocks| must equal |paths|");

    std::vector<Vertex> cycle_order;
    std::vector<std::vector<Vertex>> connectors(m);
    for (int i = 0; i < m; ++i) {
        const EllPath& p = ps.paths[i];
        const EllPath& q = ps.paths[(i + 1) % m];
        Edge y = p.last_edge_ordered();
        Edge x = q.first_edge_ordered();
        std::vector<Vertex> region = cs.blocks[i];
        region.insert(region.end(), y.begin(), y.end());
        region.insert(region.end(), x.begin(), x.end());
        InducedGraph hi = induced(h, region);
        Edge y_local(k), x_local(k);
        for (int j = 0; j < k; ++j) {
            y_local[j] = hi.to_local(y[j]);
            x_local[j] = hi.to_local(x[j]);
        }
        auto q_local = find_ell_path_constrained(hi.graph, ell, y_local, x_local);
        if (!q_local)
            throw StageFailure("connector", i, "no constrained Hamiltonian ell-path");
        connectors[i].reserve(q_local->size());
        for (Vertex v : *q_local) connectors[i].push_back(hi.to_global[v]);
    }
    for (int i = 0; i < m; ++i) {
        const auto& p = ps.paths[i].order;
        const auto& q = connectors[i];
        cycle_order.insert(cycle_order.end(), p.begin(), p.end());
        cycle_order.insert(cycle_order.end(), q.begin() + k, q.end() - k);
    }
    auto val = validate_ell_cycle(h, cycle_order, ell);
    if (!val.ok) throw std::logic_error("connect_paths: spliced cycle invalid");
    return EllCycle{std::move(cycle_order), k, ell};
}

struct PipelineOptions {
    int target_m = 2;
    int target_t = 5;
    double eta_target = 0.2;
    double dstar_fraction = 0.0;  // accept partitions with delta* >= fraction*m
    int connecting_tries = 20;
    int partition_tries = 20;
    int step_attempts = 20;
    int retries_per_cycle = 20;
};

struct PipelineReport {
    PipelineParams params;
    double delta = 0.0;
    bool dirac = false;            // advisory only
    double achieved_eta = 0.0;
    int connecting_resamples = 0;
    int attempts = 0;              // cycle construction attempts
    int dedupe_collisions = 0;
    std::vector<int> dstar_per_cycle;
    std::string diagnostics;
};

struct PipelineResult {
    std::vector<EllCycle> cycles;
    ConnectingSystem connecting_system;
    PipelineReport report;

    bool complete(int requested) const {
        return static_cast<int>(cycles.size()) == requested;
    }
};

// Fixes one connecting-system, then repeatedly samples a good partition,
// builds a path-system, and tailors it into a cycle; deduplicates by
// canonical edge set.
inline PipelineResult sample_ham_cycles(const KGraph& h, int ell, int count,
                                        std::uint64_t seed,
                                        const PipelineOptions& opt = {}) {
    PipelineResult res;
    PipelineReport& rep = res.report;
    const int mc = min_codegree(h);
    rep.delta = static_cast<double>(mc) / h.n();
    rep.dirac = rep.delta > 0.5;
    rep.params = solve_params(h.n(), h.k(), ell, opt.target_m, opt.target_t);
    const PipelineParams& pp = rep.params;

    std::uint64_t conn_seed = derive_seed(seed, {0x63ULL});
    try {
        res.connecting_system = find_connecting_system(
            h, pp.m, pp.t, opt.eta_target, opt.connecting_tries, conn_seed);
    } catch (const StageFailure& e) {
        rep.diagnostics = e.what();
        return res;
    }
    rep.achieved_eta = res.connecting_system.eta;

    auto rebuild_v_prime = [&] {
        std::vector<char> in_w(h.n(), 0);
        for (const auto& b : res.connecting_system.blocks)
            for (Vertex v : b) in_w[v] = 1;
        std::vector<Vertex> vp;
        for (int v = 0; v < h.n(); ++v)
            if (!in_w[v]) vp.push_back(v);
        return vp;
    };
    std::vector<Vertex> v_prime = rebuild_v_prime();

    std::set<CanonicalCycle> seen;
    std::ostringstream diag;
    int consecutive_failures = 0;
    const long budget = static_cast<long>(count) * opt.retries_per_cycle;
    for (long attempt = 0; attempt < budget &&
                           static_cast<int>(res.cycles.size()) < count;
         ++attempt) {
        ++rep.attempts;
        std::uint64_t a_seed = derive_seed(seed, {0x61ULL, static_cast<std::uint64_t>(attempt)});
        try {
            GoodPartition gp = sample_good_partition(
                h, v_prime, pp.m, opt.dstar_fraction * pp.m, opt.partition_tries,
                a_seed);
            PathSystem ps = build_path_system(h, gp.view, ell, a_seed, opt.step_attempts);
            EllCycle c = connect_paths(h, ps, res.connecting_system, ell);
            if (seen.insert(c.canonical()).second) {
                res.cycles.push_back(std::move(c));
                rep.dstar_per_cycle.push_back(gp.dstar);
            } else {
                ++rep.dedupe_collisions;
            }
            consecutive_failures = 0;
        } catch (const StageFailure& e) {
            diag << "attempt " << attempt << ": " << e.what() << '\n';
            if (++consecutive_failures >= 5) {
                // connectors or partitions keep failing under this W: redraw it
                conn_seed = derive_seed(conn_seed, {0x72ULL});
                try {
                    res.connecting_system = find_connecting_system(
                        h, pp.m, pp.t, opt.eta_target, opt.connecting_tries,
                        conn_seed);
                } catch (const StageFailure& e2) {
                    diag << "connecting-system resample: " << e2.what() << '\n';
                    break;
                }
                rep.achieved_eta =
                    std::min(rep.achieved_eta, res.connecting_system.eta);
                ++rep.connecting_resamples;
                v_prime = rebuild_v_prime();
                consecutive_failures = 0;
            }
        }
    }
    rep.diagnostics = diag.str();
    return res;
}

}  // namespace kham

#endif  // KHAM_PIPELINE_HPP
