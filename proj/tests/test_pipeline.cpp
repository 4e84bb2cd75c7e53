#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "kham/models.hpp"
#include "kham/pipeline.hpp"

using namespace kham;

namespace {

// Independent recount of min d(X, W_i)/t walking the edge list only.
double min_ratio_by_edge_scan(const KGraph& h,
                              const std::vector<std::vector<Vertex>>& blocks) {
    const int k = h.k();
    std::vector<int> block_of(h.n(), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (Vertex v : blocks[i]) block_of[v] = static_cast<int>(i);
    std::map<std::vector<Vertex>, std::vector<int>> deg;
    for_each_subset(h.n(), k - 1, [&](const std::vector<Vertex>& x) {
        deg[x] = std::vector<int>(blocks.size(), 0);
    });
    for (const auto& e : h.edges()) {
        for (int out = 0; out < k; ++out) {
            if (block_of[e[out]] < 0) continue;
            std::vector<Vertex> x;
            for (int i = 0; i < k; ++i)
                if (i != out) x.push_back(e[i]);
            ++deg[x][block_of[e[out]]];
        }
    }
    double best = 2.0;
    for (const auto& [x, d] : deg)
        for (std::size_t i = 0; i < blocks.size(); ++i)
            best = std::min(best, static_cast<double>(d[i]) / blocks[i].size());
    return best;
}

}  // namespace

TEST_CASE("solve_params worked example") {
    PipelineParams p = solve_params(40, 3, 1, 2, 5);
    CHECK(p.m == 2);
    CHECK(p.t == 5);
    CHECK(p.n_prime == 30);
    CHECK(p.parts == 15);
    CHECK(p.steps == 7);
    CHECK(p.valid());
}

TEST_CASE("solve_params rejections") {
    CHECK_THROWS_AS(solve_params(12, 3, 2, 2, 5), InfeasibleError);  // ell = k-1
    CHECK_THROWS_AS(solve_params(13, 3, 1, 2, 5), InfeasibleError);  // 2 does not divide 13
    CHECK_THROWS_AS(solve_params(4, 3, 1, 1, 3), InfeasibleError);   // no room
}

TEST_CASE("solve_params output always satisfies the congruences", "[property]") {
    for (int k = 3; k <= 5; ++k)
        for (int ell = 0; ell < k - 1; ++ell) {
            const int d = k - ell;
            for (int n = 4 * d; n <= 60; n += d) {
                PipelineParams p;
                try {
                    p = solve_params(n, k, ell, 2, 5);
                } catch (const InfeasibleError&) {
                    continue;
                }
                INFO("n=" << n << " k=" << k << " ell=" << ell);
                CHECK(p.valid());
                CHECK(p.m * p.t + p.n_prime == n);
                CHECK(p.t >= d);
                CHECK((p.t + ell) % d == 0);
                CHECK(p.parts % d == ell % d);
            }
        }
}

TEST_CASE("connecting system on a complete graph") {
    KGraph k12 = gen_complete(12, 3);
    ConnectingSystem cs = find_connecting_system(k12, 2, 5, 0.0, 5, 3);
    REQUIRE(cs.blocks.size() == 2);
    CHECK(cs.blocks[0].size() == 5);
    // completions of any pair hit all of W_i except pair members
    CHECK(cs.eta >= (5.0 - 2.0) / 5.0);
    CHECK(cs.eta <= 1.0);

    SECTION("unreachable target raises a stage failure with a witness") {
        try {
            find_connecting_system(k12, 2, 5, 1.01, 3, 3);
            FAIL("expected StageFailure");
        } catch (const StageFailure& e) {
            CHECK(e.stage_name == "connecting-system");
            CHECK(std::string(e.what()).find("witness") != std::string::npos);
        }
    }
}

TEST_CASE("connecting_min_ratio equals an independent edge scan", "[property]") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        KGraph h = gen_binomial(12, 3, 0.6, seed);
        ConnectingSystem cs = find_connecting_system(h, 2, 5, 0.0, 3, seed);
        double direct = min_ratio_by_edge_scan(h, cs.blocks);
        CHECK(connecting_min_ratio(h, cs.blocks) == Catch::Approx(direct));
        CHECK(cs.eta == Catch::Approx(direct));
    }
}

TEST_CASE("good partition sampling") {
    KGraph k12 = gen_complete(12, 3);
    std::vector<Vertex> vp{0, 1, 2, 3, 4, 5, 6, 7, 8};
    GoodPartition gp = sample_good_partition(k12, vp, 3, 0.0, 10, 17);
    CHECK(gp.attempts == 1);  // threshold 0 accepts the first draw
    CHECK(gp.view.num_parts() == 3);
    CHECK(gp.dstar == 3);  // complete: every co-degree equals m

    CHECK_THROWS_AS(sample_good_partition(k12, vp, 3, 4.0, 3, 17), StageFailure);
    CHECK_THROWS_AS(sample_good_partition(k12, vp, 4, 0.0, 3, 17),
                    std::invalid_argument);
}

TEST_CASE("path system on complete graphs") {
    KGraph k15 = gen_complete(15, 3);
    std::vector<std::vector<Vertex>> parts(5);
    for (int v = 0; v < 15; ++v) parts[v / 3].push_back(v);
    PartiteView view(k15, parts);

    SECTION("ell = 1, two chained steps") {
        PathSystem ps = build_path_system(k15, view, 1, 99);
        REQUIRE(ps.paths.size() == 3);
        std::vector<char> seen(15, 0);
        for (const auto& p : ps.paths) {
            CHECK(p.order.size() == 5);  // one vertex per part
            CHECK(validate_ell_path(k15, p.order, 1).ok);
            for (Vertex v : p.order) {
                CHECK_FALSE(seen[v]);
                seen[v] = 1;
            }
        }
        CHECK(ps.covered.size() == 15);
    }
    SECTION("ell = 0 is a sequence of disjoint matchings") {
        KGraph k9 = gen_complete(9, 3);
        std::vector<std::vector<Vertex>> p3(3);
        for (int v = 0; v < 9; ++v) p3[v / 3].push_back(v);
        PathSystem ps = build_path_system(k9, PartiteView(k9, p3), 0, 5);
        REQUIRE(ps.paths.size() == 3);
        for (const auto& p : ps.paths) CHECK(validate_ell_path(k9, p.order, 0).ok);
    }
    SECTION("incompatible part count rejected") {
        std::vector<std::vector<Vertex>> p4(4);
        for (int v = 0; v < 12; ++v) p4[v / 3].push_back(v);
        KGraph k12 = gen_complete(12, 3);
        CHECK_THROWS_AS(build_path_system(k12, PartiteView(k12, p4), 1, 1),
                        std::invalid_argument);  // 4 is even, ell = 1
    }
}

TEST_CASE("consecutive paths chain through trailing vertices", "[property]") {
    // With ell = 1 the last vertex of each step's slice feeds the next step's
    // first permutation; windows across the seam must be edges, which
    // validate_ell_path already certifies on random dense instances.
    DiracInstance inst = gen_dirac(30, 3, 0.55, 11);
    std::vector<std::vector<Vertex>> parts(5);
    for (int v = 0; v < 30; ++v) parts[v / 6].push_back(v);
    PathSystem ps = build_path_system(inst.graph, PartiteView(inst.graph, parts), 1, 23);
    REQUIRE(ps.paths.size() == 6);
    for (const auto& p : ps.paths) CHECK(validate_ell_path(inst.graph, p.order, 1).ok);
}

TEST_CASE("sample_ham_cycles on a complete graph") {
    KGraph k12 = gen_complete(12, 3);
    PipelineResult res = sample_ham_cycles(k12, 1, 10, 2024);
    REQUIRE(res.complete(10));
    std::set<CanonicalCycle> canon;
    for (const auto& c : res.cycles) {
        CHECK(validate_ell_cycle(k12, c.order, 1).ok);
        canon.insert(c.canonical());
    }
    CHECK(canon.size() == 10);  // pairwise distinct as edge sets
    CHECK(res.report.dirac);
    CHECK(res.report.params.valid());
    CHECK(res.report.achieved_eta >= 0.2);

    SECTION("deterministic in the seed") {
        PipelineResult again = sample_ham_cycles(k12, 1, 10, 2024);
        REQUIRE(again.complete(10));
        for (int i = 0; i < 10; ++i)
            CHECK(again.cycles[i].order == res.cycles[i].order);
    }
}

TEST_CASE("sample_ham_cycles wraps a single path when m = 1") {
    KGraph k18 = gen_complete(18, 3);
    PipelineParams p = solve_params(18, 3, 1, 1, 5);
    CHECK(p.m == 1);
    CHECK(p.t == 5);
    PipelineOptions opt;
    opt.target_m = 1;
    PipelineResult res = sample_ham_cycles(k18, 1, 3, 7, opt);
    REQUIRE(res.complete(3));
    for (const auto& c : res.cycles) CHECK(validate_ell_cycle(k18, c.order, 1).ok);
}

TEST_CASE("sample_ham_cycles on a random Dirac instance") {
    DiracInstance inst = gen_dirac(40, 3, 0.55, 7);
    PipelineResult res = sample_ham_cycles(inst.graph, 1, 1, 42);
    REQUIRE(res.complete(1));
    CHECK(validate_ell_cycle(inst.graph, res.cycles[0].order, 1).ok);
    CHECK(res.report.dirac);
    CHECK(res.report.dstar_per_cycle.size() == 1);
}

TEST_CASE("sample_ham_cycles fails gracefully on sparse instances") {
    KGraph sparse = gen_binomial(12, 3, 0.05, 9);
    PipelineResult res = sample_ham_cycles(sparse, 1, 2, 1);
    CHECK_FALSE(res.complete(2));
    CHECK_FALSE(res.report.dirac);
    CHECK_FALSE(res.report.diagnostics.empty());
}
