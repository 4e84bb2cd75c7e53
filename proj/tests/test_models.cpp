#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kham/models.hpp"
#include "kham/oracle.hpp"

using namespace kham;

TEST_CASE("gen_complete") {
    KGraph h = gen_complete(6, 3);
    CHECK(h.edge_count() == 20);
    CHECK(min_codegree(h) == 4);
    CHECK(gen_complete(5, 2).edge_count() == 10);
}

TEST_CASE("gen_binomial determinism and extremes") {
    KGraph a = gen_binomial(12, 3, 0.4, 7);
    KGraph b = gen_binomial(12, 3, 0.4, 7);
    CHECK(a.edges() == b.edges());
    CHECK(gen_binomial(12, 3, 0.4, 8).edges() != a.edges());

    CHECK(gen_binomial(10, 3, 1.0, 1).edge_count() == 120);
    CHECK(gen_binomial(10, 3, 0.0, 1).edge_count() == 0);
    CHECK_THROWS_AS(gen_binomial(10, 3, 1.5, 1), std::invalid_argument);
}

TEST_CASE("gen_binomial edge count concentrates near p * C(n,k)", "[property]") {
    const int n = 14, trials = 30;
    const double p = 0.3;
    const double total = 364;  // C(14,3)
    const double mean = p * total;
    const double sd = std::sqrt(total * p * (1 - p));
    for (int s = 0; s < trials; ++s) {
        double count = gen_binomial(n, 3, p, 1000 + s).edge_count();
        INFO("seed " << 1000 + s << " count " << count);
        CHECK(std::abs(count - mean) <= 4.5 * sd);
    }
}

TEST_CASE("gen_dirac postcondition and determinism") {
    DiracInstance inst = gen_dirac(30, 3, 0.55, 3);
    CHECK(inst.achieved_min_codegree >= 0.55 * 30);
    CHECK(inst.achieved_min_codegree == min_codegree(inst.graph));
    CHECK(inst.p_used >= 0.55);
    CHECK(inst.attempts >= 1);
    CHECK(is_delta_dirac(inst.graph, 0.55));

    DiracInstance again = gen_dirac(30, 3, 0.55, 3);
    CHECK(again.graph.edges() == inst.graph.edges());

    CHECK_THROWS_AS(gen_dirac(30, 3, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_dirac(30, 3, 1.0, 1), std::invalid_argument);
}

TEST_CASE("gen_bipartite3 structure") {
    KGraph h = gen_bipartite3(9);
    const int x_size = 2;
    // every edge meets X = {0, 1}; no triple inside Y survives
    for (const auto& e : h.edges()) CHECK(e[0] < x_size);
    // C(9,3) - C(7,3)
    CHECK(h.edge_count() == 84 - 35);
    CHECK_THROWS_AS(gen_bipartite3(10), std::invalid_argument);
    CHECK_THROWS_AS(gen_bipartite3(6), std::invalid_argument);
}

TEST_CASE("gen_bipartite3 has no perfect matching") {
    // |X| = n/3 - 1 < n/3 and every edge uses an X vertex
    CHECK(count_perfect_matchings_general(gen_bipartite3(9)) == 0);
    CHECK(max_disjoint_edges(gen_bipartite3(9)) == 2);
    CHECK(count_perfect_matchings_general(gen_bipartite3(12)) == 0);
    CHECK(max_disjoint_edges(gen_bipartite3(12)) == 3);
}

TEST_CASE("gen_h_epsilon admits perfect matchings") {
    KGraph h = gen_h_epsilon(9, 1.0 / 9.0);  // |X| = floor(4/9 * 9) = 4
    for (const auto& e : h.edges()) CHECK(e[0] < 4);
    CHECK(count_perfect_matchings_general(h) >= 1);
    CHECK(max_disjoint_edges(h) == 3);
    CHECK_THROWS_AS(gen_h_epsilon(9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gen_h_epsilon(9, 0.2), std::invalid_argument);
}

TEST_CASE("bipartite3 co-degree sits near n/3", "[property]") {
    for (int n : {9, 12, 15}) {
        KGraph h = gen_bipartite3(n);
        int mc = min_codegree(h);
        // pairs inside Y complete only through X: co-degree |X| = n/3 - 1
        CHECK(mc == n / 3 - 1);
    }
}
