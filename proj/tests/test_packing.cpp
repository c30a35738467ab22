#include "kpack/errors.hpp"
#include "kpack/packing.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace kpack;

TEST_CASE("is_valid_packing") {
    const Graph g = oracle::bowtie();
    CHECK(is_valid_packing(g, Packing{Mode::vertex, 3, {{0, 1, 2}}}));
    CHECK(is_valid_packing(g, Packing{Mode::edge, 3, {{0, 1, 2}, {2, 3, 4}}}));
    CHECK_FALSE(is_valid_packing(g, Packing{Mode::vertex, 3, {{0, 1, 2}, {2, 3, 4}}}));
    CHECK_FALSE(is_valid_packing(g, Packing{Mode::vertex, 3, {{0, 1, 3}}})); // not a clique
    CHECK_FALSE(is_valid_packing(g, Packing{Mode::vertex, 3, {{0, 1}}}));    // wrong size
    CHECK_FALSE(is_valid_packing(g, Packing{Mode::edge, 3, {{1, 0, 2}}}));   // not sorted
    CHECK(is_valid_packing(g, Packing{Mode::edge, 3, {}}));
}

TEST_CASE("classify_regime anchor points") {
    CHECK(classify_regime(3, 4, Mode::vertex).tag == RegimeTag::ApxHard);
    CHECK(classify_regime(3, 3, Mode::vertex).tag == RegimeTag::LinearTime);
    CHECK(classify_regime(4, 7, Mode::edge).tag == RegimeTag::ApxHard);
    CHECK(classify_regime(4, 6, Mode::edge).tag == RegimeTag::PolyEdgeClawFree);
    CHECK(classify_regime(5, 9, Mode::edge).tag == RegimeTag::ApxHard);
    CHECK(classify_regime(5, 8, Mode::edge).tag == RegimeTag::PolyEdgeClawFree);
    CHECK(classify_regime(6, 9, Mode::vertex).tag == RegimeTag::ApxHard);
    CHECK(classify_regime(7, 10, Mode::vertex).tag == RegimeTag::PolyVertexClawFree);
    CHECK(classify_regime(6, 9, Mode::edge).tag == RegimeTag::ApxHard); // r >= 6 follows vertex
    CHECK(classify_regime(3, 4, Mode::edge).tag == RegimeTag::PolyEdgeClawFree);
    CHECK(classify_regime(3, 5, Mode::edge).tag == RegimeTag::ApxHard);
    CHECK_FALSE(classify_regime(4, 5, Mode::vertex).threshold_note.empty());
    CHECK_THROWS_AS(classify_regime(2, 3, Mode::vertex), std::invalid_argument);
    CHECK_THROWS_AS(classify_regime(3, -1, Mode::vertex), std::invalid_argument);
}

TEST_CASE("greedy_maximal_packing") {
    CHECK(greedy_maximal_packing(oracle::two_disjoint_triangles(), 3, Mode::vertex).size() == 2);
    CHECK(greedy_maximal_packing(oracle::bowtie(), 3, Mode::vertex).size() == 1);
    CHECK(greedy_maximal_packing(oracle::bowtie(), 3, Mode::edge).size() == 2);
    CHECK(greedy_maximal_packing(oracle::petersen(), 3, Mode::vertex).size() == 0);

    SUBCASE("output is maximal, valid, and deterministic") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const Graph g = gen_bounded_degree(12, 5, seed);
            for (const Mode mode : {Mode::vertex, Mode::edge}) {
                const Packing p = greedy_maximal_packing(g, 3, mode);
                CHECK(is_valid_packing(g, p));
                CHECK_FALSE(oracle::improving_swap_exists(g, 3, mode, p, 0));
                CHECK(p == greedy_maximal_packing(g, 3, mode));
            }
        }
    }
}

TEST_CASE("exact_max_packing") {
    CHECK(exact_max_packing(oracle::bowtie(), 3, Mode::vertex).size() == 1);
    CHECK(exact_max_packing(oracle::bowtie(), 3, Mode::edge).size() == 2);
    CHECK(exact_max_packing(oracle::complete_graph(4), 3, Mode::edge).size() == 1);
    CHECK(exact_max_packing(oracle::petersen(), 3, Mode::vertex).size() == 0);
    CHECK(exact_max_packing(oracle::petersen(), 3, Mode::edge).size() == 0);

    SUBCASE("lexicographically least witness") {
        CHECK(exact_max_packing(oracle::bowtie(), 3, Mode::vertex).cliques ==
              std::vector<Clique>{{0, 1, 2}});
        CHECK(exact_max_packing(oracle::complete_graph(4), 3, Mode::edge).cliques ==
              std::vector<Clique>{{0, 1, 2}});
        CHECK(exact_max_packing(oracle::complete_graph(6), 3, Mode::vertex).cliques ==
              std::vector<Clique>{{0, 1, 2}, {3, 4, 5}});
    }

    SUBCASE("agrees with the naive recursion and the MIS oracle") {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const Graph g = gen_bounded_degree(10, 5, seed);
            for (int r = 3; r <= 4; ++r)
                for (const Mode mode : {Mode::vertex, Mode::edge}) {
                    SolveStats stats;
                    const Packing p = exact_max_packing(g, r, mode, 10000, &stats);
                    CHECK(is_valid_packing(g, p));
                    CHECK(p.size() == oracle::naive_max_packing(g, r, mode));
                    const auto ig = build_intersection_graph(g, r, mode);
                    CHECK(p.size() == brute_force_max_independent_set(ig.skeleton));
                    CHECK(stats.nodes >= p.size());
                }
        }
    }

    SUBCASE("clique guard") {
        CHECK_THROWS_AS(exact_max_packing(oracle::complete_graph(5), 3, Mode::vertex, 9),
                        guard_error);
        CHECK_NOTHROW(exact_max_packing(oracle::complete_graph(5), 3, Mode::vertex, 10));
    }
}

TEST_CASE("local_improvement_packing") {
    CHECK(local_improvement_packing(oracle::two_disjoint_triangles(), 3, Mode::vertex, 1).size() == 2);
    CHECK(local_improvement_packing(oracle::two_disjoint_triangles(), 3, Mode::vertex, 3).size() == 2);
    CHECK_THROWS_AS(local_improvement_packing(Graph(3), 3, Mode::vertex, -1),
                    std::invalid_argument);

    SUBCASE("swap-optimal, bounded, and at least greedy") {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const Graph g = gen_bounded_degree(12, 4, seed);
            const int exact = exact_max_packing(g, 3, Mode::vertex).size();
            const int greedy = greedy_maximal_packing(g, 3, Mode::vertex).size();
            const Packing p = local_improvement_packing(g, 3, Mode::vertex, 1);
            CHECK(is_valid_packing(g, p));
            CHECK(p.size() <= exact);
            CHECK(p.size() >= greedy);
            CHECK_FALSE(oracle::improving_swap_exists(g, 3, Mode::vertex, p, 1));
            const double bound = local_improvement_ratio_bound(3, Mode::vertex, 1);
            CHECK(p.size() >= static_cast<int>(std::ceil(exact / bound)));
        }
    }

    SUBCASE("ratio bound values") {
        CHECK(local_improvement_ratio_bound(3, Mode::vertex, 1) == doctest::Approx(2.0));
        CHECK(local_improvement_ratio_bound(3, Mode::edge, 1) == doctest::Approx(2.0));
        CHECK(local_improvement_ratio_bound(4, Mode::vertex, 2) == doctest::Approx(2.25));
        CHECK(local_improvement_ratio_bound(4, Mode::edge, 1) == doctest::Approx(3.5));
        CHECK(local_improvement_ratio_bound(3, Mode::vertex, 0) == doctest::Approx(3.0));
    }
}

TEST_CASE("check_disjointness_coincidence") {
    Graph two_k6(12);
    for (int b : {0, 6})
        for (int u = b; u < b + 6; ++u)
            for (int v = u + 1; v < b + 6; ++v) two_k6.add_edge(u, v);
    CHECK(check_disjointness_coincidence(two_k6, 6));
    CHECK(check_disjointness_coincidence(oracle::complete_graph(4), 3));
    CHECK_THROWS_AS(check_disjointness_coincidence(oracle::bowtie(), 3),
                    std::invalid_argument); // Delta = 4 >= 2r-2
    SUBCASE("holds on random graphs under the bound, with matching optima") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const Graph g = gen_bounded_degree(14, 2 * 4 - 3, seed);
            CHECK(check_disjointness_coincidence(g, 4));
            CHECK(exact_max_packing(g, 4, Mode::vertex).size() ==
                  exact_max_packing(g, 4, Mode::edge).size());
        }
    }
}

TEST_CASE("edge optimum dominates vertex optimum") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Graph g = gen_bounded_degree(12, 6, seed);
        CHECK(exact_max_packing(g, 3, Mode::edge).size() >=
              exact_max_packing(g, 3, Mode::vertex).size());
    }
}

TEST_CASE("brute_force_max_independent_set") {
    CHECK(brute_force_max_independent_set(oracle::path_graph(4)) == 2);
    CHECK(brute_force_max_independent_set(oracle::cycle_graph(5)) == 2);
    CHECK(brute_force_max_independent_set(oracle::complete_graph(6)) == 1);
    CHECK(brute_force_max_independent_set(Graph(5)) == 5);
    CHECK(brute_force_max_independent_set(Graph(0)) == 0);
    CHECK(brute_force_max_independent_set(oracle::petersen()) == 4);
    CHECK_THROWS_AS(brute_force_max_independent_set(Graph(31)), guard_error);
}

TEST_CASE("packing json") {
    const Packing p{Mode::edge, 3, {{0, 1, 2}, {2, 3, 4}}};
    const std::string text = packing_to_json(p);
    CHECK(packing_from_json(text) == p);
    CHECK(text.find("\"mode\"") != std::string::npos);
    CHECK(text.find("\"size\"") != std::string::npos);

    CHECK_THROWS_AS(packing_from_json("not json"), parse_error);
    CHECK_THROWS_AS(packing_from_json("{\"mode\":\"edge\",\"r\":3}"), parse_error);
    CHECK_THROWS_AS(
        packing_from_json("{\"mode\":\"x\",\"r\":3,\"size\":0,\"cliques\":[]}"),
        parse_error);
    CHECK_THROWS_AS(
        packing_from_json("{\"mode\":\"edge\",\"r\":3,\"size\":1,\"cliques\":[[1,2]]}"),
        parse_error); // clique size != r
    CHECK_THROWS_AS(
        packing_from_json("{\"mode\":\"edge\",\"r\":3,\"size\":1,\"cliques\":[[0,1,2]]}"),
        parse_error); // ids are 1-based
    CHECK_THROWS_AS(
        packing_from_json("{\"mode\":\"edge\",\"r\":3,\"size\":2,\"cliques\":[[1,2,3]]}"),
        parse_error); // size mismatch
}
