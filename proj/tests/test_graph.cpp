#include "kpack/errors.hpp"
#include "kpack/graph.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace kpack;

TEST_CASE("graph construction and validation") {
    Graph g(4);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 0);
    CHECK(g.add_edge(2, 0));
    CHECK(g.add_edge(0, 1));
    CHECK_FALSE(g.add_edge(0, 2)); // already present
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(0) == 2);
    CHECK(g.neighbors(0) == std::vector<int>{1, 2});
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), std::invalid_argument);

    CHECK(Graph::from_edges(3, {{1, 0}, {2, 1}}) == oracle::path_graph(3));
}

TEST_CASE("max_degree") {
    CHECK(max_degree(Graph(0)) == 0);
    CHECK(max_degree(Graph(5)) == 0);
    CHECK(max_degree(oracle::bowtie()) == 4);
    CHECK(max_degree(oracle::complete_graph(6)) == 5);
}

TEST_CASE("is_triangle_free") {
    CHECK(is_triangle_free(oracle::path_graph(3)));
    CHECK_FALSE(is_triangle_free(oracle::bowtie()));
    CHECK(is_triangle_free(oracle::cycle_graph(6)));
    CHECK(is_triangle_free(oracle::petersen()));
    CHECK(is_triangle_free(Graph(0)));
}

TEST_CASE("identify_vertices merges neighborhoods") {
    SUBCASE("two disjoint edges become a path") {
        const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
        const Graph merged = identify_vertices(g, 1, 2);
        CHECK(merged == oracle::path_graph(3));
    }
    SUBCASE("two disjoint triangles become a bowtie") {
        const Graph merged = identify_vertices(oracle::two_disjoint_triangles(), 0, 3);
        CHECK(merged.vertex_count() == 5);
        CHECK(merged == Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}));
        CHECK(max_degree(merged) == 4);
    }
    SUBCASE("two disjoint K_4s") {
        Graph g(8);
        for (int b : {0, 4})
            for (int u = b; u < b + 4; ++u)
                for (int v = u + 1; v < b + 4; ++v) g.add_edge(u, v);
        const Graph merged = identify_vertices(g, 0, 4);
        CHECK(merged.vertex_count() == 7);
        CHECK(merged.degree(0) == 6);
    }
    SUBCASE("rejections") {
        const Graph g = oracle::path_graph(3);
        CHECK_THROWS_AS(identify_vertices(g, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(identify_vertices(g, 0, 1), std::invalid_argument); // adjacent
    }
    SUBCASE("adjacency stays simple and symmetric") {
        const Graph g = Graph::from_edges(6, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {4, 5}, {1, 4}});
        const Graph merged = identify_vertices(g, 0, 1); // duplicate edges collapse
        CHECK(merged.vertex_count() == 5);
        for (auto [u, v] : merged.edges()) {
            CHECK(merged.has_edge(u, v));
            CHECK(merged.has_edge(v, u));
            CHECK(u != v);
        }
        CHECK(merged.degree(0) == 3); // 2, 3, 4 with the doubled edges collapsed
    }
}

TEST_CASE("append_disconnected_star") {
    SUBCASE("bowtie plus seven leaves") {
        const Graph g = append_disconnected_star(oracle::bowtie(), 7);
        CHECK(g.vertex_count() == 13);
        CHECK(max_degree(g) == 7);
        CHECK(oracle::naive_krs(g, 3).size() == 2); // triangle count unchanged
    }
    SUBCASE("empty graph plus three leaves") {
        const Graph g = append_disconnected_star(Graph(0), 3);
        CHECK(g.vertex_count() == 4);
        CHECK(max_degree(g) == 3);
    }
    SUBCASE("exact VDK_3 optimum unchanged") {
        const Graph before = oracle::bowtie();
        const Graph after = append_disconnected_star(before, max_degree(before) + 5);
        CHECK(oracle::naive_max_packing(before, 3, Mode::vertex) ==
              oracle::naive_max_packing(after, 3, Mode::vertex));
        CHECK(max_degree(after) == 9);
    }
    CHECK_THROWS_AS(append_disconnected_star(Graph(2), 0), std::invalid_argument);
}

TEST_CASE("gen_triangle_free_cubic") {
    const Graph one = gen_triangle_free_cubic(1, 9);
    CHECK(one.vertex_count() == 1);
    CHECK(one.edge_count() == 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = gen_triangle_free_cubic(6, seed);
        CHECK(is_triangle_free(g));
        CHECK(max_degree(g) <= 3);
    }
    CHECK(gen_triangle_free_cubic(10, 42) == gen_triangle_free_cubic(10, 42));
}

TEST_CASE("gen_bounded_degree") {
    CHECK(gen_bounded_degree(8, 0, 3).edge_count() == 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(max_degree(gen_bounded_degree(12, 4, seed)) <= 4);
    CHECK(gen_bounded_degree(12, 4, 7) == gen_bounded_degree(12, 4, 7));
}

TEST_CASE("dimacs edge format") {
    SUBCASE("round trip") {
        const Graph g = oracle::bowtie();
        std::ostringstream out;
        write_dimacs(g, out);
        std::istringstream in(out.str());
        CHECK(read_dimacs(in) == g);
    }
    SUBCASE("writer emits sorted 1-based edges") {
        std::ostringstream out;
        write_dimacs(Graph::from_edges(3, {{1, 2}, {0, 2}}), out);
        CHECK(out.str() == "p edge 3 2\ne 1 3\ne 2 3\n");
    }
    SUBCASE("comments and isolated vertices survive") {
        std::istringstream in("c a comment\np edge 4 1\nc another\ne 2 3\n");
        const Graph g = read_dimacs(in);
        CHECK(g.vertex_count() == 4);
        CHECK(g.has_edge(1, 2));
    }
    SUBCASE("reader rejects malformed input") {
        auto rejects = [](const std::string& text) {
            std::istringstream in(text);
            CHECK_THROWS_AS(read_dimacs(in), parse_error);
        };
        rejects("e 1 2\n");                            // missing header
        rejects("p edge 2 1\np edge 2 1\ne 1 2\n");    // repeated header
        rejects("p edge 2 1\ne 1 1\n");                // self-loop
        rejects("p edge 2 2\ne 1 2\ne 2 1\n");         // duplicate edge
        rejects("p edge 2 1\ne 1 3\n");                // endpoint out of range
        rejects("p edge 2 2\ne 1 2\n");                // count mismatch
        rejects("p edge 2 1\nx 1 2\n");                // unknown line type
        rejects("p edge 2 1\ne 0 1\n");                // ids are 1-based
    }
    SUBCASE("file helpers") {
        const std::string path = std::string(KPACK_TEST_TMP) + "/roundtrip.col";
        write_dimacs_file(oracle::petersen(), path);
        CHECK(read_dimacs_file(path) == oracle::petersen());
        CHECK_THROWS_AS(read_dimacs_file(std::string(KPACK_TEST_TMP) + "/missing.col"),
                        parse_error);
    }
}

TEST_CASE("labels") {
    Graph g(3);
    CHECK_FALSE(g.has_labels());
    CHECK(g.label(1).empty());
    g.set_label(1, "W(1,2).1");
    CHECK(g.has_labels());
    CHECK(g.label(1) == "W(1,2).1");
    CHECK(g.label(0).empty());
    CHECK_THROWS_AS(g.set_label(3, "x"), std::invalid_argument);
}
