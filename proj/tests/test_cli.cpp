#include "kpack/graph.hpp"
#include "kpack/reduction.hpp"
#include "kpack/sat.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace kpack;

namespace {

const std::string bin = KPACK_BIN;
const std::string tmp = KPACK_TEST_TMP;

int run_cli(const std::string& args, const std::string& capture = "/dev/null") {
    const std::string cmd = bin + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

std::string bowtie_file() {
    const std::string path = tmp + "/cli_bowtie.col";
    write_dimacs_file(Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}),
                      path);
    return path;
}

} // namespace

TEST_CASE("cli generate is deterministic per seed") {
    const std::string g1 = tmp + "/cli_gen1.col", g2 = tmp + "/cli_gen2.col";
    CHECK(run_cli("generate cubic-tf -n 12 --seed 9 -o " + g1) == 0);
    CHECK(run_cli("generate cubic-tf -n 12 --seed 9 -o " + g2) == 0);
    CHECK(slurp(g1) == slurp(g2));
    const Graph g = read_dimacs_file(g1);
    CHECK(g.vertex_count() == 12);
    CHECK(max_degree(g) <= 3);
    CHECK(is_triangle_free(g));

    CHECK(run_cli("generate bounded -n 10 --dmax 4 --seed 3 -o " + g1) == 0);
    CHECK(max_degree(read_dimacs_file(g1)) <= 4);
}

TEST_CASE("cli solve reports") {
    const std::string input = bowtie_file();
    SUBCASE("json report, vertex mode") {
        const std::string out = tmp + "/cli_solve.json";
        CHECK(run_cli("solve " + input + " -r 3 --mode vertex --method exact --format json -o " +
                      out) == 0);
        const auto doc = nlohmann::json::parse(slurp(out));
        CHECK(doc.at("schema") == 1);
        CHECK(doc.at("size") == 1);
        CHECK(doc.at("regime").at("tag") == "ApxHard");
        CHECK(doc.at("graph").at("vertices") == 5);
        CHECK(doc.at("graph").at("max_degree") == 4);
        CHECK(doc.at("config").at("method") == "exact");
        CHECK(doc.at("config").at("r") == 3);
        CHECK(doc.at("packing").at("mode") == "vertex");
        CHECK(doc.at("packing").at("cliques").size() == 1);
        CHECK(doc.at("stats").at("nodes").get<long long>() >= 1);
    }
    SUBCASE("json report, edge mode") {
        const std::string out = tmp + "/cli_solve_edge.json";
        CHECK(run_cli("solve " + input + " -r 3 --mode edge -o " + out) == 0);
        const auto doc = nlohmann::json::parse(slurp(out));
        CHECK(doc.at("size") == 2);
        CHECK(doc.at("regime").at("tag") == "PolyEdgeClawFree");
    }
    SUBCASE("text report") {
        const std::string out = tmp + "/cli_solve.txt";
        CHECK(run_cli("solve " + input + " -r 3 --format text -o " + out) == 0);
        const std::string body = slurp(out);
        CHECK(body.find("regime: ApxHard") != std::string::npos);
        CHECK(body.find("size: 1") != std::string::npos);
        CHECK(body.find("1 2 3") != std::string::npos); // 1-based clique line
    }
    SUBCASE("local method reports its ratio bound") {
        const std::string out = tmp + "/cli_solve_local.json";
        CHECK(run_cli("solve " + input + " -r 3 --method local --swap 1 -o " + out) == 0);
        const auto doc = nlohmann::json::parse(slurp(out));
        CHECK(doc.at("ratio_bound") == 2.0);
    }
    SUBCASE("greedy matches exact in the linear regime") {
        const std::string two = tmp + "/cli_two_triangles.col";
        write_dimacs_file(Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}),
                          two);
        const std::string got_greedy = tmp + "/cli_greedy.json";
        const std::string got_exact = tmp + "/cli_exact.json";
        CHECK(run_cli("solve " + two + " -r 3 --method greedy -o " + got_greedy) == 0);
        CHECK(run_cli("solve " + two + " -r 3 --method exact -o " + got_exact) == 0);
        const auto greedy = nlohmann::json::parse(slurp(got_greedy));
        const auto exact = nlohmann::json::parse(slurp(got_exact));
        CHECK(greedy.at("size") == 2);
        CHECK(greedy.at("packing") == exact.at("packing"));
        CHECK(greedy.at("regime").at("tag") == "LinearTime");
    }
}

TEST_CASE("cli reduce writes auditable bundles") {
    SUBCASE("vdkr") {
        const std::string input = tmp + "/cli_k2.col";
        write_dimacs_file(Graph::from_edges(2, {{0, 1}}), input);
        const std::string prefix = tmp + "/cli_vdkr";
        const std::string log = tmp + "/cli_vdkr.log";
        CHECK(run_cli("reduce " + input + " --kind vdkr -r 3 -o " + prefix, log) == 0);
        const std::string audit = slurp(log);
        CHECK(audit.find("vdkr r=3") != std::string::npos);
        CHECK(audit.find("target vertices=5") != std::string::npos);
        const auto bundle = read_reduction_bundle(prefix);
        CHECK(bundle.target.vertex_count() == 5);
        CHECK(nlohmann::json::parse(bundle.json_text).at("kind") == "vdkr");
    }
    SUBCASE("edk4") {
        Formula phi;
        phi.variable_count = 2;
        phi.clauses = {{{0, true}, {1, true}}, {{0, false}, {1, false}}};
        const std::string input = tmp + "/cli_phi.cnf";
        write_dimacs_cnf_file(phi, input);
        const std::string prefix = tmp + "/cli_edk4";
        const std::string log = tmp + "/cli_edk4.log";
        CHECK(run_cli("reduce " + input + " --kind edk4 -o " + prefix, log) == 0);
        const std::string audit = slurp(log);
        CHECK(audit.find("target vertices=42") != std::string::npos);
        CHECK(audit.find("gadget_cliques=12") != std::string::npos);
        CHECK(audit.find("clause_cliques=4") != std::string::npos);
        const auto doc = nlohmann::json::parse(read_reduction_bundle(prefix).json_text);
        CHECK(doc.at("kind") == "edk4");
        CHECK(doc.at("max_degree") == 7);
    }
}

TEST_CASE("cli verify suites pass on in-regime samples") {
    CHECK(run_cli("verify claw -r 4 --dmax 5 -n 10 --trials 5 --mode vertex --seed 2") == 0);
    CHECK(run_cli("verify claw -r 4 --dmax 6 -n 10 --trials 5 --mode edge --seed 2") == 0);
    CHECK(run_cli("verify overlap -r 5 --dmax 7 -n 10 --trials 5 --seed 4") == 0);
    CHECK(run_cli("verify coincidence -r 4 --dmax 5 -n 10 --trials 5 --seed 6") == 0);
    CHECK(run_cli("verify maximal -r 3 --dmax 3 -n 10 --trials 5 --seed 8") == 0);

    const std::string log = tmp + "/cli_lred.log";
    CHECK(run_cli("verify lreduction --kind vdkr -r 3 -n 6 --trials 3 --samples 4 --seed 1",
                  log) == 0);
    std::string body = slurp(log);
    CHECK(body.find("alpha: 1") != std::string::npos);
    CHECK(body.rfind("ok\n") != std::string::npos);
    CHECK(run_cli("verify lreduction --kind edk4 --variables 2 --trials 3 --samples 4 --seed 1",
                  log) == 0);
    body = slurp(log);
    CHECK(body.find("alpha: 13") != std::string::npos);
    CHECK(body.find("violations: alpha 0  beta 0") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("solve " + tmp + "/does_not_exist.col -r 3") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("reduce " + bowtie_file() + " --kind vdkr -r 3") == 2); // missing -o
    CHECK(run_cli("solve " + bowtie_file() + " -r 2") == 2);
    CHECK(run_cli("verify coincidence -r 4 --dmax 6 --trials 1") == 2);

    const std::string bad = tmp + "/cli_bad.col";
    {
        std::ofstream out(bad);
        out << "p edge 2 1\ne 1 1\n"; // self-loop
    }
    CHECK(run_cli("solve " + bad + " -r 3") == 2);

    const std::string dense = tmp + "/cli_k9.col";
    {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v) edges.push_back({u, v});
        write_dimacs_file(Graph::from_edges(9, edges), dense);
    }
    CHECK(run_cli("solve " + dense + " -r 3 --max-cliques 10") == 3);
}
