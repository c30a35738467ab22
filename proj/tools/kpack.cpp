// Command line front end: generate instances, solve/classify packings, run
// the gadget reductions, and drive the property-verification suites.
//
// Exit codes: 0 success, 1 property violation, 2 usage or parse error,
// 3 guard exceeded.

#include "kpack/clique.hpp"
#include "kpack/errors.hpp"
#include "kpack/graph.hpp"
#include "kpack/packing.hpp"
#include "kpack/reduction.hpp"
#include "kpack/sat.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    f << body;
    if (!f) throw std::runtime_error("write to '" + out_path + "' failed");
    std::cout << "wrote " << out_path << "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    std::string kind; // cubic-tf | bounded
    int n = 10;
    int dmax = 3;
    std::uint64_t seed = 1;
    std::string out;
};

int run_generate(const GenerateOpts& o) {
    kpack::Graph g = o.kind == "cubic-tf" ? kpack::gen_triangle_free_cubic(o.n, o.seed)
                                          : kpack::gen_bounded_degree(o.n, o.dmax, o.seed);
    std::ostringstream buf;
    kpack::write_dimacs(g, buf);
    emit(buf.str(), o.out);
    return 0;
}

// ------------------------------------------------------------------- solve

struct SolveOpts {
    std::string input;
    int r = 3;
    std::string mode = "vertex";
    std::string method = "exact"; // greedy | exact | local
    int swap_size = 1;
    int max_cliques = 10000;
    std::string format = "json"; // json | text
    std::string out;
};

int run_solve(const SolveOpts& o) {
    const kpack::Graph g = kpack::read_dimacs_file(o.input);
    const kpack::Mode mode = kpack::mode_from_string(o.mode);
    const kpack::Regime regime = kpack::classify_regime(o.r, kpack::max_degree(g), mode);

    kpack::Packing p;
    kpack::SolveStats stats;
    bool have_stats = false;
    if (o.method == "greedy") {
        p = kpack::greedy_maximal_packing(g, o.r, mode);
    } else if (o.method == "exact") {
        p = kpack::exact_max_packing(g, o.r, mode, o.max_cliques, &stats);
        have_stats = true;
    } else if (o.method == "local") {
        p = kpack::local_improvement_packing(g, o.r, mode, o.swap_size);
    } else {
        throw std::invalid_argument("unknown method '" + o.method + "'");
    }

    if (o.format == "text") {
        std::ostringstream b;
        b << "graph: vertices=" << g.vertex_count() << " edges=" << g.edge_count()
          << " max_degree=" << kpack::max_degree(g) << "\n";
        b << "regime: " << kpack::to_string(regime.tag) << " (" << regime.threshold_note << ")\n";
        b << "method: " << o.method << "\n";
        b << "size: " << p.size() << "\n";
        for (const auto& c : p.cliques) {
            b << " ";
            for (int v : c) b << " " << v + 1;
            b << "\n";
        }
        if (have_stats)
            b << "stats: nodes=" << stats.nodes << " bound_prunes=" << stats.bound_prunes << "\n";
        if (o.method == "local")
            b << "ratio_bound: "
              << kpack::local_improvement_ratio_bound(o.r, mode, o.swap_size) << "\n";
        emit(b.str(), o.out);
        return 0;
    }

    json rep;
    rep["schema"] = 1;
    rep["config"] = {{"command", "solve"},     {"input", o.input},
                     {"output", o.out},        {"r", o.r},
                     {"mode", o.mode},         {"method", o.method},
                     {"swap", o.swap_size},    {"max_cliques", o.max_cliques},
                     {"format", o.format}};
    rep["graph"] = {{"vertices", g.vertex_count()},
                    {"edges", g.edge_count()},
                    {"max_degree", kpack::max_degree(g)}};
    rep["regime"] = {{"tag", kpack::to_string(regime.tag)}, {"note", regime.threshold_note}};
    rep["packing"] = json::parse(kpack::packing_to_json(p));
    rep["size"] = p.size();
    if (have_stats)
        rep["stats"] = {{"nodes", stats.nodes}, {"bound_prunes", stats.bound_prunes}};
    if (o.method == "local")
        rep["ratio_bound"] = kpack::local_improvement_ratio_bound(o.r, mode, o.swap_size);
    emit(rep.dump(2) + "\n", o.out);
    return 0;
}

// ------------------------------------------------------------------ reduce

struct ReduceOpts {
    std::string kind; // vdkr | edk4 | edk5
    std::string input;
    int r = 3;
    std::string out; // bundle prefix, required
};

int run_reduce(const ReduceOpts& o) {
    const kpack::ReductionKind kind = kpack::reduction_kind_from_string(o.kind);
    if (kind == kpack::ReductionKind::vdkr) {
        const kpack::Graph g = kpack::read_dimacs_file(o.input);
        const auto red = kpack::reduce_mis_to_vdkr(g, o.r);
        kpack::write_reduction_bundle(red, o.out, o.input);
        std::cout << "vdkr r=" << o.r << ": source vertices=" << g.vertex_count()
                  << " edges=" << g.edge_count()
                  << " -> target vertices=" << red.target.vertex_count()
                  << " edges=" << red.target.edge_count()
                  << " max_degree=" << kpack::max_degree(red.target)
                  << " cliques=" << red.clique_of_vertex.size()
                  << " shared_sets=" << red.shared_sets.size() << "\n";
        std::cout << "wrote " << o.out << ".col and " << o.out << ".json\n";
        return 0;
    }
    const kpack::Formula phi = kpack::read_dimacs_cnf_file(o.input);
    const auto red = kind == kpack::ReductionKind::edk4 ? kpack::reduce_max2sat3_to_edk4(phi)
                                                        : kpack::reduce_max2sat3_to_edk5(phi);
    kpack::write_reduction_bundle(red, o.out, o.input);
    int clause_cliques = 0;
    for (const auto& cg : red.clause_gadgets) clause_cliques += static_cast<int>(cg.cliques.size());
    std::cout << o.kind << ": source variables=" << phi.variable_count
              << " clauses=" << phi.clauses.size()
              << " -> target vertices=" << red.target.vertex_count()
              << " edges=" << red.target.edge_count()
              << " max_degree=" << kpack::max_degree(red.target)
              << " gadget_cliques=" << red.gadget_clique_total()
              << " clause_cliques=" << clause_cliques << "\n";
    std::cout << "wrote " << o.out << ".col and " << o.out << ".json\n";
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
    std::string suite;
    int r = 3;
    int dmax = 3;
    int n = 12;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string mode = "vertex";
    // lreduction extras
    std::string kind = "vdkr";
    bool exhaustive_2var = false;
    int variables = 3;
    int samples = 8;
};

int finish_verify(const VerifyOpts& o, int checked, const std::vector<std::string>& details) {
    std::cout << "suite: " << o.suite << "\n";
    std::cout << "trials: " << checked << "  violations: " << details.size() << "\n";
    std::size_t shown = 0;
    for (const auto& d : details) {
        if (shown++ == 20) {
            std::cout << "  ... " << details.size() - 20 << " more\n";
            break;
        }
        std::cout << "  " << d << "\n";
    }
    std::cout << (details.empty() ? "ok" : "FAIL") << "\n";
    return details.empty() ? 0 : 1;
}

int run_verify_claw(const VerifyOpts& o) {
    const kpack::Mode mode = kpack::mode_from_string(o.mode);
    std::vector<std::string> details;
    for (int t = 0; t < o.trials; ++t) {
        const kpack::Graph g = kpack::gen_bounded_degree(o.n, o.dmax, o.seed + static_cast<std::uint64_t>(t));
        const auto ig = kpack::build_intersection_graph(g, o.r, mode);
        if (const auto claw = kpack::find_claw(ig)) {
            std::ostringstream d;
            d << "trial " << t << " (seed " << o.seed + static_cast<std::uint64_t>(t)
              << "): claw at center " << claw->center << " leaves " << claw->leaf1 << ","
              << claw->leaf2 << "," << claw->leaf3;
            details.push_back(d.str());
        }
    }
    return finish_verify(o, o.trials, details);
}

int run_verify_overlap(const VerifyOpts& o) {
    std::vector<std::string> details;
    for (int t = 0; t < o.trials; ++t) {
        const kpack::Graph g = kpack::gen_bounded_degree(o.n, o.dmax, o.seed + static_cast<std::uint64_t>(t));
        const auto cliques = kpack::enumerate_krs(g, o.r);
        for (std::size_t i = 0; i < cliques.size(); ++i)
            for (std::size_t j = i + 1; j < cliques.size(); ++j) {
                const int ov = kpack::pairwise_overlap(cliques[i], cliques[j]);
                if (ov >= 1 && 3 * ov <= o.r) {
                    std::ostringstream d;
                    d << "trial " << t << ": cliques " << i << "," << j << " overlap " << ov
                      << " <= r/3";
                    details.push_back(d.str());
                }
            }
    }
    return finish_verify(o, o.trials, details);
}

int run_verify_coincidence(const VerifyOpts& o) {
    if (o.dmax >= 2 * o.r - 2)
        throw std::invalid_argument("coincidence suite needs dmax < 2r-2");
    std::vector<std::string> details;
    for (int t = 0; t < o.trials; ++t) {
        const kpack::Graph g = kpack::gen_bounded_degree(o.n, o.dmax, o.seed + static_cast<std::uint64_t>(t));
        if (!kpack::check_disjointness_coincidence(g, o.r)) {
            std::ostringstream d;
            d << "trial " << t << ": a K_" << o.r << " pair shares exactly one vertex";
            details.push_back(d.str());
        }
        const int ve = kpack::exact_max_packing(g, o.r, kpack::Mode::vertex).size();
        const int ee = kpack::exact_max_packing(g, o.r, kpack::Mode::edge).size();
        if (ve != ee) {
            std::ostringstream d;
            d << "trial " << t << ": vertex optimum " << ve << " != edge optimum " << ee;
            details.push_back(d.str());
        }
    }
    return finish_verify(o, o.trials, details);
}

int run_verify_maximal(const VerifyOpts& o) {
    std::vector<std::string> details;
    for (int t = 0; t < o.trials; ++t) {
        const kpack::Graph g = kpack::gen_bounded_degree(o.n, o.dmax, o.seed + static_cast<std::uint64_t>(t));
        for (const kpack::Mode mode : {kpack::Mode::vertex, kpack::Mode::edge}) {
            const int greedy = kpack::greedy_maximal_packing(g, o.r, mode).size();
            const int exact = kpack::exact_max_packing(g, o.r, mode).size();
            if (greedy != exact) {
                std::ostringstream d;
                d << "trial " << t << " mode " << kpack::to_string(mode) << ": greedy " << greedy
                  << " != exact " << exact;
                details.push_back(d.str());
            }
        }
    }
    return finish_verify(o, o.trials, details);
}

int run_verify_lreduction(const VerifyOpts& o) {
    const kpack::ReductionKind kind = kpack::reduction_kind_from_string(o.kind);
    kpack::LReductionReport rep;
    if (kind == kpack::ReductionKind::vdkr) {
        std::vector<kpack::Graph> sources;
        for (int t = 0; t < o.trials; ++t)
            sources.push_back(kpack::gen_triangle_free_cubic(o.n, o.seed + static_cast<std::uint64_t>(t)));
        rep = kpack::verify_l_reduction(sources, o.r, o.samples, o.seed);
    } else {
        std::vector<kpack::Formula> sources;
        if (o.exhaustive_2var) {
            sources = kpack::all_two_variable_reduction_ready_formulas();
        } else {
            for (int t = 0; t < o.trials; ++t)
                sources.push_back(kpack::random_reduction_ready_formula(
                    o.variables, o.seed + static_cast<std::uint64_t>(t)));
        }
        rep = kpack::verify_l_reduction(kind, sources, o.samples, o.seed);
    }
    std::cout << "suite: lreduction  kind: " << kpack::to_string(rep.kind) << "  r: " << rep.r
              << "\n";
    std::cout << "alpha: " << rep.alpha << "  beta: " << rep.beta << "\n";
    std::cout << "instances: " << rep.instances << "  samples: " << rep.solution_samples << "\n";
    std::cout << "alpha ratio observed: min " << rep.min_alpha_ratio << " max "
              << rep.max_alpha_ratio << "\n";
    std::cout << "beta ratio observed: max " << rep.max_beta_ratio << "\n";
    std::cout << "violations: alpha " << rep.alpha_violations << "  beta " << rep.beta_violations
              << "\n";
    std::size_t shown = 0;
    for (const auto& d : rep.violation_details) {
        if (shown++ == 20) {
            std::cout << "  ... " << rep.violation_details.size() - 20 << " more\n";
            break;
        }
        std::cout << "  " << d << "\n";
    }
    std::cout << (rep.ok() ? "ok" : "FAIL") << "\n";
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clique packing toolkit: generate, solve, reduce, verify"};
    app.require_subcommand(1);
    int rc = 0;

    GenerateOpts gen;
    auto* generate = app.add_subcommand("generate", "write a random graph in DIMACS edge format");
    generate->require_subcommand(1);
    auto* cubic = generate->add_subcommand("cubic-tf", "triangle-free graph with max degree 3");
    cubic->add_option("-n,--n", gen.n, "vertex count")->required();
    cubic->add_option("--seed", gen.seed, "random seed");
    cubic->add_option("-o,--out", gen.out, "output path (stdout when omitted)");
    cubic->callback([&] { gen.kind = "cubic-tf"; rc = run_generate(gen); });
    auto* bounded = generate->add_subcommand("bounded", "graph with bounded max degree");
    bounded->add_option("-n,--n", gen.n, "vertex count")->required();
    bounded->add_option("--dmax", gen.dmax, "max degree")->required();
    bounded->add_option("--seed", gen.seed, "random seed");
    bounded->add_option("-o,--out", gen.out, "output path (stdout when omitted)");
    bounded->callback([&] { gen.kind = "bounded"; rc = run_generate(gen); });

    SolveOpts sol;
    auto* solve = app.add_subcommand("solve", "compute a K_r packing and classify the regime");
    solve->add_option("input", sol.input, "graph file, DIMACS edge format")->required();
    solve->add_option("-r,--r", sol.r, "clique order")->required();
    solve->add_option("--mode", sol.mode, "vertex | edge")->check(CLI::IsMember({"vertex", "edge"}));
    solve->add_option("--method", sol.method, "greedy | exact | local")
        ->check(CLI::IsMember({"greedy", "exact", "local"}));
    solve->add_option("--swap", sol.swap_size, "local search swap size t");
    solve->add_option("--max-cliques", sol.max_cliques, "exact-search clique guard");
    solve->add_option("--format", sol.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    solve->add_option("-o,--out", sol.out, "report path (stdout when omitted)");
    solve->callback([&] { rc = run_solve(sol); });

    ReduceOpts red;
    auto* reduce = app.add_subcommand("reduce", "materialize a hardness reduction as a bundle");
    reduce->add_option("input", red.input, "source instance (graph or CNF)")->required();
    reduce->add_option("--kind", red.kind, "vdkr | edk4 | edk5")
        ->required()
        ->check(CLI::IsMember({"vdkr", "edk4", "edk5"}));
    reduce->add_option("-r,--r", red.r, "clique order (vdkr only)");
    reduce->add_option("-o,--out", red.out, "bundle prefix")->required();
    reduce->callback([&] { rc = run_reduce(red); });

    VerifyOpts ver;
    auto* verify = app.add_subcommand("verify", "run a property-verification suite");
    verify->require_subcommand(1);
    auto add_common = [&](CLI::App* s) {
        s->add_option("-r,--r", ver.r, "clique order");
        s->add_option("--dmax", ver.dmax, "max degree of sampled graphs");
        s->add_option("-n,--n", ver.n, "vertices per sampled graph");
        s->add_option("--trials", ver.trials, "number of sampled instances");
        s->add_option("--seed", ver.seed, "base seed");
    };
    auto* claw = verify->add_subcommand("claw", "intersection graphs are claw-free");
    add_common(claw);
    claw->add_option("--mode", ver.mode, "vertex | edge")->check(CLI::IsMember({"vertex", "edge"}));
    claw->callback([&] { ver.suite = "claw"; rc = run_verify_claw(ver); });
    auto* overlap = verify->add_subcommand("overlap", "intersecting K_r pairs overlap > r/3");
    add_common(overlap);
    overlap->callback([&] { ver.suite = "overlap"; rc = run_verify_overlap(ver); });
    auto* coin = verify->add_subcommand("coincidence",
                                        "edge- and vertex-disjoint packings coincide");
    add_common(coin);
    coin->callback([&] { ver.suite = "coincidence"; rc = run_verify_coincidence(ver); });
    auto* maximal = verify->add_subcommand("maximal", "greedy maximal equals exact maximum");
    add_common(maximal);
    maximal->callback([&] { ver.suite = "maximal"; rc = run_verify_maximal(ver); });
    auto* lred = verify->add_subcommand("lreduction", "empirical L-reduction certification");
    add_common(lred);
    lred->add_option("--kind", ver.kind, "vdkr | edk4 | edk5")
        ->check(CLI::IsMember({"vdkr", "edk4", "edk5"}));
    lred->add_flag("--exhaustive-2var", ver.exhaustive_2var,
                   "use every two-variable reduction-ready formula");
    lred->add_option("--variables", ver.variables, "variables per random formula");
    lred->add_option("--samples", ver.samples, "target solutions sampled per instance");
    lred->callback([&] { ver.suite = "lreduction"; rc = run_verify_lreduction(ver); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const kpack::guard_error& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const kpack::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
