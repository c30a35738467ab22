#include "kpack/errors.hpp"
#include "kpack/reduction.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace kpack {

namespace {

nlohmann::json one_based(const std::vector<int>& ids) {
    nlohmann::json arr = nlohmann::json::array();
    for (int v : ids) arr.push_back(v + 1);
    return arr;
}

nlohmann::json label_array(const Graph& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (int v = 0; v < g.vertex_count(); ++v) arr.push_back(g.label(v));
    return arr;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

nlohmann::json bundle_head(const Graph& target, const char* kind, int r,
                           const std::string& source_name) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = kind;
    j["r"] = r;
    j["source"] = source_name;
    j["vertices"] = target.vertex_count();
    j["edges"] = target.edge_count();
    j["max_degree"] = max_degree(target);
    j["labels"] = label_array(target);
    return j;
}

} // namespace

void write_reduction_bundle(const VdkrReduction& red, const std::string& prefix,
                            const std::string& source_name) {
    write_dimacs_file(red.target, prefix + ".col");
    nlohmann::json j = bundle_head(red.target, "vdkr", red.r, source_name);
    nlohmann::json per_vertex = nlohmann::json::array();
    for (const auto& c : red.clique_of_vertex) per_vertex.push_back(one_based(c));
    nlohmann::json shared = nlohmann::json::array();
    for (const auto& [edge, vs] : red.shared_sets) {
        nlohmann::json rec;
        rec["edge"] = {edge.first + 1, edge.second + 1};
        rec["vertices"] = one_based(vs);
        shared.push_back(rec);
    }
    nlohmann::json free_sets = nlohmann::json::array();
    for (const auto& f : red.free_sets) free_sets.push_back(one_based(f));
    j["cliques"] = {{"per_vertex", per_vertex}, {"shared", shared}, {"free", free_sets}};
    write_text(prefix + ".json", j.dump(2) + "\n");
}

void write_reduction_bundle(const EdkReduction& red, const std::string& prefix,
                            const std::string& source_name) {
    write_dimacs_file(red.target, prefix + ".col");
    nlohmann::json j =
        bundle_head(red.target, red.r == 4 ? "edk4" : "edk5", red.r, source_name);
    nlohmann::json even = nlohmann::json::array(), odd = nlohmann::json::array();
    for (const auto& gadget : red.gadgets) {
        nlohmann::json ev = nlohmann::json::array(), od = nlohmann::json::array();
        for (const auto& c : gadget.even_cliques) ev.push_back(one_based(c));
        for (const auto& c : gadget.odd_cliques) od.push_back(one_based(c));
        even.push_back(ev);
        odd.push_back(od);
    }
    nlohmann::json clause = nlohmann::json::array(), fresh = nlohmann::json::array();
    for (const auto& cg : red.clause_gadgets) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& entry : cg.cliques) {
            nlohmann::json rec;
            rec["variable"] = entry.variable + 1;
            rec["occurrence"] = entry.occurrence;
            rec["positive"] = entry.positive;
            rec["literal"] = entry.literal_index;
            rec["clique"] = one_based(entry.clique);
            entries.push_back(rec);
        }
        clause.push_back(entries);
        fresh.push_back(one_based(cg.fresh_vertices));
    }
    j["cliques"] = {{"even", even}, {"odd", odd}, {"clause", clause}, {"fresh", fresh}};
    write_text(prefix + ".json", j.dump(2) + "\n");
}

ReductionBundle read_reduction_bundle(const std::string& prefix) {
    ReductionBundle bundle;
    bundle.target = read_dimacs_file(prefix + ".col");
    std::ifstream in(prefix + ".json", std::ios::binary);
    if (!in) throw parse_error("cannot open '" + prefix + ".json'");
    std::ostringstream body;
    body << in.rdbuf();
    bundle.json_text = body.str();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bundle.json_text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("bundle sidecar '" + prefix + ".json': " + e.what());
    }
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_number_integer() ||
        j["schema"].get<int>() != 1)
        throw parse_error("bundle sidecar '" + prefix + ".json': unsupported schema");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw parse_error("bundle sidecar '" + prefix + ".json': missing kind");
    try {
        reduction_kind_from_string(j["kind"].get<std::string>());
    } catch (const std::invalid_argument&) {
        throw parse_error("bundle sidecar '" + prefix + ".json': unknown kind '" +
                          j["kind"].get<std::string>() + "'");
    }
    if (!j.contains("vertices") || !j["vertices"].is_number_integer() ||
        j["vertices"].get<int>() != bundle.target.vertex_count())
        throw parse_error("bundle sidecar '" + prefix +
                          ".json': vertex count does not match the graph file");
    return bundle;
}

} // namespace kpack
