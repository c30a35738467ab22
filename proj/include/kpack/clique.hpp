#pragma once

#include "kpack/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kpack {

// A clique is its sorted vertex list; that is the canonical form everywhere.
using Clique = std::vector<int>;

// Disjointness flavor: vertex-disjoint packings forbid any shared vertex,
// edge-disjoint packings allow cliques to share at most one vertex.
enum class Mode { vertex, edge };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

// Number of shared vertices between two cliques (sorted-merge count).
int pairwise_overlap(const Clique& a, const Clique& b);

// true when the pair may coexist in a packing of the given mode, i.e. the
// overlap is 0 (vertex mode) or at most 1 (edge mode).
bool cliques_compatible(const Clique& a, const Clique& b, Mode mode);

// All K_r subgraphs in lexicographic order, by ordered recursive extension
// over higher-indexed common neighbors. r >= 2 required.
std::vector<Clique> enumerate_krs(const Graph& g, int r);

// Intersection graph of the K_r's: one node per clique, an edge when the
// pair overlaps in >= 1 vertex (vertex mode) resp. >= 2 vertices (edge mode).
struct IntersectionGraph {
    Mode mode = Mode::vertex;
    int r = 0;
    std::vector<Clique> cliques; // lexicographic order, node i = cliques[i]
    Graph skeleton;
};

IntersectionGraph build_intersection_graph(const Graph& g, int r, Mode mode);

// Induced K_{1,3} witness: center adjacent to three pairwise non-adjacent
// leaves, leaf1 < leaf2 < leaf3.
struct ClawWitness {
    int center = -1;
    int leaf1 = -1, leaf2 = -1, leaf3 = -1;
    bool operator==(const ClawWitness&) const = default;
};

// Deterministic: returns the lexicographically smallest witness tuple
// (center, leaf1, leaf2, leaf3), or nothing if the graph is claw-free.
std::optional<ClawWitness> find_claw(const Graph& h);
std::optional<ClawWitness> find_claw(const IntersectionGraph& h);

// Clique-list text format, one clique per line: "k <v1> ... <vr>", 1-based.
// Together with the DIMACS writer this serializes an intersection graph.
void write_clique_list(const std::vector<Clique>& cliques, std::ostream& out);
void write_clique_list_file(const std::vector<Clique>& cliques, const std::string& path);
std::vector<Clique> read_clique_list(std::istream& in);
std::vector<Clique> read_clique_list_file(const std::string& path);

} // namespace kpack
