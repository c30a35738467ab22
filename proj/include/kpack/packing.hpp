#pragma once

#include "kpack/clique.hpp"

#include <string>

namespace kpack {

struct Packing {
    Mode mode = Mode::vertex;
    int r = 0;
    std::vector<Clique> cliques; // kept sorted lexicographically
    int size() const { return static_cast<int>(cliques.size()); }
    bool operator==(const Packing&) const = default;
};

// Every member is a K_r of g and all pairs are compatible under p.mode.
bool is_valid_packing(const Graph& g, const Packing& p);

// Complexity regime of (r, Delta, mode) per the degree thresholds, decided
// with exact integer arithmetic. r >= 3 required.
//   vertex mode:          linear iff 2*Delta < 3r-2, claw-free-poly iff
//                         3*Delta < 5r-3, hard otherwise.
//   edge mode, r <= 5:    linear iff 2*Delta < 3r-2, poly iff Delta <= 2r-2,
//                         hard otherwise.
//   edge mode, r >= 6:    same thresholds as vertex mode.
enum class RegimeTag { LinearTime, PolyVertexClawFree, PolyEdgeClawFree, ApxHard };

const char* to_string(RegimeTag t);

struct Regime {
    RegimeTag tag = RegimeTag::LinearTime;
    std::string threshold_note;
};

Regime classify_regime(int r, int delta, Mode mode);

struct SolveStats {
    long long nodes = 0;
    long long bound_prunes = 0;
};

// Deterministic maximal packing: scan vertices ascending and repeatedly take
// the lexicographically smallest addable K_r contained in the closed
// neighborhood of the current vertex.
Packing greedy_maximal_packing(const Graph& g, int r, Mode mode);

// Exact maximum packing via branch and bound on the mode-matched
// intersection graph: include-first lexicographic branching with a greedy
// clique-cover upper bound. Among maximum packings the lexicographically
// least clique set is returned. Throws guard_error when the clique count
// exceeds max_cliques.
Packing exact_max_packing(const Graph& g, int r, Mode mode,
                          int max_cliques = 10000, SolveStats* stats = nullptr);

// Seeds with the greedy packing, then applies first-found improving swaps
// that remove s <= swap_size cliques and insert s+1, until none remains.
Packing local_improvement_packing(const Graph& g, int r, Mode mode, int swap_size = 1);

// Provable worst-case ratio optimum/|local| for a swap_size-optimal packing:
// (k + 1/t)/2 with k = r in vertex mode and r(r-1)/2 in edge mode.
double local_improvement_ratio_bound(int r, Mode mode, int swap_size);

// For Delta(g) < 2r-2 (precondition, violations throw), reports whether no
// pair of K_r's shares exactly one vertex, i.e. edge-disjoint and
// vertex-disjoint packings coincide as set families.
bool check_disjointness_coincidence(const Graph& g, int r);

// Independent oracle: maximum independent set size by plain exhaustive
// recursion. Guarded; intended for small verification instances.
int brute_force_max_independent_set(const Graph& g, int guard_vertices = 30);

// JSON record {mode, r, size, cliques} with 1-based vertex ids.
std::string packing_to_json(const Packing& p);
Packing packing_from_json(const std::string& text);

} // namespace kpack
