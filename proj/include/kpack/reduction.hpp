#pragma once

#include "kpack/packing.hpp"
#include "kpack/sat.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kpack {

enum class ReductionKind { vdkr, edk4, edk5 };

const char* to_string(ReductionKind k);
ReductionKind reduction_kind_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Independent set on triangle-free Delta<=3 graphs -> vertex-disjoint K_r.
//
// One K_r per source vertex; for every source edge {i,j} the lowest-index
// still-unmerged pair members of the two cliques are identified pairwise,
// floor(r/3) pairs per edge, edges processed in sorted order. The K_r's of
// the target are exactly the per-vertex cliques, so independent sets and
// vertex-disjoint packings correspond one-to-one.
// ---------------------------------------------------------------------------

struct VdkrReduction {
    Graph source;
    int r = 3;
    Graph target;
    std::vector<Clique> clique_of_vertex; // U_i per source vertex
    // W_ij: merged vertices per source edge (key sorted, list ascending).
    std::vector<std::pair<std::pair<int, int>, std::vector<int>>> shared_sets;
    // X_i: never-merged vertices of each per-vertex clique (may be empty
    // when r = 0 mod 3 and the source vertex has degree 3).
    std::vector<std::vector<int>> free_sets;
};

// Requires r >= 3, source triangle-free with max degree <= 3.
VdkrReduction reduce_mis_to_vdkr(const Graph& g, int r);

// independent must be an independent set of red.source.
Packing vdkr_map_is_to_packing(const VdkrReduction& red, const std::vector<int>& independent);

// Every clique of p must be one of red.clique_of_vertex; returns the sorted
// source vertex set, which is independent by construction.
std::vector<int> vdkr_map_packing_to_is(const VdkrReduction& red, const Packing& p);

// ---------------------------------------------------------------------------
// MAX2SAT(3) -> edge-disjoint K_4 / K_5.
//
// Per variable x_i a ring gadget with one block per occurrence: for r=4 ten
// vertices a,b,c,d,e,h,u,v,w,y per block carrying three even and three odd
// K_4's; for r=5 eight vertices a,b,c,d,e,h,u,v per block carrying two odd
// and two even K_5's (the last clique of each block wraps into the next).
// Per clause a gadget whose s/t vertices are identified with the b,c (r=4
// positive), e,h (r=4 negative), a,b (r=5 positive) or b,c (r=5 negative)
// vertices of the corresponding occurrence block, leaving one fresh vertex w
// (r=4) or four fresh w1..w4 (r=5) per two-literal clause. Each clause
// contributes one clause clique per literal; the two overlap in two or more
// vertices, so a packing holds at most one per clause.
// ---------------------------------------------------------------------------

struct EdkVariableGadget {
    int base = 0;        // first target vertex id of the gadget block
    int occurrences = 0; // m_i
    std::vector<Clique> even_cliques; // construction order (block, position)
    std::vector<Clique> odd_cliques;
};

struct EdkClauseClique {
    int variable = 0;
    int occurrence = 0; // 1-based block index inside the variable gadget
    bool positive = true;
    int literal_index = 0; // 0 = first literal of the clause, 1 = second
    Clique clique;
};

struct EdkClauseGadget {
    std::vector<int> fresh_vertices;
    std::vector<EdkClauseClique> cliques;
};

struct EdkReduction {
    int r = 4; // 4 or 5
    Formula source;
    Graph target;
    std::vector<EdkVariableGadget> gadgets;       // per variable
    std::vector<EdkClauseGadget> clause_gadgets;  // per clause

    // Ring cliques per occurrence: 3 for r=4, 2 for r=5.
    int cliques_per_occurrence() const { return r == 4 ? 3 : 2; }
    // Sum over variables of cliques_per_occurrence()*m_i.
    int gadget_clique_total() const;
};

// Require phi reduction-ready (see Formula::is_reduction_ready).
EdkReduction reduce_max2sat3_to_edk4(const Formula& phi);
EdkReduction reduce_max2sat3_to_edk5(const Formula& phi);

// Even lists for true variables, odd lists for false ones, plus the clause
// clique of the first satisfied literal of every satisfied clause. Size is
// gadget_clique_total() + count_satisfied(phi, f).
Packing edk_assignment_to_packing(const EdkReduction& red, const Assignment& f);

// Repairs an edge-disjoint packing of the target into canonical form, where
// every variable gadget holds exactly its full even or full odd list, without
// shrinking it. Input cliques must belong to the reduction's clique lists.
Packing canonicalize_packing(const EdkReduction& red, const Packing& t);

// Canonicalizes, then reads each variable off its gadget parity. Satisfies
// at least size(t) - gadget_clique_total() clauses.
Assignment edk_packing_to_assignment(const EdkReduction& red, const Packing& t);

// ---------------------------------------------------------------------------
// Empirical L-reduction check: alpha is 1 (vdkr), 13 (edk4), 9 (edk5) and
// beta is 1 throughout. For every sample instance the target optimum is
// compared against alpha * source optimum, and for a deterministic family of
// feasible target solutions y the mapped-back solution is checked against
// opt_source - m(g(y)) <= beta * (opt_target - m(y)).
// ---------------------------------------------------------------------------

struct LReductionReport {
    ReductionKind kind = ReductionKind::vdkr;
    int r = 0;
    int alpha = 1, beta = 1;
    int instances = 0;
    int solution_samples = 0;
    int alpha_violations = 0;
    int beta_violations = 0;
    double min_alpha_ratio = 0.0; // observed opt_target / opt_source
    double max_alpha_ratio = 0.0;
    double max_beta_ratio = 0.0;  // observed regret ratio where defined
    std::vector<std::string> violation_details;
    bool ok() const { return alpha_violations == 0 && beta_violations == 0; }
};

LReductionReport verify_l_reduction(const std::vector<Graph>& sources, int r,
                                    int samples_per_instance = 8,
                                    std::uint64_t seed = 1);
LReductionReport verify_l_reduction(ReductionKind kind,
                                    const std::vector<Formula>& sources,
                                    int samples_per_instance = 8,
                                    std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Reduction bundle: <prefix>.col (target graph, DIMACS) + <prefix>.json
// sidecar {schema, kind, r, source, labels, cliques} with 1-based ids.
// ---------------------------------------------------------------------------

void write_reduction_bundle(const VdkrReduction& red, const std::string& prefix,
                            const std::string& source_name);
void write_reduction_bundle(const EdkReduction& red, const std::string& prefix,
                            const std::string& source_name);

struct ReductionBundle {
    Graph target;
    std::string json_text; // sidecar body, exactly as stored
};

ReductionBundle read_reduction_bundle(const std::string& prefix);

} // namespace kpack
