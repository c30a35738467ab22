#include "kpack/reduction.hpp"

#include "kpack/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace kpack {

const char* to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::vdkr: return "vdkr";
        case ReductionKind::edk4: return "edk4";
        case ReductionKind::edk5: return "edk5";
    }
    return "?";
}

ReductionKind reduction_kind_from_string(const std::string& s) {
    if (s == "vdkr") return ReductionKind::vdkr;
    if (s == "edk4") return ReductionKind::edk4;
    if (s == "edk5") return ReductionKind::edk5;
    throw std::invalid_argument("unknown reduction kind '" + s + "'");
}

int EdkReduction::gadget_clique_total() const {
    int total = 0;
    for (const auto& gadget : gadgets) total += cliques_per_occurrence() * gadget.occurrences;
    return total;
}

// ---------------------------------------------------------------------------
// Independent set -> vertex-disjoint K_r
// ---------------------------------------------------------------------------

VdkrReduction reduce_mis_to_vdkr(const Graph& g, int r) {
    if (r < 3) throw std::invalid_argument("reduce_mis_to_vdkr: r must be >= 3");
    if (max_degree(g) > 3)
        throw std::invalid_argument("reduce_mis_to_vdkr: source max degree must be <= 3");
    if (!is_triangle_free(g))
        throw std::invalid_argument("reduce_mis_to_vdkr: source must be triangle-free");

    const int n = g.vertex_count();
    const int per_edge = r / 3;
    const auto edges = g.edges(); // sorted

    // One K_r per source vertex, slots i*r+k. Each source edge identifies the
    // floor(r/3) lowest-index still-unmerged slots of its two cliques
    // pairwise; with degree at most 3 a clique never runs out of slots.
    std::vector<int> partner(static_cast<std::size_t>(n) * static_cast<std::size_t>(r), -1);
    std::vector<std::pair<std::pair<int, int>, std::vector<std::pair<int, int>>>> merge_plan;
    for (auto [i, j] : edges) {
        std::vector<int> si, sj;
        for (int k = 0; k < r && static_cast<int>(si.size()) < per_edge; ++k)
            if (partner[static_cast<std::size_t>(i * r + k)] < 0) si.push_back(i * r + k);
        for (int k = 0; k < r && static_cast<int>(sj.size()) < per_edge; ++k)
            if (partner[static_cast<std::size_t>(j * r + k)] < 0) sj.push_back(j * r + k);
        assert(static_cast<int>(si.size()) == per_edge && static_cast<int>(sj.size()) == per_edge);
        std::vector<std::pair<int, int>> pairs;
        for (int q = 0; q < per_edge; ++q) {
            partner[static_cast<std::size_t>(si[static_cast<std::size_t>(q)])] = sj[static_cast<std::size_t>(q)];
            partner[static_cast<std::size_t>(sj[static_cast<std::size_t>(q)])] = si[static_cast<std::size_t>(q)];
            pairs.emplace_back(si[static_cast<std::size_t>(q)], sj[static_cast<std::size_t>(q)]);
        }
        merge_plan.push_back({{i, j}, std::move(pairs)});
    }

    // Dense target ids in slot order; a merged pair shares the id minted at
    // its smaller slot.
    std::vector<int> vertex_of_slot(static_cast<std::size_t>(n) * static_cast<std::size_t>(r), -1);
    int next_id = 0;
    for (int s = 0; s < n * r; ++s) {
        if (vertex_of_slot[static_cast<std::size_t>(s)] >= 0) continue;
        vertex_of_slot[static_cast<std::size_t>(s)] = next_id;
        const int p = partner[static_cast<std::size_t>(s)];
        if (p > s) vertex_of_slot[static_cast<std::size_t>(p)] = next_id;
        ++next_id;
    }
    assert(next_id == n * r - static_cast<int>(edges.size()) * per_edge);

    VdkrReduction red;
    red.source = g;
    red.r = r;
    red.target = Graph(next_id);
    red.clique_of_vertex.resize(static_cast<std::size_t>(n));
    red.free_sets.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Clique u;
        for (int k = 0; k < r; ++k) u.push_back(vertex_of_slot[static_cast<std::size_t>(i * r + k)]);
        std::sort(u.begin(), u.end());
        for (std::size_t a = 0; a < u.size(); ++a)
            for (std::size_t b = a + 1; b < u.size(); ++b)
                red.target.add_edge(u[a], u[b]);
        red.clique_of_vertex[static_cast<std::size_t>(i)] = std::move(u);
        std::vector<int> frees;
        for (int k = 0; k < r; ++k) {
            const int slot = i * r + k;
            if (partner[static_cast<std::size_t>(slot)] < 0)
                frees.push_back(vertex_of_slot[static_cast<std::size_t>(slot)]);
        }
        std::sort(frees.begin(), frees.end());
        red.free_sets[static_cast<std::size_t>(i)] = std::move(frees);
    }
    for (const auto& [edge, pairs] : merge_plan) {
        std::vector<int> shared;
        for (auto [sa, sb] : pairs) {
            (void)sb;
            shared.push_back(vertex_of_slot[static_cast<std::size_t>(sa)]);
        }
        std::sort(shared.begin(), shared.end());
        for (std::size_t q = 0; q < shared.size(); ++q)
            red.target.set_label(shared[q], "W(" + std::to_string(edge.first + 1) + "," +
                                                std::to_string(edge.second + 1) + ")." +
                                                std::to_string(q + 1));
        red.shared_sets.push_back({edge, std::move(shared)});
    }
    for (int i = 0; i < n; ++i) {
        const auto& frees = red.free_sets[static_cast<std::size_t>(i)];
        for (std::size_t q = 0; q < frees.size(); ++q)
            red.target.set_label(frees[q],
                                 "X(" + std::to_string(i + 1) + ")." + std::to_string(q + 1));
    }
    return red;
}

Packing vdkr_map_is_to_packing(const VdkrReduction& red, const std::vector<int>& independent) {
    std::vector<int> s(independent);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("vdkr_map_is_to_packing: repeated vertex");
    for (int v : s)
        if (v < 0 || v >= red.source.vertex_count())
            throw std::invalid_argument("vdkr_map_is_to_packing: vertex " + std::to_string(v) + " out of range");
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (red.source.has_edge(s[a], s[b]))
                throw std::invalid_argument("vdkr_map_is_to_packing: input set is not independent");
    Packing out{Mode::vertex, red.r, {}};
    for (int v : s) out.cliques.push_back(red.clique_of_vertex[static_cast<std::size_t>(v)]);
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

std::vector<int> vdkr_map_packing_to_is(const VdkrReduction& red, const Packing& p) {
    if (p.mode != Mode::vertex || p.r != red.r)
        throw std::invalid_argument("vdkr_map_packing_to_is: packing mode/r mismatch");
    std::map<Clique, int> lookup;
    for (int i = 0; i < static_cast<int>(red.clique_of_vertex.size()); ++i)
        lookup[red.clique_of_vertex[static_cast<std::size_t>(i)]] = i;
    std::vector<int> s;
    for (const auto& c : p.cliques) {
        auto it = lookup.find(c);
        if (it == lookup.end())
            throw std::invalid_argument("vdkr_map_packing_to_is: clique is not a per-vertex clique of this reduction");
        s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("vdkr_map_packing_to_is: repeated clique");
    return s;
}

// ---------------------------------------------------------------------------
// MAX2SAT(3) -> edge-disjoint K_4 / K_5
// ---------------------------------------------------------------------------

namespace {

// Pending identification targets of one literal: the s/t pair inside the
// occurrence block assigned to it.
struct LiteralAnchor {
    int variable = 0;
    int occurrence = 0;
    bool positive = true;
    int s = 0, t = 0;
};

Clique sorted_clique(std::initializer_list<int> vs) {
    Clique c(vs);
    std::sort(c.begin(), c.end());
    return c;
}

void add_clique_edges(Graph& g, const Clique& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            g.add_edge(c[i], c[j]);
}

EdkReduction build_edk(const Formula& phi, int r) {
    std::string why;
    if (!phi.is_reduction_ready(&why))
        throw std::invalid_argument("reduce_max2sat3_to_edk" + std::to_string(r) +
                                    ": formula not reduction-ready: " + why);
    const auto m = phi.occurrence_counts();
    const int block = r == 4 ? 10 : 8;

    EdkReduction red;
    red.r = r;
    red.source = phi;
    red.gadgets.resize(static_cast<std::size_t>(phi.variable_count));
    int next = 0;
    for (int i = 0; i < phi.variable_count; ++i) {
        red.gadgets[static_cast<std::size_t>(i)].base = next;
        red.gadgets[static_cast<std::size_t>(i)].occurrences = m[static_cast<std::size_t>(i)];
        next += block * m[static_cast<std::size_t>(i)];
    }
    int fresh_total = 0;
    for (const auto& clause : phi.clauses)
        fresh_total += r == 4 ? (clause.size() == 2 ? 1 : 2) : (clause.size() == 2 ? 4 : 3);
    red.target = Graph(next + fresh_total);

    // Variable ring gadgets. Roles are fixed offsets inside each block; the
    // last clique of a block wraps into the following block (cyclically).
    static const char* roles4[10] = {"a", "b", "c", "d", "e", "h", "u", "v", "w", "y"};
    static const char* roles5[8] = {"a", "b", "c", "d", "e", "h", "u", "v"};
    for (int i = 0; i < phi.variable_count; ++i) {
        auto& gadget = red.gadgets[static_cast<std::size_t>(i)];
        const int mi = gadget.occurrences;
        auto vid = [&](int j, int role) { // j is 1-based and wraps mod m_i
            const int jj = (j - 1) % mi;
            return gadget.base + block * jj + role;
        };
        for (int j = 1; j <= mi; ++j)
            for (int role = 0; role < block; ++role)
                red.target.set_label(vid(j, role),
                                     std::string(r == 4 ? roles4[role] : roles5[role]) + "(" +
                                         std::to_string(i + 1) + "," + std::to_string(j) + ")");
        if (r == 4) {
            // offsets: a0 b1 c2 d3 e4 h5 u6 v7 w8 y9
            for (int j = 1; j <= mi; ++j) {
                const Clique even1 = sorted_clique({vid(j, 0), vid(j, 1), vid(j, 6), vid(j, 7)});
                const Clique odd1 = sorted_clique({vid(j, 0), vid(j, 1), vid(j, 2), vid(j, 7)});
                const Clique even2 = sorted_clique({vid(j, 2), vid(j, 7), vid(j, 3), vid(j, 8)});
                const Clique odd2 = sorted_clique({vid(j, 3), vid(j, 8), vid(j, 4), vid(j, 9)});
                const Clique even3 = sorted_clique({vid(j, 3), vid(j, 4), vid(j, 5), vid(j, 9)});
                const Clique odd3 =
                    sorted_clique({vid(j, 5), vid(j + 1, 0), vid(j, 9), vid(j + 1, 6)});
                for (const auto& c : {even1, odd1, even2, odd2, even3, odd3})
                    add_clique_edges(red.target, c);
                gadget.even_cliques.insert(gadget.even_cliques.end(), {even1, even2, even3});
                gadget.odd_cliques.insert(gadget.odd_cliques.end(), {odd1, odd2, odd3});
            }
        } else {
            // offsets: a0 b1 c2 d3 e4 h5 u6 v7
            for (int j = 1; j <= mi; ++j) {
                const Clique odd1 =
                    sorted_clique({vid(j, 0), vid(j, 1), vid(j, 4), vid(j, 6), vid(j, 7)});
                const Clique even1 =
                    sorted_clique({vid(j, 1), vid(j, 2), vid(j, 4), vid(j, 5), vid(j, 7)});
                const Clique odd2 =
                    sorted_clique({vid(j, 2), vid(j, 3), vid(j, 5), vid(j, 7), vid(j + 1, 6)});
                const Clique even2 = sorted_clique(
                    {vid(j, 3), vid(j + 1, 0), vid(j, 5), vid(j + 1, 4), vid(j + 1, 6)});
                for (const auto& c : {odd1, even1, odd2, even2})
                    add_clique_edges(red.target, c);
                gadget.even_cliques.insert(gadget.even_cliques.end(), {even1, even2});
                gadget.odd_cliques.insert(gadget.odd_cliques.end(), {odd1, odd2});
            }
        }
    }

    // Clause gadgets: anchor each literal at the next unused occurrence block
    // of its variable, then wire the clause cliques through those anchors.
    std::vector<int> occ_used(static_cast<std::size_t>(phi.variable_count), 0);
    int fresh = next;
    for (std::size_t cidx = 0; cidx < phi.clauses.size(); ++cidx) {
        const auto& clause = phi.clauses[cidx];
        EdkClauseGadget cg;
        std::vector<LiteralAnchor> anchors;
        for (const auto& lit : clause) {
            LiteralAnchor anchor;
            anchor.variable = lit.variable;
            anchor.positive = lit.positive;
            anchor.occurrence = ++occ_used[static_cast<std::size_t>(lit.variable)];
            const auto& gadget = red.gadgets[static_cast<std::size_t>(lit.variable)];
            const int base = gadget.base + block * (anchor.occurrence - 1);
            if (r == 4) { // positive literals anchor at (b, c), negative at (e, h)
                anchor.s = base + (lit.positive ? 1 : 4);
                anchor.t = base + (lit.positive ? 2 : 5);
            } else { // positive at (a, b), negative at (b, c)
                anchor.s = base + (lit.positive ? 0 : 1);
                anchor.t = base + (lit.positive ? 1 : 2);
            }
            anchors.push_back(anchor);
        }
        const std::string cl = std::to_string(cidx + 1);
        if (r == 4) {
            int s2;
            if (anchors.size() == 2) {
                s2 = anchors[1].s;
            } else {
                s2 = fresh++;
                red.target.set_label(s2, "s2(" + cl + ")");
                cg.fresh_vertices.push_back(s2);
            }
            const int w = fresh++;
            red.target.set_label(w, "w(" + cl + ")");
            cg.fresh_vertices.push_back(w);
            const Clique first = sorted_clique({anchors[0].s, anchors[0].t, s2, w});
            add_clique_edges(red.target, first);
            cg.cliques.push_back(
                {anchors[0].variable, anchors[0].occurrence, anchors[0].positive, 0, first});
            if (anchors.size() == 2) {
                const Clique second = sorted_clique({anchors[0].s, anchors[1].s, anchors[1].t, w});
                add_clique_edges(red.target, second);
                cg.cliques.push_back(
                    {anchors[1].variable, anchors[1].occurrence, anchors[1].positive, 1, second});
            }
        } else {
            const int wn = anchors.size() == 2 ? 4 : 3;
            std::vector<int> w;
            for (int k = 1; k <= wn; ++k) {
                w.push_back(fresh);
                red.target.set_label(fresh, "w" + std::to_string(k) + "(" + cl + ")");
                cg.fresh_vertices.push_back(fresh);
                ++fresh;
            }
            const Clique first = sorted_clique({anchors[0].s, anchors[0].t, w[0], w[1], w[2]});
            add_clique_edges(red.target, first);
            cg.cliques.push_back(
                {anchors[0].variable, anchors[0].occurrence, anchors[0].positive, 0, first});
            if (anchors.size() == 2) {
                const Clique second = sorted_clique({anchors[1].s, anchors[1].t, w[1], w[2], w[3]});
                add_clique_edges(red.target, second);
                cg.cliques.push_back(
                    {anchors[1].variable, anchors[1].occurrence, anchors[1].positive, 1, second});
            }
        }
        red.clause_gadgets.push_back(std::move(cg));
    }
    assert(fresh == red.target.vertex_count());
    return red;
}

} // namespace

EdkReduction reduce_max2sat3_to_edk4(const Formula& phi) { return build_edk(phi, 4); }
EdkReduction reduce_max2sat3_to_edk5(const Formula& phi) { return build_edk(phi, 5); }

Packing edk_assignment_to_packing(const EdkReduction& red, const Assignment& f) {
    if (static_cast<int>(f.values.size()) != red.source.variable_count)
        throw std::invalid_argument("edk_assignment_to_packing: assignment size mismatch");
    Packing out{Mode::edge, red.r, {}};
    for (std::size_t i = 0; i < red.gadgets.size(); ++i) {
        const auto& gadget = red.gadgets[i];
        const auto& list = f.values[i] ? gadget.even_cliques : gadget.odd_cliques;
        out.cliques.insert(out.cliques.end(), list.begin(), list.end());
    }
    for (const auto& cg : red.clause_gadgets)
        for (const auto& entry : cg.cliques)
            if (f.values[static_cast<std::size_t>(entry.variable)] == entry.positive) {
                out.cliques.push_back(entry.clique);
                break; // one clause clique per satisfied clause
            }
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

namespace {

struct CliqueInfo {
    enum Kind { even_ring, odd_ring, clause } kind = even_ring;
    int variable = -1; // ring cliques and clause cliques both anchor a variable
    int clause_index = -1;
    bool positive = false;
};

std::map<Clique, CliqueInfo> build_catalogue(const EdkReduction& red) {
    std::map<Clique, CliqueInfo> catalogue;
    for (int i = 0; i < static_cast<int>(red.gadgets.size()); ++i) {
        for (const auto& c : red.gadgets[static_cast<std::size_t>(i)].even_cliques)
            catalogue[c] = {CliqueInfo::even_ring, i, -1, false};
        for (const auto& c : red.gadgets[static_cast<std::size_t>(i)].odd_cliques)
            catalogue[c] = {CliqueInfo::odd_ring, i, -1, false};
    }
    for (int c = 0; c < static_cast<int>(red.clause_gadgets.size()); ++c)
        for (const auto& entry : red.clause_gadgets[static_cast<std::size_t>(c)].cliques)
            catalogue[entry.clique] = {CliqueInfo::clause, entry.variable, c, entry.positive};
    return catalogue;
}

} // namespace

Packing canonicalize_packing(const EdkReduction& red, const Packing& t) {
    if (t.mode != Mode::edge)
        throw std::invalid_argument("canonicalize_packing: packing must be edge-disjoint mode");
    if (t.r != red.r)
        throw std::invalid_argument("canonicalize_packing: packing r does not match the reduction");
    const auto catalogue = build_catalogue(red);
    for (const auto& c : t.cliques)
        if (!catalogue.count(c))
            throw std::invalid_argument("canonicalize_packing: clique not produced by this reduction");
    for (std::size_t i = 0; i < t.cliques.size(); ++i)
        for (std::size_t j = i + 1; j < t.cliques.size(); ++j)
            if (pairwise_overlap(t.cliques[i], t.cliques[j]) > 1)
                throw std::invalid_argument("canonicalize_packing: input packing is not edge-disjoint");

    std::set<Clique> result(t.cliques.begin(), t.cliques.end());
    for (int i = 0; i < static_cast<int>(red.gadgets.size()); ++i) {
        const auto& gadget = red.gadgets[static_cast<std::size_t>(i)];
        std::vector<Clique> evens_in, odds_in;
        for (const auto& c : gadget.even_cliques)
            if (result.count(c)) evens_in.push_back(c);
        for (const auto& c : gadget.odd_cliques)
            if (result.count(c)) odds_in.push_back(c);
        if (evens_in.size() == gadget.even_cliques.size()) continue;
        if (odds_in.size() == gadget.odd_cliques.size()) continue;
        std::vector<Clique> pos_ps, neg_ps;
        for (const auto& cg : red.clause_gadgets)
            for (const auto& entry : cg.cliques)
                if (entry.variable == i && result.count(entry.clique))
                    (entry.positive ? pos_ps : neg_ps).push_back(entry.clique);
        // With at most three occurrences a variable cannot have two packed
        // clause cliques of both polarities.
        if (pos_ps.size() <= 1) {
            for (const auto& c : pos_ps) result.erase(c);
            for (const auto& c : evens_in) result.erase(c);
            for (const auto& c : gadget.odd_cliques) result.insert(c);
        } else {
            assert(neg_ps.size() <= 1);
            for (const auto& c : neg_ps) result.erase(c);
            for (const auto& c : odds_in) result.erase(c);
            for (const auto& c : gadget.even_cliques) result.insert(c);
        }
    }
    Packing out{Mode::edge, red.r, {result.begin(), result.end()}};
    return out;
}

Assignment edk_packing_to_assignment(const EdkReduction& red, const Packing& t) {
    const Packing canon = canonicalize_packing(red, t);
    std::set<Clique> present(canon.cliques.begin(), canon.cliques.end());
    Assignment f;
    f.values.assign(static_cast<std::size_t>(red.source.variable_count), false);
    for (int i = 0; i < static_cast<int>(red.gadgets.size()); ++i) {
        const auto& gadget = red.gadgets[static_cast<std::size_t>(i)];
        bool all_even = true;
        for (const auto& c : gadget.even_cliques)
            if (!present.count(c)) { all_even = false; break; }
        f.values[static_cast<std::size_t>(i)] = all_even;
    }
    return f;
}

} // namespace kpack
