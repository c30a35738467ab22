#include "kpack/packing.hpp"

#include "kpack/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>

namespace kpack {

const char* to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::LinearTime: return "LinearTime";
        case RegimeTag::PolyVertexClawFree: return "PolyVertexClawFree";
        case RegimeTag::PolyEdgeClawFree: return "PolyEdgeClawFree";
        case RegimeTag::ApxHard: return "ApxHard";
    }
    return "?";
}

bool is_valid_packing(const Graph& g, const Packing& p) {
    for (const auto& c : p.cliques) {
        if (static_cast<int>(c.size()) != p.r) return false;
        if (!std::is_sorted(c.begin(), c.end())) return false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= g.vertex_count()) return false;
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!g.has_edge(c[i], c[j])) return false;
        }
    }
    for (std::size_t i = 0; i < p.cliques.size(); ++i)
        for (std::size_t j = i + 1; j < p.cliques.size(); ++j)
            if (!cliques_compatible(p.cliques[i], p.cliques[j], p.mode)) return false;
    return true;
}

Regime classify_regime(int r, int delta, Mode mode) {
    if (r < 3) throw std::invalid_argument("classify_regime: r must be >= 3");
    if (delta < 0) throw std::invalid_argument("classify_regime: Delta must be nonnegative");
    // All comparisons in integers: Delta < 3r/2 - 1 iff 2*Delta < 3r - 2,
    // Delta < 5r/3 - 1 iff 3*Delta < 5r - 3.
    const int linear_max = (3 * r - 3) / 2;   // largest Delta with 2*Delta < 3r-2
    const int clawfree_max = (5 * r - 4) / 3; // largest Delta with 3*Delta < 5r-3
    Regime out;
    if (mode == Mode::edge && r <= 5) {
        const int edge_max = 2 * r - 2;
        out.threshold_note = "edge mode, r=" + std::to_string(r) +
                             ": linear for Delta <= " + std::to_string(linear_max) +
                             ", poly (edge-claw-free) for Delta <= " + std::to_string(edge_max) +
                             ", apx-hard for Delta >= " + std::to_string(edge_max + 1);
        if (2 * delta < 3 * r - 2) out.tag = RegimeTag::LinearTime;
        else if (delta <= edge_max) out.tag = RegimeTag::PolyEdgeClawFree;
        else out.tag = RegimeTag::ApxHard;
        return out;
    }
    out.threshold_note = std::string(mode == Mode::edge ? "edge mode (r >= 6), r=" : "vertex mode, r=") +
                         std::to_string(r) +
                         ": linear for Delta <= " + std::to_string(linear_max) +
                         ", poly (vertex-claw-free) for Delta <= " + std::to_string(clawfree_max) +
                         ", apx-hard for Delta >= " + std::to_string(clawfree_max + 1);
    if (2 * delta < 3 * r - 2) out.tag = RegimeTag::LinearTime;
    else if (3 * delta < 5 * r - 3) out.tag = RegimeTag::PolyVertexClawFree;
    else out.tag = RegimeTag::ApxHard;
    return out;
}

namespace {

// Tracks which vertices/edges the packing occupies for O(r^2) addability.
struct UsageMap {
    Mode mode;
    std::vector<char> used_vertex;
    std::unordered_set<long long> used_edge;
    int n;

    UsageMap(const Graph& g, Mode m) : mode(m), used_vertex(g.vertex_count(), 0), n(g.vertex_count()) {}

    long long edge_key(int u, int v) const { return static_cast<long long>(u) * n + v; }

    bool addable(const Clique& c) const {
        if (mode == Mode::vertex) {
            for (int v : c)
                if (used_vertex[static_cast<std::size_t>(v)]) return false;
            return true;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (used_edge.count(edge_key(c[i], c[j]))) return false;
        return true;
    }

    void add(const Clique& c) {
        if (mode == Mode::vertex) {
            for (int v : c) used_vertex[static_cast<std::size_t>(v)] = 1;
            return;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                used_edge.insert(edge_key(c[i], c[j]));
    }
};

} // namespace

Packing greedy_maximal_packing(const Graph& g, int r, Mode mode) {
    const auto cliques = enumerate_krs(g, r);
    Packing out{mode, r, {}};
    UsageMap usage(g, mode);
    std::vector<char> in_closed(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        in_closed[static_cast<std::size_t>(v)] = 1;
        for (int u : g.neighbors(v)) in_closed[static_cast<std::size_t>(u)] = 1;
        for (const auto& c : cliques) {
            bool inside = true;
            for (int u : c)
                if (!in_closed[static_cast<std::size_t>(u)]) { inside = false; break; }
            if (!inside || !usage.addable(c)) continue;
            usage.add(c);
            out.cliques.push_back(c);
        }
        in_closed[static_cast<std::size_t>(v)] = 0;
        for (int u : g.neighbors(v)) in_closed[static_cast<std::size_t>(u)] = 0;
    }
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

namespace {

// Maximum independent set in the conflict graph of the clique list, by
// include-first branching on the lowest-index candidate with a greedy
// clique-cover upper bound. First optimum reached is the lexicographically
// least one, and only strictly larger incumbents replace it.
struct PackingSearch {
    int m = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> conflict; // m rows
    std::vector<int> chosen, best;
    SolveStats stats;

    const std::uint64_t* row(int v) const { return conflict.data() + static_cast<std::size_t>(v) * words; }

    int cover_bound(const std::vector<std::uint64_t>& cand) const {
        std::vector<std::vector<std::uint64_t>> common; // per class: common conflicts
        int classes = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = cand[w];
            while (word) {
                const int v = static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word)));
                word &= word - 1;
                bool placed = false;
                for (auto& cls : common) {
                    if (cls[static_cast<std::size_t>(v) / 64] & (std::uint64_t{1} << (v % 64))) {
                        const std::uint64_t* rv = row(v);
                        for (std::size_t k = 0; k < words; ++k) cls[k] &= rv[k];
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    common.emplace_back(row(v), row(v) + words);
                    ++classes;
                }
            }
        }
        return classes;
    }

    void dfs(std::vector<std::uint64_t> cand) {
        for (;;) {
            ++stats.nodes;
            int v = -1;
            for (std::size_t w = 0; w < words; ++w)
                if (cand[w]) { v = static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(cand[w]))); break; }
            if (v < 0) {
                if (chosen.size() > best.size()) best = chosen;
                return;
            }
            if (static_cast<int>(chosen.size()) + cover_bound(cand) <= static_cast<int>(best.size())) {
                ++stats.bound_prunes;
                return;
            }
            std::vector<std::uint64_t> next(cand);
            const std::uint64_t* rv = row(v);
            for (std::size_t w = 0; w < words; ++w) next[w] &= ~rv[w];
            next[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
            chosen.push_back(v);
            dfs(std::move(next));
            chosen.pop_back();
            cand[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }
};

} // namespace

Packing exact_max_packing(const Graph& g, int r, Mode mode, int max_cliques, SolveStats* stats) {
    const auto cliques = enumerate_krs(g, r);
    if (static_cast<int>(cliques.size()) > max_cliques)
        throw guard_error("exact_max_packing: " + std::to_string(cliques.size()) +
                          " cliques exceed the guard of " + std::to_string(max_cliques));
    PackingSearch search;
    search.m = static_cast<int>(cliques.size());
    search.words = (static_cast<std::size_t>(search.m) + 63) / 64;
    search.conflict.assign(search.words * static_cast<std::size_t>(search.m), 0);
    for (int i = 0; i < search.m; ++i)
        for (int j = i + 1; j < search.m; ++j)
            if (!cliques_compatible(cliques[static_cast<std::size_t>(i)],
                                    cliques[static_cast<std::size_t>(j)], mode)) {
                search.conflict[static_cast<std::size_t>(i) * search.words + static_cast<std::size_t>(j) / 64] |=
                    std::uint64_t{1} << (j % 64);
                search.conflict[static_cast<std::size_t>(j) * search.words + static_cast<std::size_t>(i) / 64] |=
                    std::uint64_t{1} << (i % 64);
            }
    std::vector<std::uint64_t> all(search.words, 0);
    for (int i = 0; i < search.m; ++i)
        all[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    if (search.m > 0) search.dfs(std::move(all));
    Packing out{mode, r, {}};
    for (int i : search.best) out.cliques.push_back(cliques[static_cast<std::size_t>(i)]);
    if (stats) *stats = search.stats;
    return out;
}

namespace {

bool pick_insertions(const std::vector<const Clique*>& addable, std::size_t start, int need,
                     std::vector<const Clique*>& current, Mode mode) {
    if (need == 0) return true;
    for (std::size_t i = start; i < addable.size(); ++i) {
        if (static_cast<int>(addable.size() - i) < need) return false;
        bool fits = true;
        for (const Clique* c : current)
            if (!cliques_compatible(*c, *addable[i], mode)) { fits = false; break; }
        if (!fits) continue;
        current.push_back(addable[i]);
        if (pick_insertions(addable, i + 1, need - 1, current, mode)) return true;
        current.pop_back();
    }
    return false;
}

// First improving swap in deterministic scan order: removal size ascending,
// removed subsets in lexicographic index order, insertions lexicographic.
bool improve_once(std::vector<Clique>& packing, const std::vector<Clique>& universe,
                  Mode mode, int swap_size) {
    const int t = std::min<int>(swap_size, static_cast<int>(packing.size()));
    for (int s = 0; s <= t; ++s) {
        std::vector<int> idx(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<const Clique*> rest;
            for (int i = 0; i < static_cast<int>(packing.size()); ++i)
                if (!std::binary_search(idx.begin(), idx.end(), i))
                    rest.push_back(&packing[static_cast<std::size_t>(i)]);
            std::vector<const Clique*> addable;
            for (const auto& c : universe) {
                bool ok = true;
                for (const Clique* p : rest) {
                    if (*p == c) { ok = false; break; }
                    if (!cliques_compatible(*p, c, mode)) { ok = false; break; }
                }
                if (ok) addable.push_back(&c);
            }
            std::vector<const Clique*> insert;
            if (pick_insertions(addable, 0, s + 1, insert, mode)) {
                std::vector<Clique> next;
                for (const Clique* p : rest) next.push_back(*p);
                for (const Clique* p : insert) next.push_back(*p);
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                if (next.size() > packing.size()) {
                    packing = std::move(next);
                    return true;
                }
            }
            // advance the removal combination
            if (s == 0) break;
            int pos = s - 1;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] == static_cast<int>(packing.size()) - s + pos)
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int q = pos + 1; q < s; ++q)
                idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
        }
    }
    return false;
}

} // namespace

Packing local_improvement_packing(const Graph& g, int r, Mode mode, int swap_size) {
    if (swap_size < 0) throw std::invalid_argument("local_improvement_packing: swap_size must be >= 0");
    const auto universe = enumerate_krs(g, r);
    Packing out = greedy_maximal_packing(g, r, mode);
    while (improve_once(out.cliques, universe, mode, swap_size)) {}
    return out;
}

double local_improvement_ratio_bound(int r, Mode mode, int swap_size) {
    const double k = mode == Mode::vertex ? r : r * (r - 1) / 2.0;
    if (swap_size <= 0) return k; // plain maximality
    return (k + 1.0 / swap_size) / 2.0;
}

bool check_disjointness_coincidence(const Graph& g, int r) {
    if (r < 2) throw std::invalid_argument("check_disjointness_coincidence: r must be >= 2");
    if (max_degree(g) >= 2 * r - 2)
        throw std::invalid_argument("check_disjointness_coincidence: requires max degree < 2r-2, got " +
                                    std::to_string(max_degree(g)));
    const auto cliques = enumerate_krs(g, r);
    for (std::size_t i = 0; i < cliques.size(); ++i)
        for (std::size_t j = i + 1; j < cliques.size(); ++j)
            if (pairwise_overlap(cliques[i], cliques[j]) == 1) return false;
    return true;
}

namespace {

int mis_recurse(std::uint64_t live, const std::vector<std::uint64_t>& closed) {
    if (!live) return 0;
    const int v = __builtin_ctzll(live);
    const int with_v = 1 + mis_recurse(live & ~closed[static_cast<std::size_t>(v)], closed);
    const int without_v = mis_recurse(live & (live - 1), closed);
    return std::max(with_v, without_v);
}

} // namespace

int brute_force_max_independent_set(const Graph& g, int guard_vertices) {
    const int n = g.vertex_count();
    if (n > guard_vertices || n > 63)
        throw guard_error("brute_force_max_independent_set: " + std::to_string(n) +
                          " vertices exceed the guard of " +
                          std::to_string(std::min(guard_vertices, 63)));
    std::vector<std::uint64_t> closed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        closed[static_cast<std::size_t>(v)] = std::uint64_t{1} << v;
        for (int u : g.neighbors(v)) closed[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
    const std::uint64_t all = n == 0 ? 0 : (n == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << n) - 1);
    return mis_recurse(all, closed);
}

std::string packing_to_json(const Packing& p) {
    nlohmann::json j;
    j["mode"] = to_string(p.mode);
    j["r"] = p.r;
    j["size"] = p.size();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.cliques) {
        nlohmann::json one = nlohmann::json::array();
        for (int v : c) one.push_back(v + 1);
        arr.push_back(std::move(one));
    }
    j["cliques"] = std::move(arr);
    return j.dump(2);
}

Packing packing_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad packing JSON: ") + e.what());
    }
    Packing p;
    try {
        try {
            p.mode = mode_from_string(j.at("mode").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what());
        }
        p.r = j.at("r").get<int>();
        for (const auto& one : j.at("cliques")) {
            Clique c;
            for (const auto& v : one) {
                const int id = v.get<int>();
                if (id < 1) throw parse_error("packing JSON uses 1-based vertex ids");
                c.push_back(id - 1);
            }
            if (static_cast<int>(c.size()) != p.r)
                throw parse_error("packing JSON clique arity disagrees with r");
            if (!std::is_sorted(c.begin(), c.end()) ||
                std::adjacent_find(c.begin(), c.end()) != c.end())
                throw parse_error("packing JSON cliques must be strictly increasing");
            p.cliques.push_back(std::move(c));
        }
        if (j.at("size").get<int>() != p.size())
            throw parse_error("packing JSON size field disagrees with the clique list");
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad packing JSON: ") + e.what());
    }
    return p;
}

} // namespace kpack
