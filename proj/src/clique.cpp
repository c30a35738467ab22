#include "kpack/clique.hpp"

#include "kpack/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kpack {

const char* to_string(Mode m) {
    return m == Mode::vertex ? "vertex" : "edge";
}

Mode mode_from_string(const std::string& s) {
    if (s == "vertex") return Mode::vertex;
    if (s == "edge") return Mode::edge;
    throw std::invalid_argument("unknown mode '" + s + "' (expected vertex or edge)");
}

int pairwise_overlap(const Clique& a, const Clique& b) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++count; ++i; ++j; }
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return count;
}

bool cliques_compatible(const Clique& a, const Clique& b, Mode mode) {
    const int limit = mode == Mode::vertex ? 0 : 1;
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            if (++count > limit) return false;
            ++i; ++j;
        } else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return true;
}

namespace {

void extend_cliques(const Graph& g, int r, Clique& current,
                    const std::vector<int>& candidates, std::vector<Clique>& out) {
    if (static_cast<int>(current.size()) == r) {
        out.push_back(current);
        return;
    }
    const int missing = r - static_cast<int>(current.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (static_cast<int>(candidates.size() - i) < missing) break;
        const int u = candidates[i];
        std::vector<int> next;
        const auto& nb = g.neighbors(u);
        // candidates beyond i intersected with the neighbors of u
        std::size_t a = i + 1, b = 0;
        while (a < candidates.size() && b < nb.size()) {
            if (candidates[a] == nb[b]) { next.push_back(candidates[a]); ++a; ++b; }
            else if (candidates[a] < nb[b]) ++a;
            else ++b;
        }
        current.push_back(u);
        extend_cliques(g, r, current, next, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Clique> enumerate_krs(const Graph& g, int r) {
    if (r < 2) throw std::invalid_argument("enumerate_krs: r must be >= 2");
    std::vector<Clique> out;
    Clique current;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& nb = g.neighbors(v);
        std::vector<int> candidates;
        for (int u : nb)
            if (u > v) candidates.push_back(u);
        current.push_back(v);
        extend_cliques(g, r, current, candidates, out);
        current.pop_back();
    }
    return out; // lexicographic by construction
}

IntersectionGraph build_intersection_graph(const Graph& g, int r, Mode mode) {
    IntersectionGraph ig;
    ig.mode = mode;
    ig.r = r;
    ig.cliques = enumerate_krs(g, r);
    const int threshold = mode == Mode::vertex ? 1 : 2;
    const int m = static_cast<int>(ig.cliques.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (pairwise_overlap(ig.cliques[i], ig.cliques[j]) >= threshold)
                edges.emplace_back(i, j);
    ig.skeleton = Graph::from_edges(m, edges);
    return ig;
}

namespace {

// Adjacency as packed bit rows; keeps the claw scan usable on dense
// intersection graphs where per-center triple loops blow up.
struct BitMatrix {
    int n = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;

    explicit BitMatrix(const Graph& g)
        : n(g.vertex_count()), words((static_cast<std::size_t>(n) + 63) / 64),
          bits(words * static_cast<std::size_t>(n), 0) {
        for (int v = 0; v < n; ++v)
            for (int u : g.neighbors(v)) set(v, u);
    }
    void set(int v, int u) {
        bits[static_cast<std::size_t>(v) * words + static_cast<std::size_t>(u) / 64] |=
            std::uint64_t{1} << (u % 64);
    }
    const std::uint64_t* row(int v) const {
        return bits.data() + static_cast<std::size_t>(v) * words;
    }
};

// Lowest member of (row_s and not row_a and not row_b) strictly above `from`.
int first_nonneighbor_above(const BitMatrix& adj, const std::uint64_t* row_s,
                            const std::uint64_t* row_a, const std::uint64_t* row_b,
                            int from) {
    const std::size_t words = adj.words;
    std::size_t w = static_cast<std::size_t>(from + 1) / 64;
    for (; w < words; ++w) {
        std::uint64_t word = row_s[w] & ~row_a[w] & ~row_b[w];
        if (w == static_cast<std::size_t>(from + 1) / 64) {
            const int shift = (from + 1) % 64;
            word &= shift == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} << shift);
        }
        if (word) return static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word)));
    }
    return -1;
}

} // namespace

std::optional<ClawWitness> find_claw(const Graph& h) {
    const int n = h.vertex_count();
    if (n == 0) return std::nullopt;
    BitMatrix adj(h);
    std::vector<std::uint64_t> in_nb(adj.words);
    for (int c = 0; c < n; ++c) {
        const auto& nb = h.neighbors(c);
        if (static_cast<int>(nb.size()) < 3) continue;
        std::fill(in_nb.begin(), in_nb.end(), 0);
        for (int u : nb) in_nb[static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
        for (std::size_t i = 0; i + 2 < nb.size(); ++i) {
            const int a = nb[i];
            const std::uint64_t* row_a = adj.row(a);
            // second leaf: neighborhood members above a, non-adjacent to a
            for (std::size_t j = i + 1; j + 1 < nb.size(); ++j) {
                const int b = nb[j];
                if (row_a[static_cast<std::size_t>(b) / 64] & (std::uint64_t{1} << (b % 64))) continue;
                const int w = first_nonneighbor_above(adj, in_nb.data(), row_a, adj.row(b), b);
                if (w >= 0) return ClawWitness{c, a, b, w};
            }
        }
    }
    return std::nullopt;
}

std::optional<ClawWitness> find_claw(const IntersectionGraph& h) {
    return find_claw(h.skeleton);
}

void write_clique_list(const std::vector<Clique>& cliques, std::ostream& out) {
    for (const auto& c : cliques) {
        out << 'k';
        for (int v : c) out << ' ' << v + 1;
        out << '\n';
    }
}

void write_clique_list_file(const std::vector<Clique>& cliques, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_clique_list(cliques, out);
}

std::vector<Clique> read_clique_list(std::istream& in) {
    std::vector<Clique> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag != "k") throw parse_error("line " + std::to_string(lineno) + ": expected 'k' record");
        Clique c;
        int v = 0;
        while (ls >> v) {
            if (v < 1) throw parse_error("line " + std::to_string(lineno) + ": vertex ids are 1-based");
            c.push_back(v - 1);
        }
        if (c.empty()) throw parse_error("line " + std::to_string(lineno) + ": empty clique");
        if (!std::is_sorted(c.begin(), c.end()) ||
            std::adjacent_find(c.begin(), c.end()) != c.end())
            throw parse_error("line " + std::to_string(lineno) + ": vertices must be strictly increasing");
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Clique> read_clique_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return read_clique_list(in);
}

} // namespace kpack
