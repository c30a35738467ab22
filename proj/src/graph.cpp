#include "kpack/graph.hpp"

#include "kpack/errors.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kpack {

Graph::Graph(int n) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    adj_.resize(static_cast<std::size_t>(n));
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        g.check_vertex(u);
        g.check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("duplicate edge in edge list");
    }
    return g;
}

int Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : adj_) twice += nb.size();
    return static_cast<int>(twice / 2);
}

int Graph::degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return false;
    nu.insert(it, v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    return true;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::set_label(int v, std::string text) {
    check_vertex(v);
    if (labels_.empty()) labels_.resize(adj_.size());
    labels_[static_cast<std::size_t>(v)] = std::move(text);
}

const std::string& Graph::label(int v) const {
    check_vertex(v);
    static const std::string empty;
    if (labels_.empty()) return empty;
    return labels_[static_cast<std::size_t>(v)];
}

int max_degree(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
    return best;
}

namespace {

// First common neighbor of two sorted lists, or -1.
int common_neighbor(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return a[i];
        if (a[i] < b[j]) ++i; else ++j;
    }
    return -1;
}

// Uniform draw in [0, bound); the standard distributions are not pinned
// across library implementations, the raw engine stream is.
std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

} // namespace

bool is_triangle_free(const Graph& g) {
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v && common_neighbor(g.neighbors(u), g.neighbors(v)) >= 0)
                return false;
    return true;
}

Graph identify_vertices(const Graph& g, int a, int b) {
    if (a == b) throw std::invalid_argument("identify_vertices: the vertices must be distinct");
    if (g.has_edge(a, b)) throw std::invalid_argument("identify_vertices: the vertices must be non-adjacent");
    const int lo = std::min(a, b), hi = std::max(a, b);
    auto remap = [&](int v) {
        if (v == hi) return lo;
        return v > hi ? v - 1 : v;
    };
    Graph out(g.vertex_count() - 1);
    for (auto [u, v] : g.edges()) out.add_edge(remap(u), remap(v));
    return out;
}

Graph append_disconnected_star(const Graph& g, int leaf_count) {
    if (leaf_count < 1) throw std::invalid_argument("append_disconnected_star: leaf_count must be >= 1");
    Graph out = Graph(g.vertex_count() + 1 + leaf_count);
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    if (g.has_labels())
        for (int v = 0; v < g.vertex_count(); ++v) out.set_label(v, g.label(v));
    const int hub = g.vertex_count();
    for (int k = 1; k <= leaf_count; ++k) out.add_edge(hub, hub + k);
    return out;
}

Graph gen_triangle_free_cubic(int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    Graph g(n);
    if (n < 2) return g;
    std::mt19937_64 rng(seed);
    const long long attempts = 30LL * n * n;
    for (long long t = 0; t < attempts; ++t) {
        int u = static_cast<int>(next_below(rng, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(next_below(rng, static_cast<std::uint64_t>(n)));
        if (u == v || g.degree(u) >= 3 || g.degree(v) >= 3) continue;
        if (g.has_edge(u, v)) continue;
        if (common_neighbor(g.neighbors(u), g.neighbors(v)) >= 0) continue;
        g.add_edge(u, v);
    }
    return g;
}

Graph gen_bounded_degree(int n, int dmax, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    if (dmax < 0) throw std::invalid_argument("dmax must be nonnegative");
    Graph g(n);
    if (n < 2 || dmax == 0) return g;
    std::mt19937_64 rng(seed);
    // Density varies per seed: aim for a uniformly drawn edge count.
    const std::uint64_t cap = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(dmax) / 2;
    const std::uint64_t goal = next_below(rng, cap + 1);
    const long long attempts = 20LL * n * (dmax + 1);
    for (long long t = 0; t < attempts && static_cast<std::uint64_t>(g.edge_count()) < goal; ++t) {
        int u = static_cast<int>(next_below(rng, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(next_below(rng, static_cast<std::uint64_t>(n)));
        if (u == v || g.degree(u) >= dmax || g.degree(v) >= dmax) continue;
        if (g.has_edge(u, v)) continue;
        g.add_edge(u, v);
    }
    return g;
}

Graph read_dimacs(std::istream& in) {
    std::string line;
    int n = -1;
    long long m = -1, seen = 0;
    Graph g;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue; // blank
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) throw parse_error("line " + std::to_string(lineno) + ": repeated problem line");
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0 || m < 0)
                throw parse_error("line " + std::to_string(lineno) + ": expected 'p edge <n> <m>'");
            g = Graph(n);
            continue;
        }
        if (tag == "e") {
            if (n < 0) throw parse_error("line " + std::to_string(lineno) + ": edge before problem line");
            int u = 0, v = 0;
            if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
                throw parse_error("line " + std::to_string(lineno) + ": bad edge endpoints");
            if (u == v) throw parse_error("line " + std::to_string(lineno) + ": self-loop");
            if (!g.add_edge(u - 1, v - 1))
                throw parse_error("line " + std::to_string(lineno) + ": duplicate edge");
            ++seen;
            continue;
        }
        throw parse_error("line " + std::to_string(lineno) + ": unknown line type '" + tag + "'");
    }
    if (n < 0) throw parse_error("missing 'p edge' problem line");
    if (seen != m)
        throw parse_error("edge count mismatch: header says " + std::to_string(m) +
                          ", file has " + std::to_string(seen));
    return g;
}

Graph read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return read_dimacs(in);
}

void write_dimacs(const Graph& g, std::ostream& out) {
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void write_dimacs_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_dimacs(g, out);
}

} // namespace kpack
