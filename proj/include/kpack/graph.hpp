#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kpack {

// Simple undirected graph over dense 0-based vertex ids. Neighbor lists are
// kept sorted ascending; self-loops and parallel edges are rejected. Graphs
// are treated as immutable once construction finishes; the mutating helpers
// are single-threaded construction aids.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    // Bulk constructor; sorts the lists once. Duplicate edges are an error.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    int degree(int v) const;
    const std::vector<int>& neighbors(int v) const;
    bool has_edge(int u, int v) const;

    // Inserts keeping lists sorted; returns false if the edge already exists.
    bool add_edge(int u, int v);

    // All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    // Optional per-vertex role annotations (used by the gadget builders).
    void set_label(int v, std::string text);
    const std::string& label(int v) const;
    bool has_labels() const { return !labels_.empty(); }

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(int v) const;

    std::vector<std::vector<int>> adj_;
    std::vector<std::string> labels_; // empty or vertex_count() entries
};

int max_degree(const Graph& g);
bool is_triangle_free(const Graph& g);

// Merges two distinct non-adjacent vertices. The merged vertex takes the
// smaller of the two ids and every id above the larger one shifts down by
// one, so ids stay dense. Labels are dropped.
Graph identify_vertices(const Graph& g, int a, int b);

// Appends a hub plus leaf_count >= 1 leaves, disconnected from the rest.
Graph append_disconnected_star(const Graph& g, int leaf_count);

// Random generators, deterministic per seed. Both work by random edge
// insertion with rejection of degree-violating (and for the first one,
// triangle-creating) pairs.
Graph gen_triangle_free_cubic(int n, std::uint64_t seed);
Graph gen_bounded_degree(int n, int dmax, std::uint64_t seed);

// DIMACS edge format: "p edge <n> <m>" header, then "e <u> <v>" lines with
// 1-based endpoints. The reader rejects self-loops and duplicate edges; the
// writer emits edges sorted.
Graph read_dimacs(std::istream& in);
Graph read_dimacs_file(const std::string& path);
void write_dimacs(const Graph& g, std::ostream& out);
void write_dimacs_file(const Graph& g, const std::string& path);

} // namespace kpack
