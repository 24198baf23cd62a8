#ifndef GPFOCK_GRAPH_HPP
#define GPFOCK_GRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gpfock {

// Sorted, duplicate-free list of vertex names.
using VertexSet = std::vector<std::string>;

using VertexLabels = std::map<std::string, std::string>;

// Finite simple graph: symmetric, irreflexive adjacency on named vertices.
// Vertices are kept sorted by name; all set-valued query results are sorted.
class SimpleGraph {
public:
    SimpleGraph() = default;
    SimpleGraph(std::vector<std::string> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return edge_count_; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_name(int i) const { return vertices_.at(i); }

    // Index of a named vertex; throws input_error for unknown names.
    int vertex_index(const std::string& name) const;
    std::optional<int> find_vertex(const std::string& name) const noexcept;

    bool adjacent(int i, int j) const { return adj_[i][j]; }
    bool adjacent(const std::string& s, const std::string& t) const;
    int degree(int i) const;

    // Edges as sorted pairs (lexicographic within and across pairs).
    std::vector<std::pair<std::string, std::string>> edges() const;

    bool operator==(const SimpleGraph& other) const = default;

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<bool>> adj_;
    int edge_count_ = 0;
};

// Neighbors of s, excluding s itself.
VertexSet link(const SimpleGraph& g, const std::string& s);

// {s} together with its neighbors.
VertexSet star(const SimpleGraph& g, const std::string& s);

// Intersection of links over a vertex set; the empty intersection is the
// full vertex set.
VertexSet link_of_set(const SimpleGraph& g, const VertexSet& set);

std::vector<int> link_indices(const SimpleGraph& g, int v);

struct RigidityReport {
    bool rigid = true;
    // On failure: a vertex s and link(link s), which then differs from {s}.
    std::string witness;
    VertexSet second_link;
};

// A graph is rigid when link(link s) = {s} for every vertex s.
RigidityReport is_rigid(const SimpleGraph& g);

SimpleGraph induced_subgraph(const SimpleGraph& g, const VertexSet& keep);

// Exhaustive label-preserving isomorphism search with degree pruning.
// Returns the lexicographically least mapping (by source vertex order) if one
// exists. Graphs above max_vertices are rejected with input_error.
std::optional<std::map<std::string, std::string>> graphs_isomorphic(
    const SimpleGraph& a, const SimpleGraph& b,
    const VertexLabels* labels_a = nullptr, const VertexLabels* labels_b = nullptr,
    int max_vertices = 12);

}  // namespace gpfock

#endif
