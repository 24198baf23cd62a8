#include "gpfock/graph.hpp"

#include <algorithm>
#include <numeric>

#include "gpfock/budget.hpp"

namespace gpfock {

SimpleGraph::SimpleGraph(std::vector<std::string> vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw input_error("duplicate vertex name");
    const int n = vertex_count();
    adj_.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) {
        const int i = vertex_index(a);
        const int j = vertex_index(b);
        if (i == j) throw input_error("self-loop rejected at vertex '" + a + "'");
        if (adj_[i][j]) throw input_error("duplicate edge {" + a + "," + b + "}");
        adj_[i][j] = adj_[j][i] = true;
        ++edge_count_;
    }
}

int SimpleGraph::vertex_index(const std::string& name) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end() || *it != name)
        throw input_error("vertex not in graph: '" + name + "'");
    return static_cast<int>(it - vertices_.begin());
}

std::optional<int> SimpleGraph::find_vertex(const std::string& name) const noexcept {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end() || *it != name) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

bool SimpleGraph::adjacent(const std::string& s, const std::string& t) const {
    return adj_[vertex_index(s)][vertex_index(t)];
}

int SimpleGraph::degree(int i) const {
    return static_cast<int>(std::count(adj_[i].begin(), adj_[i].end(), true));
}

std::vector<std::pair<std::string, std::string>> SimpleGraph::edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    const int n = vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj_[i][j]) out.emplace_back(vertices_[i], vertices_[j]);
    return out;
}

std::vector<int> link_indices(const SimpleGraph& g, int v) {
    std::vector<int> out;
    for (int j = 0; j < g.vertex_count(); ++j)
        if (g.adjacent(v, j)) out.push_back(j);
    return out;
}

VertexSet link(const SimpleGraph& g, const std::string& s) {
    VertexSet out;
    for (int j : link_indices(g, g.vertex_index(s))) out.push_back(g.vertex_name(j));
    return out;
}

VertexSet star(const SimpleGraph& g, const std::string& s) {
    VertexSet out = link(g, s);
    out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet link_of_set(const SimpleGraph& g, const VertexSet& set) {
    if (set.empty()) return g.vertices();
    std::vector<bool> common(g.vertex_count(), true);
    for (const auto& u : set) {
        const int ui = g.vertex_index(u);
        for (int j = 0; j < g.vertex_count(); ++j)
            if (!g.adjacent(ui, j)) common[j] = false;
    }
    VertexSet out;
    for (int j = 0; j < g.vertex_count(); ++j)
        if (common[j]) out.push_back(g.vertex_name(j));
    return out;
}

RigidityReport is_rigid(const SimpleGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        const VertexSet second = link_of_set(g, link(g, g.vertex_name(v)));
        if (second.size() != 1 || second[0] != g.vertex_name(v))
            return RigidityReport{false, g.vertex_name(v), second};
    }
    return RigidityReport{};
}

SimpleGraph induced_subgraph(const SimpleGraph& g, const VertexSet& keep) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        const int i = g.vertex_index(keep[a]);
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            if (g.adjacent(i, g.vertex_index(keep[b]))) edges.emplace_back(keep[a], keep[b]);
    }
    return SimpleGraph(keep, edges);
}

namespace {

bool extend_mapping(const SimpleGraph& a, const SimpleGraph& b, int next,
                    std::vector<int>& map_ab, std::vector<bool>& used,
                    const std::vector<bool>& candidate) {
    const int n = a.vertex_count();
    if (next == n) return true;
    for (int t = 0; t < n; ++t) {
        if (used[t] || !candidate[next * n + t]) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev)
            if (a.adjacent(prev, next) != b.adjacent(map_ab[prev], t)) ok = false;
        if (!ok) continue;
        map_ab[next] = t;
        used[t] = true;
        if (extend_mapping(a, b, next + 1, map_ab, used, candidate)) return true;
        used[t] = false;
    }
    return false;
}

}  // namespace

std::optional<std::map<std::string, std::string>> graphs_isomorphic(
    const SimpleGraph& a, const SimpleGraph& b,
    const VertexLabels* labels_a, const VertexLabels* labels_b, int max_vertices) {
    if (a.vertex_count() > max_vertices || b.vertex_count() > max_vertices)
        throw input_error("graph too large for exhaustive search");
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return std::nullopt;

    const int n = a.vertex_count();
    auto label_of = [](const VertexLabels* labels, const std::string& v) -> std::string {
        if (!labels) return {};
        auto it = labels->find(v);
        return it == labels->end() ? std::string{} : it->second;
    };

    std::vector<int> deg_a(n), deg_b(n);
    for (int i = 0; i < n; ++i) {
        deg_a[i] = a.degree(i);
        deg_b[i] = b.degree(i);
    }
    auto sorted_a = deg_a, sorted_b = deg_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return std::nullopt;

    std::vector<bool> candidate(static_cast<std::size_t>(n) * n, false);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            candidate[s * n + t] =
                deg_a[s] == deg_b[t] &&
                label_of(labels_a, a.vertex_name(s)) == label_of(labels_b, b.vertex_name(t));

    std::vector<int> map_ab(n, -1);
    std::vector<bool> used(n, false);
    if (!extend_mapping(a, b, 0, map_ab, used, candidate)) return std::nullopt;

    std::map<std::string, std::string> out;
    for (int s = 0; s < n; ++s) out[a.vertex_name(s)] = b.vertex_name(map_ab[s]);
    return out;
}

}  // namespace gpfock
