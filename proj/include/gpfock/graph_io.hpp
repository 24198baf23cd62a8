#ifndef GPFOCK_GRAPH_IO_HPP
#define GPFOCK_GRAPH_IO_HPP

#include <string>

#include <json.hpp>

#include "gpfock/graph.hpp"
#include "gpfock/graph_product.hpp"

namespace gpfock {

struct LabeledGraph {
    SimpleGraph graph;
    VertexLabels labels;  // may be empty
};

// {"vertices":[...],"edges":[["a","b"],...],"labels":{...}}; labels optional.
LabeledGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const SimpleGraph& g, const VertexLabels& labels = {});

// Minimal undirected DOT reader: "graph name { a -- b; c; }". Attribute lists
// are skipped; directed graphs, self-loops and duplicate edges are rejected.
LabeledGraph graph_from_dot(const std::string& text);

// Dispatches on content: inline JSON when the text starts with '{', DOT when
// it contains "graph"+"{", else a path (extension picks the format).
LabeledGraph load_graph_argument(const std::string& path_or_inline);

struct ConstructionDescriptor {
    LabeledGraph input;
    std::string s1;
    SubgroupSpec sub;
};

// {"graph":{...},"labels":{...},"s1":"v","k":2,"quotient":{"a":[2,1],...}}
// (labels may also sit inside "graph"); quotient permutations are 1-based.
ConstructionDescriptor construction_from_json(const nlohmann::json& j);
nlohmann::json construction_to_json(const ConstructionDescriptor& c);

std::string read_file(const std::string& path);

}  // namespace gpfock

#endif
