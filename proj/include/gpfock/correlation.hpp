#ifndef GPFOCK_CORRELATION_HPP
#define GPFOCK_CORRELATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpfock/graph.hpp"

namespace gpfock {

// Symbolic class label of a factor; equality of labels is the only relation
// this module models.
using FactorClassLabel = std::string;

// Multiset of class labels, kept sorted.
using TensorSignature = std::vector<FactorClassLabel>;

// Multiset, over the vertices of a labeled graph, of the signatures of their
// links; kept sorted.
using LinkInvariant = std::vector<TensorSignature>;

// Signature of link s for every vertex s. Defined only for rigid graphs;
// every vertex must be labeled.
LinkInvariant link_invariant(const SimpleGraph& g,
                             const std::map<std::string, FactorClassLabel>& labels);

// Disjoint union of complete graphs, one component of each given size;
// vertices are named "<size>.<position>".
SimpleGraph disjoint_complete_graphs(const std::vector<int>& sizes);

struct GfVerdict {
    bool distinguished = false;
    std::string verdict;  // "not W*-correlated" or "indistinguishable by this invariant"
    LinkInvariant invariant_a;
    LinkInvariant invariant_b;
};

// Compares the link invariants of the unions of complete graphs indexed by
// two sets of integers >= 2, all vertices carrying the same label. Distinct
// sets always separate; equality of invariants never asserts a positive.
GfVerdict gf_distinguish(std::vector<int> f, std::vector<int> f_prime);

// Partition of {0..n-1} into r nonempty blocks such that the labels inside
// block k form exactly the k-th target signature; first match in the
// lexicographic order of block assignments, or nullopt.
std::optional<std::vector<std::vector<int>>> tensor_match(
    const std::vector<FactorClassLabel>& labels, const std::vector<TensorSignature>& targets);

}  // namespace gpfock

#endif
