#ifndef GPFOCK_COXETER_HPP
#define GPFOCK_COXETER_HPP

#include <string>
#include <vector>

#include "gpfock/budget.hpp"
#include "gpfock/graph.hpp"

namespace gpfock {

// Word in the right-angled Coxeter group of a graph: a sequence of vertex
// indices. Generators are involutions; adjacent vertices commute.
using Word = std::vector<int>;

Word word_from_names(const SimpleGraph& g, const std::vector<std::string>& letters);
std::vector<std::string> word_to_names(const SimpleGraph& g, const Word& w);

// A word is reduced when it contains no factor s v s with s adjacent to
// every letter of v (v may be empty). The empty word is reduced.
bool is_reduced(const SimpleGraph& g, const Word& w);

// Canonical representative of the group element: the ShortLex-least reduced
// word under the vertex order. Idempotent; constant on equivalence classes.
Word normal_form(const SimpleGraph& g, const Word& w);

bool words_equal(const SimpleGraph& g, const Word& a, const Word& b);

// Variant that rejects words over distinct graphs.
bool words_equal(const SimpleGraph& ga, const Word& a, const SimpleGraph& gb, const Word& b);

struct DescentSets {
    VertexSet left;   // s with |s g| = |g| - 1
    VertexSet right;  // s with |g s| = |g| - 1
};

DescentSets descent_sets(const SimpleGraph& g, const Word& element);

// |s g| = 1 + |g|, i.e. prepending s lengthens the element.
bool prepend_increases_length(const SimpleGraph& g, const Word& element, const std::string& s);

// |s1 g| = 1 + |g| = |g s2| for all s1 in set1, s2 in set2.
bool is_length_separating(const SimpleGraph& g, const Word& element, const VertexSet& set1,
                          const VertexSet& set2);

// All distinct elements of length <= max_length, grouped by length. Each
// element appears once, as its canonical word. Exceeding the budget raises
// budget_error whose message carries the partial count.
std::vector<std::vector<Word>> enumerate_elements(const SimpleGraph& g, int max_length,
                                                  const Budget& budget = Budget::from_env());

}  // namespace gpfock

#endif
