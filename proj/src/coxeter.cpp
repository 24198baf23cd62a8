#include "gpfock/coxeter.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "gpfock/commutation.hpp"

namespace gpfock {

Word word_from_names(const SimpleGraph& g, const std::vector<std::string>& letters) {
    Word w;
    w.reserve(letters.size());
    for (const auto& name : letters) w.push_back(g.vertex_index(name));
    return w;
}

std::vector<std::string> word_to_names(const SimpleGraph& g, const Word& w) {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (int v : w) out.push_back(g.vertex_name(v));
    return out;
}

namespace {

// Positions i < j with equal letters separated only by letters adjacent to
// that letter; such a pair can be cancelled.
bool find_cancellable_pair(const SimpleGraph& g, const Word& w, std::size_t& pi,
                           std::size_t& pj) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (w[j] == w[i]) {  // everything in between was adjacent to w[i]
                pi = i;
                pj = j;
                return true;
            }
            if (!g.adjacent(w[i], w[j])) break;
        }
    }
    return false;
}

}  // namespace

bool is_reduced(const SimpleGraph& g, const Word& w) {
    for (int v : w)
        if (v < 0 || v >= g.vertex_count()) throw input_error("letter out of range");
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (w[j] == w[i]) return false;  // every in-between letter was adjacent
            if (!g.adjacent(w[i], w[j])) break;
        }
    }
    return true;
}

Word normal_form(const SimpleGraph& g, const Word& input) {
    Word w = input;
    for (int v : w)
        if (v < 0 || v >= g.vertex_count()) throw input_error("letter out of range");
    std::size_t i = 0, j = 0;
    while (find_cancellable_pair(g, w, i, j)) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return detail::lex_least_in_commutation_class(
        std::move(w), [&g](int a, int b) { return g.adjacent(a, b); },
        [](int a, int b) { return a < b; });
}

bool words_equal(const SimpleGraph& g, const Word& a, const Word& b) {
    return normal_form(g, a) == normal_form(g, b);
}

bool words_equal(const SimpleGraph& ga, const Word& a, const SimpleGraph& gb, const Word& b) {
    if (!(ga == gb)) throw input_error("words over mismatched graphs");
    return words_equal(ga, a, b);
}

DescentSets descent_sets(const SimpleGraph& g, const Word& element) {
    const Word nf = normal_form(g, element);
    const int len = static_cast<int>(nf.size());
    DescentSets out;
    for (int s = 0; s < g.vertex_count(); ++s) {
        Word left = nf;
        left.insert(left.begin(), s);
        if (static_cast<int>(normal_form(g, left).size()) == len - 1)
            out.left.push_back(g.vertex_name(s));
        Word right = nf;
        right.push_back(s);
        if (static_cast<int>(normal_form(g, right).size()) == len - 1)
            out.right.push_back(g.vertex_name(s));
    }
    return out;
}

bool prepend_increases_length(const SimpleGraph& g, const Word& element, const std::string& s) {
    const Word nf = normal_form(g, element);
    Word w = nf;
    w.insert(w.begin(), g.vertex_index(s));
    return normal_form(g, w).size() == nf.size() + 1;
}

bool is_length_separating(const SimpleGraph& g, const Word& element, const VertexSet& set1,
                          const VertexSet& set2) {
    const DescentSets d = descent_sets(g, element);
    for (const auto& s : set1) {
        g.vertex_index(s);
        if (std::binary_search(d.left.begin(), d.left.end(), s)) return false;
    }
    for (const auto& s : set2) {
        g.vertex_index(s);
        if (std::binary_search(d.right.begin(), d.right.end(), s)) return false;
    }
    return true;
}

std::vector<std::vector<Word>> enumerate_elements(const SimpleGraph& g, int max_length,
                                                  const Budget& budget) {
    if (max_length < 0) throw input_error("max_length must be nonnegative");
    std::vector<std::vector<Word>> by_length(static_cast<std::size_t>(max_length) + 1);
    by_length[0].push_back({});
    long long total = 1;
    for (int len = 0; len < max_length; ++len) {
        std::set<Word> next;
        for (const Word& w : by_length[len]) {
            for (int s = 0; s < g.vertex_count(); ++s) {
                Word ext = w;
                ext.push_back(s);
                Word nf = normal_form(g, ext);
                if (static_cast<int>(nf.size()) == len + 1) next.insert(std::move(nf));
            }
        }
        total += static_cast<long long>(next.size());
        if (total > budget.max_items)
            throw budget_error("element enumeration budget exceeded; partial count " +
                               std::to_string(total - static_cast<long long>(next.size())) +
                               " up to length " + std::to_string(len));
        by_length[len + 1].assign(next.begin(), next.end());
    }
    return by_length;
}

}  // namespace gpfock
