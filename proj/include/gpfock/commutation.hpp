#ifndef GPFOCK_COMMUTATION_HPP
#define GPFOCK_COMMUTATION_HPP

#include <cstddef>
#include <vector>

namespace gpfock::detail {

// Lexicographically least word in a commutation class.
//
// Items commute according to `commutes`; the class is generated by swaps of
// adjacent commuting items. Greedy extraction: at each step emit the least
// item that can be moved to the front, i.e. whose earlier items all commute
// with it. Plain bubble sort is not enough here: it can stall in a local
// minimum when a smaller item is blocked by a non-commuting neighbor that a
// different swap order would have cleared.
template <class T, class CommutesFn, class LessFn>
std::vector<T> lex_least_in_commutation_class(std::vector<T> items, CommutesFn commutes,
                                              LessFn less) {
    std::vector<T> out;
    out.reserve(items.size());
    while (!items.empty()) {
        std::size_t best = items.size();
        for (std::size_t i = 0; i < items.size(); ++i) {
            bool available = true;
            for (std::size_t j = 0; j < i && available; ++j)
                if (!commutes(items[j], items[i])) available = false;
            if (available && (best == items.size() || less(items[i], items[best]))) best = i;
        }
        out.push_back(items[best]);
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

}  // namespace gpfock::detail

#endif
