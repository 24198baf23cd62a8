#ifndef GPFOCK_BUDGET_HPP
#define GPFOCK_BUDGET_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpfock {

// Raised on malformed input: unknown vertices, bad JSON/DOT, invalid flags.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an enumeration or matrix build exceeds its resource budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Cooperative resource budget for enumerations and dense-matrix builds.
// The environment variable GPFOCK_MAX_MATRIX_BYTES overrides the matrix cap.
struct Budget {
    std::size_t max_matrix_bytes = 512u << 20;
    long long max_items = 50'000'000;

    static Budget from_env();

    void check_matrix(std::size_t rows, std::size_t cols) const;
    void check_items(long long count, const char* what) const;
};

}  // namespace gpfock

#endif
