#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zreg {

/// Result of an exact linear solve A x = b.
template <class S>
struct SolveResult {
    bool consistent = false;
    std::size_t rank = 0;
    std::vector<S> x;                 // one particular solution, free variables set to 0
    std::vector<std::size_t> pivots;  // pivot columns
};

/// Gaussian elimination over an exact field. A is row-major, rows x cols.
template <class S>
SolveResult<S> solve_linear(std::vector<std::vector<S>> a, std::vector<S> b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_linear: row count mismatch");
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    SolveResult<S> res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        S inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            S f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.consistent = true;
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) res.consistent = false;
    res.x.assign(cols, S(0));
    if (res.consistent)
        for (std::size_t i = 0; i < r; ++i) res.x[res.pivots[i]] = b[i];
    return res;
}

template <class S>
std::size_t matrix_rank(std::vector<std::vector<S>> a) {
    std::vector<S> zero(a.size(), S(0));
    return solve_linear(std::move(a), std::move(zero)).rank;
}

}  // namespace zreg
