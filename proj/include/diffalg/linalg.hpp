#pragma once

#include <vector>

#include "diffalg/error.hpp"

namespace diffalg {

// Dense exact linear algebra over a field K (used for constants, trajectory
// kernels, annihilator bases, tensor length).  Row-major storage.
template <class K> struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const K& fill) : rows(r), cols(c), a(r * c, fill) {}

    K& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form; returns the pivot column of each pivot
// row (row echelon is fully reduced, pivots normalized to 1).
template <class K> std::vector<std::size_t> rref(Matrix<K>& M) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
        std::size_t sel = row;
        while (sel < M.rows && M.at(sel, col).is_zero()) ++sel;
        if (sel == M.rows) continue;
        if (sel != row)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(row, j));
        K inv = M.at(row, col).inv();
        for (std::size_t j = col; j < M.cols; ++j) M.at(row, j) = M.at(row, j) * inv;
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == row || M.at(i, col).is_zero()) continue;
            K f = M.at(i, col);
            for (std::size_t j = col; j < M.cols; ++j)
                M.at(i, j) = M.at(i, j) - f * M.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K> std::size_t rank(Matrix<K> M) { return rref(M).size(); }

// Basis of the right kernel {x : M x = 0}; each vector has a free coordinate
// set to 1, echelon-deterministic.
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> M, const typename K::Ctx& ctx) {
    std::vector<std::size_t> pivots = rref(M);
    std::vector<bool> is_pivot(M.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < M.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(M.cols, K::zero(ctx));
        v[free] = K::one(ctx);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -M.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Is v in the row span of (independent or not) rows?
template <class K>
bool in_row_span(const std::vector<std::vector<K>>& rows, const std::vector<K>& v,
                 const typename K::Ctx& ctx) {
    if (rows.empty()) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
    std::size_t cols = v.size();
    Matrix<K> A(rows.size(), cols, K::zero(ctx));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = rows[i][j];
    std::size_t r0 = rank(A);
    Matrix<K> B(rows.size() + 1, cols, K::zero(ctx));
    B.a.assign(A.a.begin(), A.a.end());
    B.a.resize((rows.size() + 1) * cols, K::zero(ctx));
    for (std::size_t j = 0; j < cols; ++j) B.at(rows.size(), j) = v[j];
    return rank(B) == r0;
}

} // namespace diffalg
