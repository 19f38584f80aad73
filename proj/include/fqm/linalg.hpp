#pragma once

#include <vector>

#include "fqm/cyclo.hpp"

namespace fqm {

using CMatrix = std::vector<std::vector<Cyclotomic>>;

inline CMatrix cmatrix(std::size_t rows, std::size_t cols) {
    return CMatrix(rows, std::vector<Cyclotomic>(cols));
}

inline CMatrix identity_cmatrix(std::size_t n) {
    CMatrix m = cmatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Cyclotomic(1);
    return m;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c = cmatrix(a.size(), b.empty() ? 0 : b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < c[i].size(); ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline CMatrix operator+(CMatrix a, const CMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
    return a;
}

inline CMatrix scaled(CMatrix a, const Cyclotomic& s) {
    for (auto& row : a)
        for (auto& x : row) x = x * s;
    return a;
}

inline CMatrix conjugate_transpose(const CMatrix& a) {
    CMatrix t = cmatrix(a.empty() ? 0 : a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j].conjugate();
    return t;
}

inline bool operator==(const CMatrix& a, const CMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(CMatrix& a, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Cyclotomic inv = a[row][col].inverse();
        for (auto& x : a[row]) x = x * inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            const Cyclotomic f = a[i][col];
            for (std::size_t j = col; j < a[i].size(); ++j)
                if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

// Unique solution of a x = b, or nullopt when singular or inconsistent.
inline std::optional<std::vector<Cyclotomic>> solve_unique(CMatrix a, const std::vector<Cyclotomic>& b) {
    const std::size_t n = a.empty() ? 0 : a[0].size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto piv = rref(a, n);
    if (piv.size() != n) return std::nullopt;
    for (std::size_t i = n; i < a.size(); ++i)
        if (!a[i][n].is_zero()) return std::nullopt;
    std::vector<Cyclotomic> x(n);
    for (std::size_t i = 0; i < n; ++i) x[piv[i]] = a[i][n];
    return x;
}

} // namespace fqm
