#pragma once

#include <vector>

#include "descentff/fields.hpp"

namespace dff {
namespace lin {

template <FieldCtx F>
using Mat = std::vector<std::vector<typename F::Elem>>;

// Row-reduce in place; returns the pivot columns. Columns beyond `cols` are
// carried along (augmented systems).
template <FieldCtx F>
std::vector<int> row_reduce_pivots(const F& k, Mat<F>& m, int cols) {
    std::vector<int> pivots;
    int rank = 0;
    int rows = static_cast<int>(m.size());
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!k.is_zero(m[r][col])) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        auto inv = k.inv(m[rank][col]);
        for (auto& e : m[rank]) e = k.mul(e, inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || k.is_zero(m[r][col])) continue;
            auto f = m[r][col];
            for (size_t c = 0; c < m[r].size(); ++c)
                m[r][c] = k.sub(m[r][c], k.mul(f, m[rank][c]));
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

template <FieldCtx F>
int row_reduce(const F& k, Mat<F>& m, int cols) {
    return static_cast<int>(row_reduce_pivots(k, m, cols).size());
}

template <FieldCtx F>
int rank(const F& k, Mat<F> m) {
    if (m.empty()) return 0;
    return row_reduce(k, m, static_cast<int>(m[0].size()));
}

// Basis of the right null space of m (vectors v with m v = 0).
template <FieldCtx F>
std::vector<std::vector<typename F::Elem>> nullspace(const F& k, Mat<F> m, int ncols) {
    for (auto& r : m) r.resize(ncols, k.zero());
    std::vector<int> pivots = row_reduce_pivots(k, m, ncols);
    std::vector<int> pivot_of_col(ncols, -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i]] = static_cast<int>(i);
    std::vector<std::vector<typename F::Elem>> basis;
    for (int c = 0; c < ncols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<typename F::Elem> v(ncols, k.zero());
        v[c] = k.one();
        for (int cc = 0; cc < ncols; ++cc) {
            int pr = pivot_of_col[cc];
            if (pr >= 0) v[cc] = k.neg(m[pr][c]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <FieldCtx F>
typename F::Elem det(const F& k, Mat<F> m) {
    int n = static_cast<int>(m.size());
    auto d = k.one();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!k.is_zero(m[r][col])) { piv = r; break; }
        if (piv < 0) return k.zero();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = k.neg(d);
        }
        d = k.mul(d, m[col][col]);
        auto inv = k.inv(m[col][col]);
        for (int r = col + 1; r < n; ++r) {
            if (k.is_zero(m[r][col])) continue;
            auto f = k.mul(m[r][col], inv);
            for (int c = col; c < n; ++c) m[r][c] = k.sub(m[r][c], k.mul(f, m[col][c]));
        }
    }
    return d;
}

// Solve m x = b for square invertible m.
template <FieldCtx F>
std::vector<typename F::Elem> solve(const F& k, Mat<F> m, std::vector<typename F::Elem> b) {
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) m[i].push_back(b[i]);
    int r = row_reduce(k, m, n);
    require(r == n, errc::degenerate_input, "singular system");
    std::vector<typename F::Elem> x(n, k.zero());
    for (int i = 0; i < n; ++i) {
        // row i has pivot at some column; after full reduction row i pivot = column i
        x[i] = m[i][n];
    }
    return x;
}

}  // namespace lin
}  // namespace dff
