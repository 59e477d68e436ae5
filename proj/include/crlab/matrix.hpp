#pragma once

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace crlab {

template <class K> using Vec = std::vector<K>;

template <class K> bool vec_is_zero(const Vec<K>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class K> Vec<K> vec_conj(Vec<K> v) {
    for (auto& x : v) x = FieldTraits<K>::conj(x);
    return v;
}

// y += c*x
template <class K> void axpy(Vec<K>& y, const K& c, const Vec<K>& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += c * x[k];
}

// Dense row-major matrix over an exact field.
template <class K> struct Matrix {
    int nrows = 0, ncols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(int r, int c) : nrows(r), ncols(c), a(std::size_t(r) * c, K(0)) {}

    K& at(int i, int j) { return a[std::size_t(i) * ncols + j]; }
    const K& at(int i, int j) const { return a[std::size_t(i) * ncols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    Vec<K> row(int i) const {
        return Vec<K>(a.begin() + std::size_t(i) * ncols,
                      a.begin() + std::size_t(i + 1) * ncols);
    }
    void set_row(int i, const Vec<K>& v) {
        for (int j = 0; j < ncols; ++j) at(i, j) = v[j];
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!crlab::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(ncols, nrows);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix z(x.nrows, y.ncols);
        for (int i = 0; i < x.nrows; ++i)
            for (int k = 0; k < x.ncols; ++k) {
                const K& c = x.at(i, k);
                if (crlab::is_zero(c)) continue;
                for (int j = 0; j < y.ncols; ++j) z.at(i, j) += c * y.at(k, j);
            }
        return z;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] += y.a[k];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] -= y.a[k];
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.nrows == y.nrows && x.ncols == y.ncols && x.a == y.a;
    }

    Vec<K> apply(const Vec<K>& v) const {
        Vec<K> w(nrows, K(0));
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j)
                if (!crlab::is_zero(at(i, j))) w[i] += at(i, j) * v[j];
        return w;
    }

    Matrix scaled(const K& c) const {
        Matrix m = *this;
        for (auto& x : m.a) x = x * c;
        return m;
    }
};

template <class K> Matrix<K> mat_conj(Matrix<K> m) {
    for (auto& x : m.a) x = FieldTraits<K>::conj(x);
    return m;
}

template <class K> Matrix<K> vstack(const Matrix<K>& x, const Matrix<K>& y) {
    if (x.nrows == 0) return y;
    if (y.nrows == 0) return x;
    Matrix<K> z(x.nrows + y.nrows, x.ncols);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + x.a.size());
    return z;
}

template <class K> Matrix<K> hstack(const Matrix<K>& x, const Matrix<K>& y) {
    Matrix<K> z(x.nrows, x.ncols + y.ncols);
    for (int i = 0; i < x.nrows; ++i) {
        for (int j = 0; j < x.ncols; ++j) z.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.ncols; ++j) z.at(i, x.ncols + j) = y.at(i, j);
    }
    return z;
}

template <class K> Matrix<K> rows_to_matrix(const std::vector<Vec<K>>& rows, int ncols) {
    Matrix<K> m(int(rows.size()), ncols);
    for (int i = 0; i < m.nrows; ++i) m.set_row(i, rows[i]);
    return m;
}

// Reduced row echelon form, in place. Deterministic: columns scanned left to
// right, pivot = first row (top-down) with a nonzero entry, pivots normalized
// to 1, eliminated above and below. Returns pivot column indices.
template <class K> std::vector<int> rref_in_place(Matrix<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.ncols && r < m.nrows; ++c) {
        int p = -1;
        for (int i = r; i < m.nrows; ++i)
            if (!is_zero(m.at(i, c))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.ncols; ++j) std::swap(m.at(p, j), m.at(r, j));
        K inv = K(1) / m.at(r, c);
        for (int j = c; j < m.ncols; ++j)
            if (!is_zero(m.at(r, j))) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.nrows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.ncols; ++j)
                if (!is_zero(m.at(r, j))) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K> Matrix<K> rref(Matrix<K> m) {
    rref_in_place(m);
    return m;
}

template <class K> int rank(Matrix<K> m) { return int(rref_in_place(m).size()); }

// Right null space {x : m x = 0}; rows of the result are a basis, one per
// free column in ascending column order.
template <class K> Matrix<K> kernel(Matrix<K> m) {
    std::vector<int> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.ncols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix<K> out(m.ncols - int(pivots.size()), m.ncols);
    int k = 0;
    for (int c = 0; c < m.ncols; ++c) {
        if (is_pivot[c]) continue;
        out.at(k, c) = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            out.at(k, pivots[r]) = -m.at(int(r), c);
        ++k;
    }
    return out;
}

// Solve a x = b for one right-hand side; nullopt when inconsistent. When the
// system is underdetermined the solution with zero free variables is taken.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& a, const Vec<K>& b) {
    Matrix<K> aug(a.nrows, a.ncols + 1);
    for (int i = 0; i < a.nrows; ++i) {
        for (int j = 0; j < a.ncols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.ncols) = b[i];
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.ncols) return std::nullopt;
    Vec<K> x(a.ncols, K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), a.ncols);
    return x;
}

} // namespace crlab
