#pragma once

#include <optional>
#include <vector>

#include "matrix.hpp"

namespace crlab {

// Linear subspace of K^n held as the reduced row echelon basis of its span.
// RREF is a canonical representative: two subspaces are equal iff their basis
// matrices are identical, which makes == and set-type reasoning exact.
template <class K> class Subspace {
public:
    Subspace() = default;

    static Subspace zero(int ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = Matrix<K>(0, ambient);
        return s;
    }

    static Subspace full(int ambient) {
        return from_rows(ambient, Matrix<K>::identity(ambient));
    }

    static Subspace from_rows(int ambient, Matrix<K> rows) {
        if (rows.ncols != ambient)
            throw Error("AmbientMismatch", "rows have wrong length");
        Subspace s;
        s.ambient_ = ambient;
        std::vector<int> piv = rref_in_place(rows);
        Matrix<K> b(int(piv.size()), ambient);
        for (int i = 0; i < b.nrows; ++i)
            for (int j = 0; j < ambient; ++j) b.at(i, j) = rows.at(i, j);
        s.basis_ = std::move(b);
        s.pivots_ = std::move(piv);
        return s;
    }

    static Subspace from_vectors(int ambient, const std::vector<Vec<K>>& vs) {
        return from_rows(ambient, rows_to_matrix(vs, ambient));
    }

    static Subspace span_of_one(int ambient, const Vec<K>& v) {
        return from_rows(ambient, rows_to_matrix<K>({v}, ambient));
    }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.nrows; }
    const Matrix<K>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    Vec<K> basis_vector(int i) const { return basis_.row(i); }

    // v minus its projection onto the span, by pivot elimination
    Vec<K> reduce(Vec<K> v) const {
        for (int r = 0; r < basis_.nrows; ++r) {
            const K& c = v[pivots_[r]];
            if (is_zero(c)) continue;
            K f = c;
            for (int j = 0; j < ambient_; ++j)
                if (!is_zero(basis_.at(r, j))) v[j] -= f * basis_.at(r, j);
        }
        return v;
    }

    bool contains(const Vec<K>& v) const { return vec_is_zero(reduce(v)); }

    // coefficients of v in the RREF basis rows, when v lies in the span
    std::optional<Vec<K>> coords(const Vec<K>& v) const {
        Vec<K> c(basis_.nrows);
        for (int r = 0; r < basis_.nrows; ++r) c[r] = v[pivots_[r]];
        Vec<K> check(ambient_, K(0));
        for (int r = 0; r < basis_.nrows; ++r) axpy(check, c[r], basis_.row(r));
        for (int j = 0; j < ambient_; ++j)
            if (check[j] != v[j]) return std::nullopt;
        return c;
    }

    bool leq(const Subspace& other) const {
        check_ambient(other);
        for (int r = 0; r < basis_.nrows; ++r)
            if (!other.contains(basis_.row(r))) return false;
        return true;
    }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

    Subspace sum(const Subspace& other) const {
        check_ambient(other);
        return from_rows(ambient_, vstack(basis_, other.basis_));
    }

    // Solutions v = y·A = z·B through the null space of [Aᵀ | -Bᵀ].
    Subspace intersect(const Subspace& other) const {
        check_ambient(other);
        const Matrix<K>& A = basis_;
        const Matrix<K>& B = other.basis_;
        if (A.nrows == 0 || B.nrows == 0) return zero(ambient_);
        Matrix<K> c = hstack(A.transpose(), B.transpose().scaled(K(-1)));
        Matrix<K> null = kernel(c);
        Matrix<K> vecs(null.nrows, ambient_);
        for (int i = 0; i < null.nrows; ++i)
            for (int r = 0; r < A.nrows; ++r) {
                const K& y = null.at(i, r);
                if (is_zero(y)) continue;
                for (int j = 0; j < ambient_; ++j) vecs.at(i, j) += y * A.at(r, j);
            }
        return from_rows(ambient_, std::move(vecs));
    }

    Subspace conj() const {
        Subspace s;
        s.ambient_ = ambient_;
        s.basis_ = mat_conj(basis_);
        s.pivots_ = pivots_;
        // conjugation keeps RREF shape (pivot 1s are real), so no re-reduction
        return s;
    }

private:
    void check_ambient(const Subspace& other) const {
        if (ambient_ != other.ambient_)
            throw Error("AmbientMismatch", "subspaces live in different ambients");
    }

    int ambient_ = 0;
    Matrix<K> basis_;
    std::vector<int> pivots_;
};

} // namespace crlab
