#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "subspace.hpp"

namespace crlab {

// Repeatedly solve A x = b against a fixed A. Row-reduces [A | I] once and
// replays the elimination on each right-hand side.
template <class K> class LinearSolver {
public:
    explicit LinearSolver(const Matrix<K>& a)
        : nrows_(a.nrows), ncols_(a.ncols) {
        Matrix<K> aug = hstack(a, Matrix<K>::identity(a.nrows));
        pivots_ = rref_in_place(aug);
        pivots_.erase(std::remove_if(pivots_.begin(), pivots_.end(),
                                     [&](int c) { return c >= ncols_; }),
                      pivots_.end());
        r_ = std::move(aug);
    }

    int rank() const { return int(pivots_.size()); }

    std::optional<Vec<K>> solve(const Vec<K>& b) const {
        // e*b where e is the recorded elimination operator
        Vec<K> eb(nrows_, K(0));
        for (int i = 0; i < nrows_; ++i)
            for (int j = 0; j < nrows_; ++j) {
                const K& c = r_.at(i, ncols_ + j);
                if (!is_zero(c)) eb[i] += c * b[j];
            }
        for (int i = int(pivots_.size()); i < nrows_; ++i)
            if (!is_zero(eb[i])) return std::nullopt;
        // free variables pinned to zero, pivot rows read off directly
        Vec<K> x(ncols_, K(0));
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            x[pivots_[r]] = eb[int(r)];
        return x;
    }

private:
    int nrows_, ncols_;
    Matrix<K> r_;
    std::vector<int> pivots_;
};

// Finite-dimensional Lie algebra over K given by structure constants on a
// fixed basis. The full bracket table (all ordered pairs) is stored.
template <class K> class LieAlgebra {
public:
    LieAlgebra() = default;

    explicit LieAlgebra(int n, std::vector<std::string> labels = {})
        : n_(n), labels_(std::move(labels)),
          table_(std::size_t(n) * n, Vec<K>(n, K(0))) {
        if (labels_.empty())
            for (int i = 1; i <= n; ++i) labels_.push_back("e" + std::to_string(i));
        if (int(labels_.size()) != n)
            throw Error("BadManifest", "label count does not match dimension");
    }

    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // sets [e_i, e_j] and its opposite; requires i != j
    void set_bracket(int i, int j, Vec<K> v) {
        if (i == j) throw Error("BadManifest", "bracket [e_i, e_i] must vanish");
        table_[idx(j, i)] = negated(v);
        table_[idx(i, j)] = std::move(v);
    }
    void add_term(int i, int j, int k, const K& c) {
        table_[idx(i, j)][k] += c;
        table_[idx(j, i)][k] -= c;
    }

    const Vec<K>& bracket_basis(int i, int j) const { return table_[idx(i, j)]; }

    Vec<K> bracket(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> z(n_, K(0));
        for (int i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            for (int j = 0; j < n_; ++j) {
                if (is_zero(y[j]) || i == j) continue;
                K c = x[i] * y[j];
                axpy(z, c, table_[idx(i, j)]);
            }
        }
        return z;
    }

    // matrix of ad(x): column j is [x, e_j]
    Matrix<K> ad(const Vec<K>& x) const {
        Matrix<K> m(n_, n_);
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < n_; ++i) {
                if (is_zero(x[i]) || i == j) continue;
                const Vec<K>& t = table_[idx(i, j)];
                for (int k = 0; k < n_; ++k)
                    if (!is_zero(t[k])) m.at(k, j) += x[i] * t[k];
            }
        }
        return m;
    }

    Matrix<K> ad_basis(int i) const {
        Vec<K> x(n_, K(0));
        x[i] = K(1);
        return ad(x);
    }

    Vec<K> basis_vector(int i) const {
        Vec<K> x(n_, K(0));
        x[i] = K(1);
        return x;
    }

    // Jacobi check over all basis triples. Throws with the first violating
    // triple and its residual.
    void validate() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                for (int k = j + 1; k < n_; ++k) {
                    Vec<K> r = bracket(bracket_basis(i, j), basis_vector(k));
                    axpy_vec(r, bracket(bracket_basis(j, k), basis_vector(i)));
                    axpy_vec(r, bracket(bracket_basis(k, i), basis_vector(j)));
                    if (!vec_is_zero(r))
                        throw Error("JacobiViolation",
                                    "Jacobi identity fails on basis triple (" +
                                        labels_[i] + ", " + labels_[j] + ", " +
                                        labels_[k] + ")",
                                    print_vec(r));
                }
    }

    std::string print_vec(const Vec<K>& v) const {
        std::string s;
        for (int k = 0; k < n_; ++k) {
            if (is_zero(v[k])) continue;
            if (!s.empty()) s += " + ";
            s += "(" + FieldTraits<K>::print(v[k]) + ")*" + labels_[k];
        }
        return s.empty() ? "0" : s;
    }

private:
    std::size_t idx(int i, int j) const { return std::size_t(i) * n_ + j; }
    static Vec<K> negated(Vec<K> v) {
        for (auto& c : v) c = -c;
        return v;
    }
    static void axpy_vec(Vec<K>& y, const Vec<K>& x) {
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += x[k];
    }

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<Vec<K>> table_;
};

// --- subspace-level operations --------------------------------------------

// Largest subspace of s mapped into target by every map in ads.
template <class K>
Subspace<K> stabilizer(const Subspace<K>& s, const std::vector<Matrix<K>>& ads,
                       const Subspace<K>& target) {
    int d = s.dim(), n = s.ambient();
    if (d == 0) return s;
    Matrix<K> sys(int(ads.size()) * n, d);
    int row0 = 0;
    for (const auto& m : ads) {
        for (int r = 0; r < d; ++r) {
            Vec<K> img = target.reduce(m.apply(s.basis_vector(r)));
            for (int t = 0; t < n; ++t) sys.at(row0 + t, r) = img[t];
        }
        row0 += n;
    }
    Matrix<K> null = kernel(std::move(sys));
    Matrix<K> vecs(null.nrows, n);
    for (int i = 0; i < null.nrows; ++i)
        for (int r = 0; r < d; ++r) {
            const K& c = null.at(i, r);
            if (is_zero(c)) continue;
            for (int t = 0; t < n; ++t) vecs.at(i, t) += c * s.basis().at(r, t);
        }
    return Subspace<K>::from_rows(n, std::move(vecs));
}

template <class K>
std::vector<Matrix<K>> basis_ads(const LieAlgebra<K>& g) {
    std::vector<Matrix<K>> ads;
    ads.reserve(g.dim());
    for (int i = 0; i < g.dim(); ++i) ads.push_back(g.ad_basis(i));
    return ads;
}

template <class K>
bool is_subalgebra(const LieAlgebra<K>& g, const Subspace<K>& s) {
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j)
            if (!s.contains(g.bracket(s.basis_vector(i), s.basis_vector(j))))
                return false;
    return true;
}

template <class K>
bool is_ideal(const LieAlgebra<K>& g, const Subspace<K>& s) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j)
            if (!s.contains(g.bracket(g.basis_vector(i), s.basis_vector(j))))
                return false;
    return true;
}

// Subalgebra generated by a subspace: closure of s under the bracket.
template <class K>
Subspace<K> generated_subalgebra(const LieAlgebra<K>& g, Subspace<K> s) {
    for (;;) {
        std::vector<Vec<K>> extra;
        for (int i = 0; i < s.dim(); ++i)
            for (int j = i + 1; j < s.dim(); ++j) {
                Vec<K> b = g.bracket(s.basis_vector(i), s.basis_vector(j));
                if (!s.contains(b)) extra.push_back(std::move(b));
            }
        if (extra.empty()) return s;
        Subspace<K> next = s.sum(Subspace<K>::from_vectors(g.dim(), extra));
        s = std::move(next);
    }
}

// Largest ideal of g contained in s: greatest fixed point of
// a -> {x in a : [g, x] subset a}.
template <class K>
Subspace<K> largest_ideal_in(const LieAlgebra<K>& g, Subspace<K> s) {
    std::vector<Matrix<K>> ads = basis_ads(g);
    for (;;) {
        Subspace<K> next = stabilizer(s, ads, s);
        if (next == s) return s;
        s = std::move(next);
    }
}

// --- complexification ------------------------------------------------------

inline Gauss to_gauss(const Rat& x) { return Gauss(x); }

inline Vec<Gauss> complexify_vec(const Vec<Rat>& v) {
    Vec<Gauss> w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) w[k] = Gauss(v[k]);
    return w;
}

inline LieAlgebra<Gauss> complexify(const LieAlgebra<Rat>& g) {
    LieAlgebra<Gauss> c(g.dim(), g.labels());
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            c.set_bracket(i, j, complexify_vec(g.bracket_basis(i, j)));
    return c;
}

inline Subspace<Gauss> complexify_subspace(const Subspace<Rat>& s) {
    Matrix<Gauss> rows(s.dim(), s.ambient());
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.ambient(); ++j) rows.at(i, j) = Gauss(s.basis().at(i, j));
    return Subspace<Gauss>::from_rows(s.ambient(), std::move(rows));
}

// Real span {Re Z : Z in l} of a complex subspace, in the real coordinates.
inline Subspace<Rat> real_span_of(const Subspace<Gauss>& l) {
    Matrix<Rat> rows(2 * l.dim(), l.ambient());
    for (int i = 0; i < l.dim(); ++i)
        for (int j = 0; j < l.ambient(); ++j) {
            rows.at(2 * i, j) = l.basis().at(i, j).re;
            rows.at(2 * i + 1, j) = l.basis().at(i, j).im;
        }
    return Subspace<Rat>::from_rows(l.ambient(), std::move(rows));
}

// Real points {x real : x in l} of a complex subspace.
inline Subspace<Rat> real_points_of(const Subspace<Gauss>& l) {
    int n = l.ambient(), k = l.dim();
    // unknowns: x (n reals), then re c_j, im c_j; rows force x = sum c_j w_j
    Matrix<Rat> sys(2 * n, n + 2 * k);
    for (int t = 0; t < n; ++t) {
        sys.at(2 * t, t) = Rat(1);
        for (int j = 0; j < k; ++j) {
            const Gauss& w = l.basis().at(j, t);
            sys.at(2 * t, n + 2 * j) -= w.re;
            sys.at(2 * t, n + 2 * j + 1) += w.im;
            sys.at(2 * t + 1, n + 2 * j) -= w.im;
            sys.at(2 * t + 1, n + 2 * j + 1) -= w.re;
        }
    }
    Matrix<Rat> null = kernel(std::move(sys));
    Matrix<Rat> xs(null.nrows, n);
    for (int i = 0; i < null.nrows; ++i)
        for (int t = 0; t < n; ++t) xs.at(i, t) = null.at(i, t);
    return Subspace<Rat>::from_rows(n, std::move(xs));
}

// coefficientwise conjugation = the conjugation of the complexified algebra
// with respect to its real form
inline Vec<Gauss> conj_vec(const Vec<Gauss>& v) { return vec_conj(v); }

// --- matrix realizations ---------------------------------------------------

// A Lie algebra presented by concrete matrices; coords() maps a matrix back
// to coefficients in the generator basis.
template <class K> struct MatrixAlgebra {
    LieAlgebra<K> alg;
    std::vector<Matrix<Gauss>> gens;
    // flattening of the generator span, kept for coordinate solves
    std::shared_ptr<LinearSolver<K>> solver;

    Vec<K> coords(const Matrix<Gauss>& m) const;
};

namespace detail {

// real flattening: (re, im) of every entry
inline Vec<Rat> flatten_real(const Matrix<Gauss>& m) {
    Vec<Rat> v;
    v.reserve(2 * m.a.size());
    for (const auto& x : m.a) {
        v.push_back(x.re);
        v.push_back(x.im);
    }
    return v;
}

inline Vec<Gauss> flatten_complex(const Matrix<Gauss>& m) { return m.a; }

template <class K> Vec<K> flatten(const Matrix<Gauss>& m);
template <> inline Vec<Rat> flatten<Rat>(const Matrix<Gauss>& m) { return flatten_real(m); }
template <> inline Vec<Gauss> flatten<Gauss>(const Matrix<Gauss>& m) { return flatten_complex(m); }

} // namespace detail

template <class K>
Vec<K> MatrixAlgebra<K>::coords(const Matrix<Gauss>& m) const {
    auto c = solver->solve(detail::flatten<K>(m));
    if (!c)
        throw Error("NotInSpan", "matrix does not lie in the generator span");
    return *c;
}

// Builds the abstract algebra spanned by the given matrices over K (K = Q
// takes real spans of complex matrices, K = Q(i) complex spans). Requires the
// generators independent and their commutators inside the span.
template <class K>
MatrixAlgebra<K> from_matrices(const std::vector<Matrix<Gauss>>& mats,
                               std::vector<std::string> labels = {}) {
    if (mats.empty()) throw Error("BadManifest", "no generator matrices");
    int g = int(mats.size());
    std::vector<Vec<K>> flat;
    for (const auto& m : mats) flat.push_back(detail::flatten<K>(m));
    int D = int(flat[0].size());
    Matrix<K> cols(D, g);
    for (int j = 0; j < g; ++j)
        for (int t = 0; t < D; ++t) cols.at(t, j) = flat[j][t];
    auto solver = std::make_shared<LinearSolver<K>>(cols);
    if (solver->rank() != g)
        throw Error("DependentGenerators",
                    "generator matrices are linearly dependent over " +
                        std::string(FieldTraits<K>::name()));

    MatrixAlgebra<K> out;
    out.gens = mats;
    out.solver = solver;
    out.alg = LieAlgebra<K>(g, std::move(labels));
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            Matrix<Gauss> comm = mats[i] * mats[j] - mats[j] * mats[i];
            auto c = solver->solve(detail::flatten<K>(comm));
            if (!c)
                throw Error("NotClosed",
                            "commutator of generators " + std::to_string(i + 1) +
                                " and " + std::to_string(j + 1) +
                                " leaves the span");
            out.alg.set_bracket(i, j, std::move(*c));
        }
    out.alg.validate();
    return out;
}

// Closure variant: grows the span with commutators until it closes under the
// bracket, then presents the algebra on the independent matrices collected
// along the way (input order first, new commutators after).
template <class K>
MatrixAlgebra<K> from_matrices_closure(const std::vector<Matrix<Gauss>>& mats,
                                       int max_dim = 64) {
    if (mats.empty()) throw Error("BadManifest", "no generator matrices");
    int D = int(detail::flatten<K>(mats[0]).size());
    std::vector<Matrix<Gauss>> basis;
    Subspace<K> span = Subspace<K>::zero(D);
    auto add = [&](const Matrix<Gauss>& m) {
        Vec<K> f = detail::flatten<K>(m);
        if (span.contains(f)) return;
        span = span.sum(Subspace<K>::span_of_one(D, f));
        basis.push_back(m);
    };
    for (const auto& m : mats) add(m);
    if (basis.empty()) throw Error("BadManifest", "all generator matrices vanish");
    for (std::size_t i = 1; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            add(basis[i] * basis[j] - basis[j] * basis[i]);
            if (int(basis.size()) > max_dim)
                throw Error("ClosureTooLarge", "commutator closure exceeded the cap");
        }
    }
    return from_matrices<K>(basis);
}

inline Matrix<Gauss> complex_matrix(const Matrix<Rat>& m) {
    Matrix<Gauss> c(m.nrows, m.ncols);
    for (std::size_t k = 0; k < m.a.size(); ++k) c.a[k] = Gauss(m.a[k]);
    return c;
}

} // namespace crlab
