#pragma once

#include <memory>

#include "graded.hpp"

namespace crlab {

// Basis element of a nonnegative prolongation component, stored through its
// action on the negative part: phi[h] maps G_{-h} into G_{p-h}.
template <class K>
struct PositiveElement {
    std::map<int, Matrix<K>> phi;
};

template <class K>
struct Prolongation {
    GradedLieAlgebra<K> graded;                           // degrees [-mu, top]
    std::map<int, std::vector<PositiveElement<K>>> elements;
    int top = 0;          // highest degree with a stored component
    bool terminated = false;
    int first_zero = -1;  // valid when terminated
};

template <class K>
GradedLieAlgebra<K> negative_part(const GradedLieAlgebra<K>& g) {
    GradedLieAlgebra<K> m;
    for (const auto& [h, d] : g.components())
        if (h < 0) m.set_component(h, d);
    for (const auto& [a, da] : m.components())
        for (const auto& [b, db] : m.components()) {
            if (a > b || m.dim(a + b) == 0) continue;
            for (int i = 0; i < da; ++i)
                for (int j = (a == b ? i + 1 : 0); j < db; ++j)
                    m.set_bracket(a, i, b, j, g.bracket_basis(a, i, b, j));
        }
    return m;
}

namespace detail {

// Degree-by-degree prolongation solver.  A degree-p element is a tuple of
// maps phi_h : G_{-h} -> G_{p-h} subject to
//     phi_{a+b}([u, v]) = [phi_a(u), v] + [u, phi_b(v)]
// over basis pairs of the negative part; the component G_p is the kernel of
// that linear system.  Brackets of nonnegative elements are recovered from
// [[x, y], u] = [x, [y, u]] - [y, [x, u]] and coordinatized against the
// already computed basis.
template <class K>
class Prolonger {
public:
    Prolonger(const GradedLieAlgebra<K>& m, std::optional<Subspace<K>> g0,
              std::optional<Matrix<K>> J)
        : m_(m), g0_(std::move(g0)), J_(std::move(J)) {
        if (m_.empty() || m_.dim(-1) == 0)
            throw Error("NotFundamental", "m has no degree -1 component");
        if (m_.max_degree() > -1)
            throw Error("BadArgument", "m must be concentrated in negative degrees");
        if (!graded_fundamental(m_))
            throw Error("NotFundamental", "m is not generated by its degree -1 part");
        m_.validate();
        mu_ = -m_.min_degree();
        int m1 = m_.dim(-1);
        if (J_) {
            if (J_->nrows != m1 || J_->ncols != m1)
                throw Error("DimensionMismatch", "J does not act on G_{-1}");
        }
        if (g0_ && g0_->ambient() != m1 * m1)
            throw Error("DimensionMismatch",
                        "g0 matrices do not act on G_{-1}");
        gr_ = m_;
    }

    Prolongation<K> run(int max_degree) {
        if (max_degree < 0)
            throw Error("BadArgument", "max_degree must be nonnegative");
        compute_degree_zero();
        Prolongation<K> out;
        out.top = 0;
        for (int p = 1; p <= max_degree; ++p) {
            Matrix<K> sols = kernel(system_matrix(p, true));
            if (sols.nrows == 0) {
                out.terminated = true;
                out.first_zero = p;
                break;
            }
            check_injectivity(p, sols);
            append_component(p, std::move(sols));
            fill_positive_tables(p);
            out.top = p;
        }
        out.graded = std::move(gr_);
        out.elements = std::move(elems_);
        return out;
    }

private:
    // unknown layout: consecutive blocks phi_1 .. phi_mu, each row-major
    std::map<int, int> offsets(int p, int* total) const {
        std::map<int, int> off;
        int u = 0;
        for (int h = 1; h <= mu_; ++h) {
            off[h] = u;
            u += gr_.dim(p - h) * m_.dim(-h);
        }
        *total = u;
        return off;
    }

    Matrix<K> system_matrix(int p, bool /*tag*/) const {
        int U = 0;
        std::map<int, int> off = offsets(p, &U);
        std::vector<Vec<K>> rows;
        for (int a = 1; a <= mu_; ++a)
            for (int b = a; b <= mu_; ++b) {
                int d = p - a - b;
                int dt = gr_.dim(d);
                if (dt == 0) continue;
                for (int i = 0; i < m_.dim(-a); ++i)
                    for (int j = (a == b ? i + 1 : 0); j < m_.dim(-b); ++j) {
                        Vec<K> w = m_.bracket_basis(-a, i, -b, j);
                        for (int r = 0; r < dt; ++r) {
                            Vec<K> row(U, K(0));
                            if (a + b <= mu_)
                                for (int s = 0; s < m_.dim(-a - b); ++s)
                                    if (!is_zero(w[s]))
                                        row[off.at(a + b) + r * m_.dim(-a - b) + s] += w[s];
                            for (int t = 0; t < gr_.dim(p - a); ++t) {
                                Vec<K> bb = gr_.bracket_basis(p - a, t, -b, j);
                                if (!is_zero(bb[r]))
                                    row[off.at(a) + t * m_.dim(-a) + i] -= bb[r];
                            }
                            for (int t = 0; t < gr_.dim(p - b); ++t) {
                                Vec<K> bb = gr_.bracket_basis(-a, i, p - b, t);
                                if (!is_zero(bb[r]))
                                    row[off.at(b) + t * m_.dim(-b) + j] -= bb[r];
                            }
                            rows.push_back(std::move(row));
                        }
                    }
            }
        if (p == 0) append_degree_zero_rows(off, U, rows);
        return rows_to_matrix(rows, U);
    }

    // commuting with J, and lying inside the prescribed span of phi_1 blocks
    void append_degree_zero_rows(const std::map<int, int>& off, int U,
                                 std::vector<Vec<K>>& rows) const {
        int m1 = m_.dim(-1);
        int o1 = off.at(1);
        if (J_) {
            for (int r = 0; r < m1; ++r)
                for (int c = 0; c < m1; ++c) {
                    Vec<K> row(U, K(0));
                    for (int u = 0; u < m1; ++u) {
                        row[o1 + u * m1 + c] += J_->at(r, u);
                        row[o1 + r * m1 + u] -= J_->at(u, c);
                    }
                    if (!vec_is_zero(row)) rows.push_back(std::move(row));
                }
        }
        if (g0_) {
            for (int t = 0; t < m1 * m1; ++t) {
                Vec<K> row(U, K(0));
                row[o1 + t] += K(1);
                for (int i = 0; i < g0_->dim(); ++i)
                    row[o1 + g0_->pivots()[i]] -= g0_->basis_vector(i)[t];
                if (!vec_is_zero(row)) rows.push_back(std::move(row));
            }
        }
    }

    // a solution with vanishing phi_1 must vanish entirely
    void check_injectivity(int p, const Matrix<K>& sols) const {
        int m1 = m_.dim(-1);
        int blk = gr_.dim(p - 1) * m1;
        Matrix<K> sub(sols.nrows, blk);
        for (int r = 0; r < sols.nrows; ++r)
            for (int c = 0; c < blk; ++c) sub.at(r, c) = sols.at(r, c);
        if (rank(std::move(sub)) != sols.nrows)
            throw Error("InternalCheck",
                        "a prolongation element is not determined by its "
                        "restriction to G_{-1}");
    }

    void compute_degree_zero() {
        Matrix<K> sols = kernel(system_matrix(0, true));
        check_injectivity(0, sols);
        if (g0_) {
            int m1 = m_.dim(-1);
            Subspace<K> eff = *g0_;
            if (J_) {
                std::vector<Vec<K>> jrows;
                for (int r = 0; r < m1; ++r)
                    for (int c = 0; c < m1; ++c) {
                        Vec<K> row(m1 * m1, K(0));
                        for (int u = 0; u < m1; ++u) {
                            row[u * m1 + c] += J_->at(r, u);
                            row[r * m1 + u] -= J_->at(u, c);
                        }
                        jrows.push_back(std::move(row));
                    }
                Subspace<K> comm = Subspace<K>::from_rows(
                    m1 * m1, kernel(rows_to_matrix(jrows, m1 * m1)));
                eff = eff.intersect(comm);
            }
            if (sols.nrows != eff.dim())
                throw Error("NotDerivations",
                            "an element of g0 does not extend to a derivation "
                            "of m");
        }
        if (sols.nrows > 0) {
            append_component(0, std::move(sols));
            fill_positive_tables(0);
        }
    }

    void append_component(int p, Matrix<K> sols) {
        int U = 0;
        std::map<int, int> off = offsets(p, &U);
        int k = sols.nrows;
        gr_.set_component(p, k);
        std::vector<PositiveElement<K>>& basis = elems_[p];
        for (int r = 0; r < k; ++r) {
            PositiveElement<K> e;
            for (int h = 1; h <= mu_; ++h) {
                int dt = gr_.dim(p - h), ds = m_.dim(-h);
                Matrix<K> mat(dt, ds);
                for (int t = 0; t < dt; ++t)
                    for (int s = 0; s < ds; ++s)
                        mat.at(t, s) = sols.at(r, off.at(h) + t * ds + s);
                e.phi[h] = std::move(mat);
            }
            basis.push_back(std::move(e));
        }
        for (int r = 0; r < k; ++r)
            for (int h = 1; h <= mu_; ++h) {
                if (gr_.dim(p - h) == 0) continue;
                const Matrix<K>& mat = basis[r].phi.at(h);
                for (int s = 0; s < m_.dim(-h); ++s) {
                    Vec<K> col(mat.nrows);
                    for (int t = 0; t < mat.nrows; ++t) col[t] = mat.at(t, s);
                    gr_.set_bracket(p, r, -h, s, std::move(col));
                }
            }
        solvers_[p] = std::make_unique<LinearSolver<K>>(sols.transpose());
    }

    Vec<K> flatten_element(int p, const PositiveElement<K>& e) const {
        int U = 0;
        std::map<int, int> off = offsets(p, &U);
        Vec<K> out(U, K(0));
        for (int h = 1; h <= mu_; ++h) {
            int ds = m_.dim(-h);
            const Matrix<K>& mat = e.phi.at(h);
            for (int t = 0; t < mat.nrows; ++t)
                for (int s = 0; s < ds; ++s)
                    out[off.at(h) + t * ds + s] = mat.at(t, s);
        }
        return out;
    }

    void fill_positive_tables(int p) {
        for (int a = 0; 2 * a <= p; ++a) {
            int b = p - a;
            if (gr_.dim(a) == 0 || gr_.dim(b) == 0) continue;
            for (int i = 0; i < gr_.dim(a); ++i)
                for (int j = (a == b ? i + 1 : 0); j < gr_.dim(b); ++j) {
                    PositiveElement<K> lam;
                    for (int h = 1; h <= mu_; ++h) {
                        int dt = gr_.dim(p - h), ds = m_.dim(-h);
                        Matrix<K> mat(dt, ds);
                        for (int s = 0; s < ds; ++s) {
                            const Matrix<K>& tj = elems_.at(b)[j].phi.at(h);
                            const Matrix<K>& ti = elems_.at(a)[i].phi.at(h);
                            Vec<K> zj(tj.nrows), zi(ti.nrows);
                            for (int t = 0; t < tj.nrows; ++t) zj[t] = tj.at(t, s);
                            for (int t = 0; t < ti.nrows; ++t) zi[t] = ti.at(t, s);
                            Vec<K> t1 = gr_.bracket(a, gr_.unit_vec(a, i), b - h, zj);
                            Vec<K> t2 = gr_.bracket(b, gr_.unit_vec(b, j), a - h, zi);
                            for (int t = 0; t < dt; ++t) mat.at(t, s) = t1[t] - t2[t];
                        }
                        lam.phi[h] = std::move(mat);
                    }
                    auto c = solvers_.at(p)->solve(flatten_element(p, lam));
                    if (!c) {
                        if (p == 0 && g0_)
                            throw Error("NotDerivations",
                                        "g0 is not closed under the commutator");
                        throw Error("InternalCheck",
                                    "bracket of prolongation elements leaves "
                                    "the computed component");
                    }
                    gr_.set_bracket(a, i, b, j, std::move(*c));
                }
        }
    }

    GradedLieAlgebra<K> m_;
    std::optional<Subspace<K>> g0_;
    std::optional<Matrix<K>> J_;
    int mu_ = 0;
    GradedLieAlgebra<K> gr_;
    std::map<int, std::vector<PositiveElement<K>>> elems_;
    std::map<int, std::unique_ptr<LinearSolver<K>>> solvers_;
};

} // namespace detail

// Tanaka prolongation of m with prescribed degree-0 part, computed out to
// max_degree.  g0 is a span of flattened G_{-1} endomorphisms; when absent
// the full derivation algebra of m is used.  When J is given, degree 0 is
// additionally cut down to J-commuting maps.  Once some G_p vanishes every
// higher component vanishes, so the loop stops there.
template <class K>
Prolongation<K> tanaka_prolong(const GradedLieAlgebra<K>& m,
                               const std::optional<Subspace<K>>& g0_phi1,
                               int max_degree,
                               const std::optional<Matrix<K>>& J = std::nullopt) {
    detail::Prolonger<K> pr(m, g0_phi1, J);
    return pr.run(max_degree);
}

struct FinitenessReport {
    int first_zero = -1;
    int total_dim = 0;
    bool gprime_vanishes = false; // G'_{2k+1} = 0
};

template <class K>
FinitenessReport finiteness_check(const Prolongation<K>& P, int k) {
    if (!P.terminated)
        throw Error("CapReached",
                    "prolongation did not terminate below the degree cap");
    FinitenessReport rep;
    rep.first_zero = P.first_zero;
    rep.total_dim = P.graded.total_dim();
    int d = 2 * k + 1;
    if (P.graded.dim(d) == 0)
        rep.gprime_vanishes = true;
    else
        rep.gprime_vanishes = g_prime(P.graded).at(d).dim() == 0;
    return rep;
}

// Everything needed to prolong the symbol of a CR algebra: the associated
// graded of its associated triple, the negative part, and the complex
// structure on G_{-1}.
struct CRProlongSetup {
    AssociatedGraded<Rat> ag;
    GradedLieAlgebra<Rat> m;
    Matrix<Rat> J;
};

inline CRProlongSetup cr_prolong_setup(const CRAlgebra& c) {
    ContactTriple<Rat> t = associated_triple(c);
    ContactFiltration<Rat> f = contact_filtration(t.pair);
    CRProlongSetup out{associated_graded(t.pair.algebra, f), {}, {}};
    out.m = negative_part(out.ag.graded);
    out.J = complex_structure(c, out.ag).J;
    return out;
}

} // namespace crlab
