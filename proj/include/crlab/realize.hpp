#pragma once
// Star realizations of a pair (g0, h0) on a complement of the isotropy:
// exact recursive series for the right/left fields together with their
// isotropy corrections, the realization kernel, generated field modules,
// and truncated symmetry dimensions.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crlab/contact.hpp"
#include "crlab/formal.hpp"
#include "crlab/lie.hpp"

namespace crlab {

namespace detail {

// unit vectors at the non-pivot coordinates of h0: a deterministic complement
template <class K>
std::vector<Vec<K>> complement_frame(const Subspace<K>& h0, int n) {
    std::vector<char> used(n, 0);
    for (int p : h0.pivots()) used[p] = 1;
    std::vector<Vec<K>> frame;
    for (int i = 0; i < n; ++i)
        if (!used[i]) {
            Vec<K> e(n, K(0));
            e[i] = K(1);
            frame.push_back(std::move(e));
        }
    return frame;
}

} // namespace detail

// The four series attached to one X, in ambient coordinates: R*_X and L*_X
// take values in the complement V, the corrections H' and H in h0.
template <class K>
struct StarFields {
    PolyVec<K> rstar, hprime, lstar, hfield;
};

template <class K>
class StarRealization {
public:
    StarRealization(const LieAlgebra<K>& g, const Subspace<K>& h0, int order,
                    std::optional<std::vector<Vec<K>>> frame = std::nullopt)
        : g_(g), h0_(h0), order_(order) {
        int n = g_.dim();
        if (order_ < 0) throw Error("BadArgument", "order must be nonnegative");
        if (h0_.ambient() != n)
            throw Error("DimensionMismatch", "isotropy lives in the wrong space");
        if (!is_subalgebra(g_, h0_))
            throw Error("NotSubalgebra", "isotropy candidate is not a subalgebra");
        frame_ = frame ? std::move(*frame) : detail::complement_frame(h0_, n);
        int v = int(frame_.size());
        if (v + h0_.dim() != n)
            throw Error("ComplementInvalid", "complement has the wrong dimension");
        Matrix<K> cols(n, n);
        for (int j = 0; j < v; ++j) {
            if (int(frame_[j].size()) != n)
                throw Error("ComplementInvalid", "complement vector has the wrong size");
            for (int i = 0; i < n; ++i) cols.at(i, j) = frame_[j][i];
        }
        for (int j = 0; j < h0_.dim(); ++j) {
            Vec<K> b = h0_.basis_vector(j);
            for (int i = 0; i < n; ++i) cols.at(i, v + j) = b[i];
        }
        // invert [frame | h0]: the top rows of the inverse are the V-coordinates
        LinearSolver<K> split(cols);
        vc_ = Matrix<K>(v, n);
        for (int i = 0; i < n; ++i) {
            Vec<K> e(n, K(0));
            e[i] = K(1);
            auto c = split.solve(e);
            if (!c)
                throw Error("ComplementInvalid", "complement does not split the algebra");
            for (int r = 0; r < v; ++r) vc_.at(r, i) = (*c)[r];
        }
        Matrix<K> fr(n, v);
        for (int j = 0; j < v; ++j)
            for (int i = 0; i < n; ++i) fr.at(i, j) = frame_[j][i];
        frame_mat_ = fr;
        pi_ = fr * vc_;
        adq_ = AdOperator<K>::for_frame(g_, frame_);
        b_ = bch_coefficients(order_).b;
    }

    const LieAlgebra<K>& algebra() const { return g_; }
    const Subspace<K>& isotropy() const { return h0_; }
    const std::vector<Vec<K>>& frame() const { return frame_; }
    int order() const { return order_; }
    int vdim() const { return int(frame_.size()); }

    // projection onto V along h0, in ambient coordinates
    Vec<K> project(const Vec<K>& x) const { return pi_.apply(x); }
    // frame coordinates of an ambient vector (its V-part)
    Vec<K> vcoords(const Vec<K>& x) const { return vc_.apply(x); }
    // back from frame coordinates to the ambient vector in V
    Vec<K> from_vcoords(const Vec<K>& c) const { return frame_mat_.apply(c); }

    // The recursions for x_h / h'_h (right fields) and y_h / h_h (left
    // fields).  Both start from the splitting X = pi(X) + (X - pi(X)); the
    // degree h+1 terms feed the corrections back through ad(q):
    //   x_{h+1} = pi( (-1)^{h+1} b_{h+1} ad(q)^{h+1} X
    //                 - sum_r b_{r+1} ad(q)^{r+1} h'_{h-r} )
    // and the left series is the same with all signs positive.
    StarFields<K> star_for(const Vec<K>& X) const {
        int n = g_.dim();
        if (int(X.size()) != n)
            throw Error("DimensionMismatch", "vector has the wrong size");
        int v = vdim();
        Vec<K> x0 = project(X);
        Vec<K> c0(n);
        for (int i = 0; i < n; ++i) c0[i] = X[i] - x0[i];
        StarFields<K> out{PolyVec<K>::constant(v, x0), PolyVec<K>::constant(v, c0),
                          PolyVec<K>::constant(v, x0), PolyVec<K>::constant(v, c0)};
        std::vector<PolyVec<K>> hp{out.hprime}, hh{out.hfield};
        PolyVec<K> pw = PolyVec<K>::constant(v, X);
        for (int h = 0; h + 1 <= order_; ++h) {
            pw = adq_(pw); // ad(q)^{h+1} X, homogeneous of degree h+1
            K bh = K(b_[h + 1]);
            PolyVec<K> tr = pw.scaled((h + 1) % 2 == 0 ? bh : -bh);
            PolyVec<K> tl = pw.scaled(bh);
            for (int r = 0; r <= h; ++r) {
                PolyVec<K> ar = hp[h - r];
                PolyVec<K> al = hh[h - r];
                for (int k = 0; k <= r; ++k) {
                    ar = adq_(ar);
                    al = adq_(al);
                }
                K br = K(b_[r + 1]);
                tr = tr - ar.scaled(br);
                tl = tl - al.scaled(br);
            }
            PolyVec<K> xr = tr.mapped(pi_);
            PolyVec<K> xl = tl.mapped(pi_);
            hp.push_back(tr - xr);
            hh.push_back(tl - xl);
            out.rstar = out.rstar + xr;
            out.lstar = out.lstar + xl;
            out.hprime = out.hprime + hp.back();
            out.hfield = out.hfield + hh.back();
        }
        return out;
    }

    // R*_X and L*_X as square fields in frame coordinates
    TruncatedVectorField<K> r_star_field(const Vec<K>& X) const {
        return TruncatedVectorField<K>(order_, star_for(X).rstar.mapped(vc_));
    }
    TruncatedVectorField<K> l_star_field(const Vec<K>& X) const {
        return TruncatedVectorField<K>(order_, star_for(X).lstar.mapped(vc_));
    }

private:
    LieAlgebra<K> g_;
    Subspace<K> h0_;
    std::vector<Vec<K>> frame_;
    int order_;
    Matrix<K> vc_;        // ambient -> frame coordinates (and kills h0)
    Matrix<K> frame_mat_; // frame coordinates -> ambient
    Matrix<K> pi_;        // projection onto V along h0
    AdOperator<K> adq_;
    std::vector<Rat> b_;
};

// One-shot form: the four series of X for a pair with a chosen complement.
template <class K>
StarFields<K> star_fields(const LieAlgebra<K>& g, const Subspace<K>& h0,
                          const std::vector<Vec<K>>& complement, const Vec<K>& X,
                          int N) {
    return StarRealization<K>(g, h0, N, complement).star_for(X);
}

// {X | R*_X = 0 mod order N}: the kernel of the realization.  At N >= dim g0
// the truncation is deep enough to detect every element of the largest ideal
// of g0 inside h0, which this kernel equals.
template <class K>
Subspace<K> realization_kernel(const LieAlgebra<K>& g, const Subspace<K>& h0,
                               int N = -1) {
    int n = g.dim();
    if (N < 0) N = n;
    if (N < n)
        throw Error("BadArgument",
                    "truncation order below dim g0 cannot certify the kernel");
    StarRealization<K> st(g, h0, N);
    std::vector<PolyVec<K>> fields;
    fields.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec<K> e(n, K(0));
        e[i] = K(1);
        fields.push_back(st.star_for(e).rstar);
    }
    // coefficient matrix of X -> R*_X over the basis; its kernel is the answer
    std::map<std::pair<Mono, int>, Vec<K>> rows;
    for (int i = 0; i < n; ++i)
        for (const auto& [m, vv] : fields[i].terms)
            for (int t = 0; t < n; ++t) {
                if (crlab::is_zero(vv[t])) continue;
                auto [it, fresh] = rows.try_emplace({m, t});
                if (fresh) it->second.assign(n, K(0));
                it->second[i] = vv[t];
            }
    std::vector<Vec<K>> rv;
    rv.reserve(rows.size());
    for (auto& [key, row] : rows) rv.push_back(std::move(row));
    return Subspace<K>::from_rows(n, kernel(rows_to_matrix(rv, n)));
}

// Truncated generators of the field module attached to an invariant
// distribution, with the evaluation-at-zero recovery check.
template <class K>
struct GeneratedModule {
    StarRealization<K> star;
    std::vector<Vec<K>> generators;              // basis of V cap dist, ambient
    std::vector<TruncatedVectorField<K>> fields; // L* of each generator, frame coords
    Subspace<K> recovered;
};

template <class K>
GeneratedModule<K> module_generated(const LieAlgebra<K>& g, const Subspace<K>& h0,
                                    const Subspace<K>& dist, int N,
                                    std::optional<std::vector<Vec<K>>> frame = std::nullopt) {
    int n = g.dim();
    if (dist.ambient() != n)
        throw Error("DimensionMismatch", "distribution lives in the wrong space");
    if (!h0.leq(dist))
        throw Error("ModuleConditionsViolated",
                    "isotropy is not contained in the distribution");
    if (!bracket_space(g, h0, dist).leq(dist))
        throw Error("ModuleConditionsViolated",
                    "distribution is not stable under the isotropy");
    StarRealization<K> st(g, h0, N, std::move(frame));
    Subspace<K> vspan = Subspace<K>::from_vectors(n, st.frame());
    Subspace<K> inter = vspan.intersect(dist);
    if (inter.dim() + h0.dim() != dist.dim())
        throw Error("InternalCheck", "complement does not split the distribution");
    GeneratedModule<K> out{std::move(st), {}, {}, {}};
    std::vector<Vec<K>> at0;
    for (int i = 0; i < inter.dim(); ++i) {
        Vec<K> w = inter.basis_vector(i);
        out.fields.push_back(out.star.l_star_field(w));
        at0.push_back(out.star.from_vcoords(out.fields.back().value_at_zero()));
        out.generators.push_back(std::move(w));
    }
    Subspace<K> rec = Subspace<K>::from_vectors(n, at0).sum(h0);
    if (rec != dist)
        throw Error("InternalCheck",
                    "module recovery does not reproduce the distribution");
    out.recovered = std::move(rec);
    return out;
}

// Membership of a truncated field in the F-span of the generator fields,
// decided by one exact linear solve over the coefficient unknowns.
template <class K>
bool in_module(const PolyVec<K>& field,
               const std::vector<TruncatedVectorField<K>>& gens, int order) {
    if (gens.empty()) {
        PolyVec<K> tr = field;
        tr.truncate(order);
        return tr.is_zero();
    }
    int nvars = gens.front().f.nvars;
    std::vector<Mono> fmon;
    for (int d = 0; d <= order; ++d)
        for (const Mono& m : monomials_of_degree(nvars, d)) fmon.push_back(m);
    int G = int(gens.size()), M = int(fmon.size());
    std::map<std::pair<Mono, int>, int> rowid;
    auto rid = [&](const Mono& m, int t) {
        return rowid.try_emplace({m, t}, int(rowid.size())).first->second;
    };
    std::vector<std::map<int, K>> cols(size_t(G) * M);
    for (int l = 0; l < G; ++l)
        for (int k = 0; k < M; ++k) {
            PolyVec<K> p = gens[l].f.shifted(fmon[k]);
            p.truncate(order);
            for (const auto& [m, vv] : p.terms)
                for (int t = 0; t < int(vv.size()); ++t)
                    if (!crlab::is_zero(vv[t])) cols[size_t(l) * M + k][rid(m, t)] = vv[t];
        }
    PolyVec<K> tr = field;
    tr.truncate(order);
    std::vector<std::pair<int, K>> rhs;
    for (const auto& [m, vv] : tr.terms)
        for (int t = 0; t < int(vv.size()); ++t)
            if (!crlab::is_zero(vv[t])) rhs.emplace_back(rid(m, t), vv[t]);
    int R = int(rowid.size());
    Matrix<K> A(R, G * M);
    for (int c = 0; c < G * M; ++c)
        for (const auto& [r, val] : cols[c]) A.at(r, c) = val;
    Vec<K> b(R, K(0));
    for (const auto& [r, val] : rhs) b[r] = val;
    return solve(A, b).has_value();
}

// Dimension of the truncated symmetry space, order by order.  dims[n] is the
// rank of the jet-n projection of the solution space, so the table is
// nondecreasing in n.
struct SymmetryTable {
    std::vector<int> dims; // dims[n] for orders n = 0..N
    bool stabilized = false;
    int stable_at = -1;    // first order of the detected plateau
    int stable_value = -1;
};

namespace detail {

// Longest run of equal consecutive values, of length at least three.  The
// entries next to the top order sit inside the band the truncated condition
// cannot determine and rise again, so a genuine plateau is interior.
inline void scan_stabilization(SymmetryTable& t) {
    int n = int(t.dims.size());
    int best_len = 0, best_at = -1;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && t.dims[j] == t.dims[i]) ++j;
        if (j - i >= best_len) {
            best_len = j - i;
            best_at = i;
        }
        i = j;
    }
    if (best_len >= 3) {
        t.stabilized = true;
        t.stable_at = best_at;
        t.stable_value = t.dims[best_at];
    }
}

} // namespace detail

// Symmetries of the field module of a complex distribution q inside the
// complexification.  A symmetry is a real truncated field Theta with
// [Theta, L*_w] inside the truncated module for every generator w; the
// deepest truncation (order N, condition to order N-1) is solved as one
// exact linear system in the coefficients of Theta and of the module
// combination.  The reported dims[n] is the rank of the solution space
// projected onto jets of order n: the part of an order-n field certified by
// the full depth of conditions.  Raw solution counts are not reported
// because the top few coefficient degrees of any truncated solution are
// never fully constrained (the bracket loses one order), which inflates
// them by an artifact that grows with N.
inline SymmetryTable truncated_symmetries(const LieAlgebra<Rat>& g,
                                          const Subspace<Rat>& h0,
                                          const Subspace<Gauss>& dist, int N) {
    int n = g.dim();
    if (N < 0) throw Error("BadArgument", "order must be nonnegative");
    if (dist.ambient() != n)
        throw Error("DimensionMismatch", "distribution lives in the wrong space");
    // a real complement frame keeps the formal variables real after
    // complexification, so Theta below can be a real field
    auto frame_r = detail::complement_frame<Rat>(h0, n);
    std::vector<Vec<Gauss>> frame_c;
    frame_c.reserve(frame_r.size());
    for (const auto& f : frame_r) frame_c.push_back(complexify_vec(f));
    auto mod = module_generated<Gauss>(complexify(g), complexify_subspace(h0), dist,
                                       N, std::move(frame_c));
    int v = int(frame_r.size());
    int G = int(mod.fields.size());

    std::vector<Mono> tmon, fmon; // sorted by degree
    for (int d = 0; d <= N; ++d)
        for (const Mono& m : monomials_of_degree(v, d)) tmon.push_back(m);
    for (int d = 0; d + 1 <= N; ++d)
        for (const Mono& m : monomials_of_degree(v, d)) fmon.push_back(m);
    std::map<Mono, int> findex;
    for (int k = 0; k < int(fmon.size()); ++k) findex.emplace(fmon[k], k);
    std::vector<int> mcount(N + 1, 0); // monomials of degree <= d
    {
        int c = 0;
        for (int d = 0; d <= N; ++d) {
            c += int(monomials_of_degree(v, d).size());
            mcount[d] = c;
        }
    }

    // brackets of the Theta coordinate fields with each generator, full order
    int T = int(tmon.size()) * v;
    std::vector<std::vector<PolyVec<Gauss>>> btab(T);
    if (N >= 1)
        for (int mi = 0; mi < int(tmon.size()); ++mi)
            for (int t = 0; t < v; ++t) {
                PolyVec<Gauss> E = PolyVec<Gauss>::zero(v, v);
                Vec<Gauss> e(v, Gauss(0));
                e[t] = Gauss(1);
                E.add(tmon[mi], e);
                auto& row = btab[mi * v + t];
                row.reserve(G);
                for (int j = 0; j < G; ++j) {
                    PolyVec<Gauss> B = directional_derivative(mod.fields[j].f, E) -
                                       directional_derivative(E, mod.fields[j].f);
                    B.truncate(N - 1);
                    row.push_back(std::move(B));
                }
            }
    // generator products with scalar monomials, full order
    std::vector<std::vector<PolyVec<Gauss>>> ptab(G);
    for (int l = 0; l < G; ++l) {
        ptab[l].reserve(fmon.size());
        for (const Mono& mu : fmon) {
            PolyVec<Gauss> p = mod.fields[l].f.shifted(mu);
            p.truncate(N - 1);
            ptab[l].push_back(std::move(p));
        }
    }

    SymmetryTable out;
    if (N == 0) {
        out.dims.push_back(v); // constants, nothing to bracket against yet
        return out;
    }
    int tc = mcount[N] * v;           // Theta unknowns
    int fc = mcount[N - 1];           // scalar monomials per module coefficient
    int ucount = tc + G * G * fc * 2; // module coefficients split re/im
    int rcount = G * fc * v * 2;
    Matrix<Rat> A(rcount, ucount);
    auto row_of = [&](int j, const Mono& m, int t) {
        return ((j * fc + findex.at(m)) * v + t) * 2;
    };
    for (int mi = 0; mi < int(tmon.size()); ++mi)
        for (int t = 0; t < v; ++t) {
            int col = mi * v + t;
            for (int j = 0; j < G; ++j)
                for (const auto& [m, vv] : btab[mi * v + t][j].terms)
                    for (int tp = 0; tp < v; ++tp) {
                        if (crlab::is_zero(vv[tp])) continue;
                        int r0 = row_of(j, m, tp);
                        A.at(r0, col) += vv[tp].re;
                        A.at(r0 + 1, col) += vv[tp].im;
                    }
        }
    for (int j = 0; j < G; ++j)
        for (int l = 0; l < G; ++l)
            for (int k = 0; k < fc; ++k) {
                int cre = tc + ((j * G + l) * fc + k) * 2;
                for (const auto& [m, vv] : ptab[l][k].terms)
                    for (int tp = 0; tp < v; ++tp) {
                        if (crlab::is_zero(vv[tp])) continue;
                        int r0 = row_of(j, m, tp);
                        A.at(r0, cre) -= vv[tp].re;
                        A.at(r0, cre + 1) += vv[tp].im;
                        A.at(r0 + 1, cre) -= vv[tp].im;
                        A.at(r0 + 1, cre + 1) -= vv[tp].re;
                    }
            }
    Matrix<Rat> ker = kernel(A);
    for (int n = 0; n <= N; ++n) {
        int pc = mcount[n] * v;
        Matrix<Rat> proj(ker.nrows, pc);
        for (int r = 0; r < ker.nrows; ++r)
            for (int c = 0; c < pc; ++c) proj.at(r, c) = ker.at(r, c);
        out.dims.push_back(rank(std::move(proj)));
    }
    detail::scan_stabilization(out);
    return out;
}

// Real distribution: its symmetries agree with those of the complexified
// module, which the complex path computes.
inline SymmetryTable truncated_symmetries(const LieAlgebra<Rat>& g,
                                          const Subspace<Rat>& h0,
                                          const Subspace<Rat>& dist, int N) {
    return truncated_symmetries(g, h0, complexify_subspace(dist), N);
}

} // namespace crlab
