#pragma once

#include <map>
#include <vector>

#include "lie.hpp"

namespace crlab {

// Monomials are exponent vectors over a fixed set of variables; polynomial
// data is kept sparse, keyed by monomial in lexicographic order.
using Mono = std::vector<int>;

inline int mono_degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

inline std::vector<Mono> monomials_of_degree(int nvars, int d) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    // lexicographic backtracking enumeration
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, d);
    return out;
}

// Polynomial map from the variable space into K^dim.
template <class K>
struct PolyVec {
    int nvars = 0;
    int dim = 0;
    std::map<Mono, Vec<K>> terms; // zero coefficient vectors are never stored

    static PolyVec zero(int nvars, int dim) { return {nvars, dim, {}}; }
    static PolyVec constant(int nvars, Vec<K> v) {
        PolyVec p{nvars, int(v.size()), {}};
        p.add(Mono(nvars, 0), std::move(v));
        return p;
    }

    void add(const Mono& m, const Vec<K>& v) {
        if (vec_is_zero(v)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, v);
            return;
        }
        for (int i = 0; i < dim; ++i) it->second[i] += v[i];
        if (vec_is_zero(it->second)) terms.erase(it);
    }

    bool is_zero() const { return terms.empty(); }
    int degree() const {
        int d = -1;
        for (const auto& [m, v] : terms) d = std::max(d, mono_degree(m));
        return d;
    }

    Vec<K> value_at_zero() const {
        auto it = terms.find(Mono(nvars, 0));
        return it == terms.end() ? Vec<K>(dim, K(0)) : it->second;
    }

    PolyVec degree_part(int h) const {
        PolyVec p{nvars, dim, {}};
        for (const auto& [m, v] : terms)
            if (mono_degree(m) == h) p.terms.emplace(m, v);
        return p;
    }

    void truncate(int maxdeg) {
        for (auto it = terms.begin(); it != terms.end();)
            it = mono_degree(it->first) > maxdeg ? terms.erase(it) : std::next(it);
    }

    friend PolyVec operator+(PolyVec a, const PolyVec& b) {
        for (const auto& [m, v] : b.terms) a.add(m, v);
        return a;
    }
    friend PolyVec operator-(PolyVec a, const PolyVec& b) {
        PolyVec nb = b.scaled(K(-1));
        for (const auto& [m, v] : nb.terms) a.add(m, v);
        return a;
    }
    PolyVec scaled(const K& c) const {
        PolyVec p{nvars, dim, {}};
        if (crlab::is_zero(c)) return p;
        for (const auto& [m, v] : terms) {
            Vec<K> w = v;
            for (auto& x : w) x = x * c;
            p.terms.emplace(m, std::move(w));
        }
        return p;
    }
    friend bool operator==(const PolyVec& a, const PolyVec& b) {
        return a.nvars == b.nvars && a.dim == b.dim && a.terms == b.terms;
    }

    // coefficients mapped through a matrix
    PolyVec mapped(const Matrix<K>& mat) const {
        PolyVec p{nvars, mat.nrows, {}};
        for (const auto& [m, v] : terms) p.add(m, mat.apply(v));
        return p;
    }

    // multiplication by the variable q_i
    PolyVec shifted(int i) const {
        PolyVec p{nvars, dim, {}};
        for (const auto& [m, v] : terms) {
            Mono m2 = m;
            ++m2[i];
            p.terms.emplace(std::move(m2), v);
        }
        return p;
    }

    // multiplication by a full monomial
    PolyVec shifted(const Mono& mu) const {
        PolyVec p{nvars, dim, {}};
        for (const auto& [m, v] : terms) {
            Mono m2 = m;
            for (int i = 0; i < nvars; ++i) m2[i] += mu[i];
            p.terms.emplace(std::move(m2), v);
        }
        return p;
    }

    std::map<Mono, K> component(int t) const {
        std::map<Mono, K> out;
        for (const auto& [m, v] : terms)
            if (!crlab::is_zero(v[t])) out.emplace(m, v[t]);
        return out;
    }

    Vec<K> evaluate(const Vec<K>& q) const {
        Vec<K> out(dim, K(0));
        for (const auto& [m, v] : terms) {
            K c(1);
            for (int i = 0; i < nvars; ++i)
                for (int e = 0; e < m[i]; ++e) c *= q[i];
            for (int t = 0; t < dim; ++t) out[t] += c * v[t];
        }
        return out;
    }
};

// Scalar formal power series kept to a finite order.  Homogeneous parts are
// stored through their monomial coefficients; the symmetric multilinear form
// of degree h is recovered by polarization, so every stored component is
// automatically its own symmetrization.
template <class K>
struct TruncatedSeries {
    int order = 0;
    int nvars = 0;
    std::map<Mono, K> terms;

    static TruncatedSeries zero(int N, int nvars) { return {N, nvars, {}}; }

    void add(const Mono& m, const K& c) {
        if (mono_degree(m) > order) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (crlab::is_zero(it->second)) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    K value_at_zero() const {
        auto it = terms.find(Mono(nvars, 0));
        return it == terms.end() ? K(0) : it->second;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a.order = std::min(a.order, b.order);
        for (const auto& [m, c] : b.terms) a.add(m, c);
        for (auto it = a.terms.begin(); it != a.terms.end();)
            it = mono_degree(it->first) > a.order ? a.terms.erase(it) : std::next(it);
        return a;
    }
    // truncated product: degrees above the smaller order are dropped
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries p{std::min(a.order, b.order), a.nvars, {}};
        for (const auto& [m, c] : a.terms)
            for (const auto& [mu, d] : b.terms) {
                Mono prod(a.nvars);
                for (int i = 0; i < a.nvars; ++i) prod[i] = m[i] + mu[i];
                p.add(prod, c * d);
            }
        return p;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
};

// Directional derivative DB[U]: the differential of B applied to the
// (polynomial) vector U; degree drops by one and rises by deg U.
template <class K>
PolyVec<K> directional_derivative(const PolyVec<K>& B, const PolyVec<K>& U) {
    if (B.nvars != U.dim)
        throw Error("DimensionMismatch", "direction does not match the variables");
    PolyVec<K> out{B.nvars, B.dim, {}};
    for (const auto& [m, c] : B.terms)
        for (int i = 0; i < B.nvars; ++i) {
            if (m[i] == 0) continue;
            Mono dm = m;
            --dm[i];
            K factor = K(long(m[i]));
            for (const auto& [mu, uv] : U.terms) {
                if (crlab::is_zero(uv[i])) continue;
                Mono prod(B.nvars);
                for (int t = 0; t < B.nvars; ++t) prod[t] = dm[t] + mu[t];
                Vec<K> w = c;
                for (auto& x : w) x = x * factor * uv[i];
                out.add(prod, w);
            }
        }
    return out;
}

// Formal vector field on the variable space, kept to a finite order.
template <class K>
struct TruncatedVectorField {
    int order = 0;
    PolyVec<K> f;

    TruncatedVectorField() = default;
    TruncatedVectorField(int N, PolyVec<K> p) : order(N), f(std::move(p)) {
        if (f.dim != f.nvars)
            throw Error("DimensionMismatch", "vector field must map V to V");
        f.truncate(order);
    }

    Vec<K> value_at_zero() const { return f.value_at_zero(); }
};

// [A, B](q) = DB(q)[A(q)] - DA(q)[B(q)]; one order is consumed.  For linear
// fields q -> Pq, q -> Qq this is the field of QP - PQ.
template <class K>
TruncatedVectorField<K> vf_bracket(const TruncatedVectorField<K>& A,
                                   const TruncatedVectorField<K>& B) {
    if (A.f.nvars != B.f.nvars)
        throw Error("DimensionMismatch", "fields live on different spaces");
    int n = std::min(A.order, B.order);
    if (n < 1) throw Error("OrderExhausted", "no orders left for a bracket");
    PolyVec<K> r = directional_derivative(B.f, A.f) - directional_derivative(A.f, B.f);
    return TruncatedVectorField<K>(n - 1, std::move(r));
}

// Coefficients of t/(1 - exp(-t)), the right-invariant expansion weights.
struct BchCoefficients {
    std::vector<Rat> b;
};

inline BchCoefficients bch_coefficients(int N) {
    if (N < 0) throw Error("BadArgument", "order must be nonnegative");
    // invert sum c_k t^k with c_k = (-1)^k/(k+1)!
    std::vector<Rat> c(N + 1);
    Rat fact(1);
    for (int k = 0; k <= N; ++k) {
        fact *= Rat(k + 1);
        c[k] = Rat(k % 2 == 0 ? 1 : -1) / fact;
    }
    BchCoefficients out;
    out.b.assign(N + 1, Rat(0));
    for (int h = 0; h <= N; ++h) {
        Rat s = h == 0 ? Rat(1) : Rat(0);
        for (int j = 0; j < h; ++j) s -= out.b[j] * c[h - j];
        out.b[h] = s; // c_0 = 1
    }
    return out;
}

// ad(q) as an operator on polynomial data: q ranges over the span of the
// chosen frame, one matrix per variable.
template <class K>
struct AdOperator {
    std::vector<Matrix<K>> amats;

    static AdOperator for_frame(const LieAlgebra<K>& g,
                                const std::vector<Vec<K>>& frame) {
        AdOperator op;
        for (const auto& v : frame) op.amats.push_back(g.ad(v));
        return op;
    }

    PolyVec<K> operator()(const PolyVec<K>& p) const {
        PolyVec<K> out{p.nvars, p.dim, {}};
        for (int i = 0; i < int(amats.size()); ++i)
            out = out + p.mapped(amats[i]).shifted(i);
        return out;
    }
};

// Left and right invariant fields of X in exponential coordinates on the
// whole group: L_X = sum b_h ad(q)^h X, R_X the alternating-sign variant.
template <class K>
struct InvariantFields {
    TruncatedVectorField<K> left;
    TruncatedVectorField<K> right;
};

template <class K>
InvariantFields<K> invariant_fields(const LieAlgebra<K>& g, const Vec<K>& X,
                                    int N) {
    int n = g.dim();
    std::vector<Vec<K>> frame;
    for (int i = 0; i < n; ++i) frame.push_back(g.basis_vector(i));
    AdOperator<K> adq = AdOperator<K>::for_frame(g, frame);
    BchCoefficients bch = bch_coefficients(N);
    PolyVec<K> L = PolyVec<K>::zero(n, n), R = PolyVec<K>::zero(n, n);
    PolyVec<K> cur = PolyVec<K>::constant(n, X);
    for (int h = 0; h <= N; ++h) {
        if (h > 0) cur = adq(cur);
        L = L + cur.scaled(K(bch.b[h]));
        R = R + cur.scaled(h % 2 == 0 ? K(bch.b[h]) : K(-bch.b[h]));
    }
    return {TruncatedVectorField<K>(N, std::move(L)),
            TruncatedVectorField<K>(N, std::move(R))};
}

} // namespace crlab
