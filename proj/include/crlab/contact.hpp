#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lie.hpp"

namespace crlab {

// Span of all brackets [a, b] with a in A, b in B.
template <class K>
Subspace<K> bracket_space(const LieAlgebra<K>& g, const Subspace<K>& a,
                          const Subspace<K>& b) {
    std::vector<Vec<K>> rows;
    rows.reserve(std::size_t(a.dim()) * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            rows.push_back(g.bracket(a.basis_vector(i), b.basis_vector(j)));
    return Subspace<K>::from_vectors(g.dim(), rows);
}

template <class K>
std::vector<Matrix<K>> subspace_ads(const LieAlgebra<K>& g, const Subspace<K>& s) {
    std::vector<Matrix<K>> ads;
    ads.reserve(s.dim());
    for (int i = 0; i < s.dim(); ++i) ads.push_back(g.ad(s.basis_vector(i)));
    return ads;
}

// A Lie algebra together with a distinguished subspace l0. The pair is called
// fundamental when l0 generates the whole algebra under iterated brackets;
// that is a queried property, not a construction requirement.
template <class K>
struct ContactPair {
    LieAlgebra<K> algebra;
    Subspace<K> l0;

    ContactPair(LieAlgebra<K> g, Subspace<K> l) : algebra(std::move(g)), l0(std::move(l)) {
        if (l0.ambient() != algebra.dim())
            throw Error("DimensionMismatch", "l0 lives in the wrong ambient space");
    }
};

template <class K>
bool fundamental(const ContactPair<K>& p) {
    return generated_subalgebra(p.algebra, p.l0).dim() == p.algebra.dim();
}

// h0 is an isotropy subalgebra sitting inside l0.
template <class K>
struct ContactTriple {
    ContactPair<K> pair;
    Subspace<K> h0;
};

template <class K>
ContactTriple<K> make_triple(ContactPair<K> p, Subspace<K> h0) {
    const LieAlgebra<K>& g = p.algebra;
    if (h0.ambient() != g.dim())
        throw Error("DimensionMismatch", "h0 lives in the wrong ambient space");
    if (!is_subalgebra(g, h0))
        throw Error("NotSubalgebra", "h0 is not closed under the bracket");
    if (!h0.leq(p.l0))
        throw Error("NotContainedInL0", "h0 is not contained in l0");
    if (!bracket_space(g, h0, p.l0).leq(p.l0))
        throw Error("NotL0Stable", "[h0, l0] is not contained in l0");
    Subspace<K> ideal = largest_ideal_in(g, h0);
    if (ideal.dim() > 0) {
        std::string detail;
        for (int i = 0; i < ideal.dim(); ++i) {
            if (!detail.empty()) detail += "; ";
            detail += g.print_vec(ideal.basis_vector(i));
        }
        throw Error("NotTransitive", "h0 contains a nonzero ideal of the algebra",
                    detail);
    }
    return ContactTriple<K>{std::move(p), std::move(h0)};
}

// Canonical filtration attached to a pair.  F_{-1} = l0; going down
// F_{h-1} = F_h + [F_h, l0] until the whole algebra is reached (the number of
// steps is the depth); going up F_h = {X in l0 : [X, l0] subset F_{h-1}},
// iterated until it stabilizes.  The stable tail c0 is the largest ideal
// contained in l0 (checked independently in the tests).
template <class K>
struct ContactFiltration {
    std::map<int, Subspace<K>> terms; // h in [-depth, stabilized_at]
    int depth = 0;                    // smallest mu >= 0 with F_{-mu} = g
    int stabilized_at = 0;            // smallest h >= 0 with F_h = F_{h+1}
    Subspace<K> c0;                   // intersection of all F_h
    Subspace<K> whole;                // the full algebra, for clamping

    const Subspace<K>& at(int h) const {
        if (h <= -depth) return whole;
        if (h >= stabilized_at) return c0;
        return terms.at(h);
    }
};

template <class K>
ContactFiltration<K> contact_filtration(const ContactPair<K>& p) {
    const LieAlgebra<K>& g = p.algebra;
    ContactFiltration<K> f;
    f.whole = Subspace<K>::full(g.dim());

    if (p.l0 == f.whole) {
        // degenerate convention: l0 = g gives depth 0 and a constant filtration
        f.depth = 0;
        f.stabilized_at = 0;
        f.c0 = f.whole;
        f.terms[0] = f.whole;
        return f;
    }

    f.terms[-1] = p.l0;
    int h = -1;
    while (!(f.terms.at(h) == f.whole)) {
        const Subspace<K>& cur = f.terms.at(h);
        Subspace<K> next = cur.sum(bracket_space(g, cur, p.l0));
        if (next == cur) {
            std::string detail = "reached dimension " + std::to_string(cur.dim()) +
                                 " of " + std::to_string(g.dim());
            throw Error("NotFundamental", "l0 does not generate the algebra", detail);
        }
        f.terms[h - 1] = std::move(next);
        --h;
    }
    f.depth = -h;

    std::vector<Matrix<K>> ads = subspace_ads(g, p.l0);
    Subspace<K> prev = p.l0; // F_{-1}
    for (int j = 0;; ++j) {
        Subspace<K> cur = stabilizer(p.l0, ads, prev);
        if (cur == prev && j > 0) {
            f.stabilized_at = j - 1;
            f.c0 = std::move(prev);
            break;
        }
        f.terms[j] = cur;
        if (cur == prev) { // F_0 = l0 happens when l0 is a subalgebra
            f.stabilized_at = 0;
            f.c0 = std::move(cur);
            break;
        }
        prev = std::move(cur);
    }
    return f;
}

// True when the nonnegative part of the filtration starts exactly at h0.
template <class K>
bool strict_nondegenerate(const ContactTriple<K>& t, const ContactFiltration<K>& f) {
    return f.at(0) == t.h0;
}

template <class K>
bool strict_nondegenerate(const ContactTriple<K>& t) {
    return strict_nondegenerate(t, contact_filtration(t.pair));
}

// Every ideal of g inside l0 already lies inside h0.
template <class K>
bool contact_nondegenerate(const ContactTriple<K>& t) {
    return largest_ideal_in(t.pair.algebra, t.pair.l0).leq(t.h0);
}

// 0 for strict triples, otherwise the smallest k >= 1 with F_k inside h0;
// empty when no such k exists (a nonzero ideal survives outside h0).  The
// chain answer is cross-checked against the ideal formulation on every call.
template <class K>
std::optional<int> degeneracy_order(const ContactTriple<K>& t,
                                    const ContactFiltration<K>& f) {
    std::optional<int> k;
    if (f.at(0) == t.h0) {
        k = 0;
    } else {
        for (int j = 1; j <= f.stabilized_at + 1; ++j)
            if (f.at(j).leq(t.h0)) {
                k = j;
                break;
            }
    }
    if (k.has_value() != contact_nondegenerate(t))
        throw Error("InternalCheck",
                    "filtration and ideal routes disagree on nondegeneracy");
    return k;
}

template <class K>
std::optional<int> degeneracy_order(const ContactTriple<K>& t) {
    return degeneracy_order(t, contact_filtration(t.pair));
}

// Iterated-bracket certificate: a sequence X_0..X_m of basis vectors of l0
// with [..[[x, X_0], X_1]..., X_m] outside l0.  Returns nothing when x sits in
// the stable tail c0 (no such sequence exists).
template <class K>
std::optional<std::vector<Vec<K>>> bracket_witness(const ContactTriple<K>& t,
                                                   const ContactFiltration<K>& f,
                                                   const Vec<K>& x) {
    const LieAlgebra<K>& g = t.pair.algebra;
    const Subspace<K>& l0 = t.pair.l0;
    if (!l0.contains(x))
        throw Error("WitnessDomain", "x must lie in l0");
    if (t.h0.contains(x))
        throw Error("WitnessDomain", "x must lie outside h0");
    if (f.c0.contains(x)) return std::nullopt;

    std::vector<Vec<K>> seq;
    Vec<K> y = x;
    while (l0.contains(y)) {
        int lev = -1;
        while (f.at(lev + 1).contains(y)) ++lev;
        bool stepped = false;
        for (int i = 0; i < l0.dim(); ++i) {
            Vec<K> z = g.bracket(y, l0.basis_vector(i));
            if (!f.at(lev).contains(z)) {
                seq.push_back(l0.basis_vector(i));
                y = std::move(z);
                stepped = true;
                break;
            }
        }
        if (!stepped)
            throw Error("InternalCheck", "bracket witness search stalled");
    }
    return seq;
}

} // namespace crlab
