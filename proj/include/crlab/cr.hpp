#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "contact.hpp"

namespace crlab {

// A real Lie algebra with a complex subalgebra q of its complexification.
// The complexified table is kept alongside so chain computations do not
// rebuild it.
struct CRAlgebra {
    LieAlgebra<Rat> real_form;
    LieAlgebra<Gauss> cx;
    Subspace<Gauss> q;
};

inline CRAlgebra make_cr(LieAlgebra<Rat> g, Subspace<Gauss> q) {
    if (q.ambient() != g.dim())
        throw Error("DimensionMismatch", "q lives in the wrong ambient space");
    LieAlgebra<Gauss> cx = complexify(g);
    if (!is_subalgebra(cx, q))
        throw Error("QNotSubalgebra", "q is not a complex Lie subalgebra");
    return CRAlgebra{std::move(g), std::move(cx), std::move(q)};
}

inline Subspace<Gauss> q_plus_conj(const CRAlgebra& c) {
    return c.q.sum(c.q.conj());
}

// Real trace of q + conj(q): the distinguished subspace of the associated pair.
inline Subspace<Rat> tilde0(const CRAlgebra& c) {
    return real_points_of(q_plus_conj(c));
}

// Real points of q cap conj(q): the isotropy of the associated triple.
inline Subspace<Rat> breve0(const CRAlgebra& c) {
    return real_points_of(c.q.intersect(c.q.conj()));
}

inline bool fundamental(const CRAlgebra& c) {
    return generated_subalgebra(c.real_form, tilde0(c)).dim() == c.real_form.dim();
}

// Descending chains qbar^(h) = {Z in qbar^(h-1) : [Z, q] subset qtilde^(h-1)}
// and qtilde^(h) = q + qbar^(h), run until they stop moving.  nu is the first
// index whose term equals the next one; the two chains reach it together.
struct CRChain {
    std::vector<Subspace<Gauss>> qbar_terms;
    std::vector<Subspace<Gauss>> qtilde_terms;
    int nu = 0;
    Subspace<Gauss> hull; // q + stable tail of the qbar chain

    const Subspace<Gauss>& qbar(int h) const {
        return qbar_terms[std::min<std::size_t>(h, qbar_terms.size() - 1)];
    }
    const Subspace<Gauss>& qtilde(int h) const {
        return qtilde_terms[std::min<std::size_t>(h, qtilde_terms.size() - 1)];
    }
};

inline CRChain cr_chains(const CRAlgebra& c) {
    std::vector<Matrix<Gauss>> ads = subspace_ads(c.cx, c.q);
    CRChain ch;
    Subspace<Gauss> qbar = c.q.conj();
    ch.qtilde_terms.push_back(c.q.sum(qbar));
    ch.qbar_terms.push_back(std::move(qbar));
    for (;;) {
        Subspace<Gauss> next =
            stabilizer(ch.qbar_terms.back(), ads, ch.qtilde_terms.back());
        if (next == ch.qbar_terms.back()) break;
        ch.qtilde_terms.push_back(c.q.sum(next));
        ch.qbar_terms.push_back(std::move(next));
    }
    ch.nu = int(ch.qbar_terms.size()) - 1;
    ch.hull = c.q.sum(ch.qbar_terms.back());
    // the sum chain must move in lockstep with the qbar chain
    for (int h = 0; h + 1 < int(ch.qtilde_terms.size()); ++h)
        if (ch.qtilde_terms[h] == ch.qtilde_terms[h + 1])
            throw Error("InternalCheck", "qtilde chain stabilized before qbar");
    return ch;
}

inline int nu(const CRAlgebra& c) { return cr_chains(c).nu; }

// No complex subalgebra strictly between q and q + qbar; equivalently the
// stable tail of the chain is exactly q cap qbar.
inline bool weak_nondegenerate(const CRAlgebra& c, const CRChain& ch) {
    bool via_hull = (ch.hull == c.q);
    bool via_tail = (ch.qbar_terms.back() == c.q.intersect(c.q.conj()));
    if (via_hull != via_tail)
        throw Error("InternalCheck", "hull and tail tests disagree");
    return via_hull;
}

inline bool weak_nondegenerate(const CRAlgebra& c) {
    return weak_nondegenerate(c, cr_chains(c));
}

// {Z in qbar : [Z, q] subset q + qbar} = q cap qbar.
inline bool cr_strict_nondegenerate(const CRAlgebra& c, const CRChain& ch) {
    return ch.qbar(1) == c.q.intersect(c.q.conj());
}

// Replace q by the hull q' = q + tail; the result is weakly nondegenerate
// with the same real form, and the operation is idempotent.
inline CRAlgebra wn_hull(const CRAlgebra& c) {
    CRChain ch = cr_chains(c);
    return make_cr(c.real_form, ch.hull);
}

inline ContactTriple<Rat> associated_triple(const CRAlgebra& c) {
    Subspace<Rat> t0 = tilde0(c);
    if (generated_subalgebra(c.real_form, t0).dim() != c.real_form.dim())
        throw Error("NotFundamental",
                    "the real trace of q + conj(q) does not generate the algebra");
    return make_triple(ContactPair<Rat>(c.real_form, t0), breve0(c));
}

struct Classification {
    bool fundamental = false;
    // chain side (always computed)
    int nu = 0;
    bool weak = false;
    bool cr_strict = false;
    int hull_gap = 0; // dim q' - dim q
    // contact side (meaningful only when fundamental)
    bool strict = false;
    bool contact_nondeg = false;
    std::optional<int> k; // empty = no finite order of degeneracy
    int depth = 0;
    int largest_ideal_dim = 0; // largest ideal of g inside tilde0
};

inline Classification classify(const CRAlgebra& c) {
    Classification r;
    CRChain ch = cr_chains(c);
    r.nu = ch.nu;
    r.weak = weak_nondegenerate(c, ch);
    r.cr_strict = cr_strict_nondegenerate(c, ch);
    r.hull_gap = ch.hull.dim() - c.q.dim();
    r.fundamental = fundamental(c);
    if (!r.fundamental) return r;

    ContactTriple<Rat> t = associated_triple(c);
    ContactFiltration<Rat> f = contact_filtration(t.pair);
    r.depth = f.depth;
    r.strict = strict_nondegenerate(t, f);
    r.k = degeneracy_order(t, f);
    r.contact_nondeg = r.k.has_value();
    r.largest_ideal_dim = largest_ideal_in(t.pair.algebra, t.pair.l0).dim();

    if (r.strict != r.cr_strict)
        throw Error("InternalCheck", "the two strictness tests disagree");
    if (r.strict && !r.weak)
        throw Error("InternalCheck", "strict input failed the weak test");
    if (r.weak && !r.contact_nondeg)
        throw Error("InternalCheck", "weak input failed the contact test");
    return r;
}

} // namespace crlab
