#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cr.hpp"

namespace crlab {

// Z-graded Lie algebra with finitely many components.  Components are stored
// by dimension; brackets as tables over basis pairs.  Absent components are
// zero, and brackets landing in an absent component vanish identically.
template <class K>
class GradedLieAlgebra {
public:
    GradedLieAlgebra() = default;

    void set_component(int h, int d) {
        if (d < 0) throw Error("BadComponent", "negative component dimension");
        if (d > 0) dims_[h] = d;
    }

    int dim(int h) const {
        auto it = dims_.find(h);
        return it == dims_.end() ? 0 : it->second;
    }
    bool empty() const { return dims_.empty(); }
    int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }
    int total_dim() const {
        int s = 0;
        for (const auto& [h, d] : dims_) s += d;
        return s;
    }
    const std::map<int, int>& components() const { return dims_; }

    // [e^a_i, e^b_j] = v in G_{a+b} coordinates; both orientations recorded.
    void set_bracket(int a, int i, int b, int j, Vec<K> v) {
        if (int(v.size()) != dim(a + b))
            throw Error("BadComponent", "bracket value has the wrong dimension");
        if (a == b && i == j && !vec_is_zero(v))
            throw Error("BadComponent", "bracket of a vector with itself");
        block(a, b)[idx(a, b, i, j)] = v;
        for (auto& c : v) c = -c;
        block(b, a)[idx(b, a, j, i)] = std::move(v);
    }

    Vec<K> bracket_basis(int a, int i, int b, int j) const {
        int d = dim(a + b);
        if (d == 0) return Vec<K>{};
        if (a == b && i == j) return Vec<K>(d, K(0));
        auto it = table_.find({a, b});
        if (it == table_.end())
            throw Error("InternalCheck", "missing bracket table for degrees " +
                                             std::to_string(a) + "," +
                                             std::to_string(b));
        return it->second[idx(a, b, i, j)];
    }

    Vec<K> bracket(int a, const Vec<K>& x, int b, const Vec<K>& y) const {
        int d = dim(a + b);
        Vec<K> out(d, K(0));
        if (d == 0 || dim(a) == 0 || dim(b) == 0) return out;
        for (int i = 0; i < dim(a); ++i) {
            if (is_zero(x[i])) continue;
            for (int j = 0; j < dim(b); ++j) {
                if (is_zero(y[j])) continue;
                Vec<K> t = bracket_basis(a, i, b, j);
                for (int r = 0; r < d; ++r) out[r] += x[i] * y[j] * t[r];
            }
        }
        return out;
    }

    // Degreewise Jacobi on basis triples.  Triples with a pairwise sum above
    // the top component are skipped: in a truncated algebra those brackets
    // are cut off, and in a complete one they vanish anyway.
    void validate() const {
        std::vector<int> degs;
        for (const auto& [h, d] : dims_) degs.push_back(h);
        int top = max_degree();
        for (std::size_t ai = 0; ai < degs.size(); ++ai)
            for (std::size_t bi = ai; bi < degs.size(); ++bi)
                for (std::size_t ci = bi; ci < degs.size(); ++ci) {
                    int a = degs[ai], b = degs[bi], c = degs[ci];
                    if (a + b > top || b + c > top || a + c > top) continue;
                    if (dim(a + b + c) == 0) continue;
                    for (int i = 0; i < dim(a); ++i)
                        for (int j = 0; j < dim(b); ++j)
                            for (int k = 0; k < dim(c); ++k) {
                                Vec<K> r = bracket(a + b, bracket_basis(a, i, b, j),
                                                   c, unit_vec(c, k));
                                Vec<K> r2 = bracket(b + c, bracket_basis(b, j, c, k),
                                                    a, unit_vec(a, i));
                                Vec<K> r3 = bracket(c + a, bracket_basis(c, k, a, i),
                                                    b, unit_vec(b, j));
                                for (std::size_t t = 0; t < r.size(); ++t)
                                    r[t] += r2[t] + r3[t];
                                if (!vec_is_zero(r))
                                    throw Error(
                                        "JacobiViolation",
                                        "graded Jacobi fails at degrees (" +
                                            std::to_string(a) + "," +
                                            std::to_string(b) + "," +
                                            std::to_string(c) + ")");
                            }
                }
    }

    Vec<K> unit_vec(int h, int i) const {
        Vec<K> v(dim(h), K(0));
        v[i] = K(1);
        return v;
    }

private:
    std::size_t idx(int a, int b, int i, int j) const {
        return std::size_t(i) * dim(b) + j;
    }
    std::vector<Vec<K>>& block(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = table_.find(key);
        if (it == table_.end()) {
            std::vector<Vec<K>> blk(std::size_t(dim(a)) * dim(b),
                                    Vec<K>(dim(a + b), K(0)));
            it = table_.emplace(key, std::move(blk)).first;
        }
        return it->second;
    }

    std::map<int, int> dims_;
    std::map<std::pair<int, int>, std::vector<Vec<K>>> table_;
};

// Negative part generated by G_{-1}: G_{-h-1} = [G_{-h}, G_{-1}] for h >= 1.
template <class K>
bool graded_fundamental(const GradedLieAlgebra<K>& g) {
    for (int h = g.min_degree(); h <= -2; ++h) {
        std::vector<Vec<K>> rows;
        for (int i = 0; i < g.dim(h + 1); ++i)
            for (int j = 0; j < g.dim(-1); ++j)
                rows.push_back(g.bracket_basis(h + 1, i, -1, j));
        if (Subspace<K>::from_vectors(g.dim(h), rows).dim() != g.dim(h))
            return false;
    }
    return true;
}

// No nonnegative element kills all of G_{-1}.
template <class K>
bool is_transitive(const GradedLieAlgebra<K>& g) {
    for (const auto& [h, d] : g.components()) {
        if (h < 0) continue;
        int m1 = g.dim(-1), dl = g.dim(h - 1);
        Matrix<K> sys(m1 * dl, d);
        for (int j = 0; j < m1; ++j)
            for (int i = 0; i < d; ++i) {
                Vec<K> v = g.bracket_basis(h, i, -1, j);
                for (int r = 0; r < dl; ++r) sys.at(j * dl + r, i) = v[r];
            }
        if (kernel(std::move(sys)).nrows > 0) return false;
    }
    return true;
}

// The G_{-2}-valued alternating form on G_{-1} given by the bracket.
template <class K>
struct LeviForm {
    int dim1 = 0;
    int dim2 = 0;
    std::vector<std::vector<Vec<K>>> omega; // omega[i][j] in G_{-2} coordinates
};

template <class K>
LeviForm<K> levi_form(const GradedLieAlgebra<K>& g) {
    if (g.dim(-2) == 0)
        throw Error("DepthTooSmall", "no G_{-2} component to receive the form");
    LeviForm<K> w;
    w.dim1 = g.dim(-1);
    w.dim2 = g.dim(-2);
    w.omega.assign(w.dim1, std::vector<Vec<K>>(w.dim1));
    for (int i = 0; i < w.dim1; ++i)
        for (int j = 0; j < w.dim1; ++j) w.omega[i][j] = g.bracket_basis(-1, i, -1, j);
    return w;
}

template <class K>
bool levi_nondegenerate(const GradedLieAlgebra<K>& g) {
    LeviForm<K> w = levi_form(g);
    Matrix<K> sys(w.dim1 * w.dim2, w.dim1);
    for (int j = 0; j < w.dim1; ++j)
        for (int i = 0; i < w.dim1; ++i)
            for (int r = 0; r < w.dim2; ++r)
                sys.at(j * w.dim2 + r, i) = w.omega[i][j][r];
    return kernel(std::move(sys)).nrows == 0;
}

// Per-degree spaces G'_p = {eta in G_p : [eta, G_h] = 0 for all h <= -2}.
template <class K>
std::map<int, Subspace<K>> g_prime(const GradedLieAlgebra<K>& g) {
    std::map<int, Subspace<K>> out;
    for (const auto& [p, d] : g.components()) {
        int nrows = 0;
        for (const auto& [h, dh] : g.components()) {
            if (h > -2) continue;
            nrows += dh * g.dim(p + h);
        }
        Matrix<K> sys(nrows, d);
        int row0 = 0;
        for (const auto& [h, dh] : g.components()) {
            if (h > -2) continue;
            int dt = g.dim(p + h);
            if (dt == 0) continue;
            for (int j = 0; j < dh; ++j)
                for (int i = 0; i < d; ++i) {
                    Vec<K> v = g.bracket_basis(p, i, h, j);
                    for (int r = 0; r < dt; ++r) sys.at(row0 + j * dt + r, i) = v[r];
                }
            row0 += dh * dt;
        }
        Matrix<K> null = kernel(std::move(sys));
        out.emplace(p, Subspace<K>::from_rows(d, std::move(null)));
    }
    return out;
}

// Associated graded of a canonical filtration.  Lift representatives for
// F_h/F_{h+1} are the reduced basis rows of F_h whose pivot is not a pivot of
// F_{h+1}; this is deterministic and the lifts are honest elements of F_h.
template <class K>
struct AssociatedGraded {
    GradedLieAlgebra<K> graded;
    std::map<int, std::vector<Vec<K>>> lifts; // degree -> ambient representatives
    ContactFiltration<K> filtration;
    LieAlgebra<K> algebra;

    // coordinates of x mod F_{h+1} with respect to the degree-h lifts
    Vec<K> project(int h, const Vec<K>& x) const {
        const auto& L = lifts.at(h);
        const Subspace<K>& next = filtration.at(h + 1);
        int n = algebra.dim();
        Matrix<K> cols(n, int(L.size()) + next.dim());
        for (int j = 0; j < int(L.size()); ++j)
            for (int t = 0; t < n; ++t) cols.at(t, j) = L[j][t];
        for (int j = 0; j < next.dim(); ++j) {
            Vec<K> b = next.basis_vector(j);
            for (int t = 0; t < n; ++t) cols.at(t, int(L.size()) + j) = b[t];
        }
        auto sol = solve(cols, x);
        if (!sol)
            throw Error("InternalCheck", "element is outside its filtration level");
        return Vec<K>(sol->begin(), sol->begin() + L.size());
    }
};

template <class K>
AssociatedGraded<K> associated_graded(const LieAlgebra<K>& g,
                                      const ContactFiltration<K>& f) {
    AssociatedGraded<K> out;
    out.filtration = f;
    out.algebra = g;
    for (int h = -f.depth; h < f.stabilized_at || h < 0; ++h) {
        const Subspace<K>& cur = f.at(h);
        const Subspace<K>& next = f.at(h + 1);
        std::vector<int> npiv = next.pivots();
        std::vector<Vec<K>> L;
        for (int r = 0; r < cur.dim(); ++r) {
            bool shared = false;
            for (int pc : npiv)
                if (pc == cur.pivots()[r]) shared = true;
            if (!shared) L.push_back(cur.basis_vector(r));
        }
        if (int(L.size()) != cur.dim() - next.dim())
            throw Error("InternalCheck", "lift count mismatch");
        out.graded.set_component(h, int(L.size()));
        if (!L.empty()) out.lifts[h] = std::move(L);
    }
    // induced brackets, with the landing level checked for every pair
    for (const auto& [a, La] : out.lifts)
        for (const auto& [b, Lb] : out.lifts) {
            if (a > b) continue;
            if (out.graded.dim(a + b) == 0) continue;
            for (int i = 0; i < int(La.size()); ++i)
                for (int j = (a == b ? i + 1 : 0); j < int(Lb.size()); ++j) {
                    Vec<K> z = g.bracket(La[i], Lb[j]);
                    if (!f.at(a + b).contains(z))
                        throw Error("InternalCheck",
                                    "bracket escapes its filtration level");
                    out.graded.set_bracket(a, i, b, j, out.project(a + b, z));
                }
        }
    return out;
}

// Complex structure on G_{-1} determined by q: J maps the class of X to the
// class of Y whenever X + iY lies in q.
template <class K>
struct ComplexStructureJ {
    Matrix<K> J;
};

inline ComplexStructureJ<Rat> complex_structure(const CRAlgebra& c,
                                                const AssociatedGraded<Rat>& ag) {
    int n = c.real_form.dim();
    // q as a real subspace of pairs (X, Y) with X + iY in q
    std::vector<Vec<Rat>> rows;
    for (int i = 0; i < c.q.dim(); ++i) {
        Vec<Gauss> w = c.q.basis_vector(i);
        Vec<Rat> r1(2 * n), r2(2 * n);
        for (int t = 0; t < n; ++t) {
            r1[t] = w[t].re;
            r1[n + t] = w[t].im;
            r2[t] = -w[t].im;
            r2[n + t] = w[t].re;
        }
        rows.push_back(std::move(r1));
        rows.push_back(std::move(r2));
    }
    Subspace<Rat> qreal = Subspace<Rat>::from_vectors(2 * n, rows);
    int rr = qreal.dim();
    Matrix<Rat> A(n, rr), B(n, rr);
    for (int j = 0; j < rr; ++j) {
        Vec<Rat> row = qreal.basis_vector(j);
        for (int t = 0; t < n; ++t) {
            A.at(t, j) = row[t];
            B.at(t, j) = row[n + t];
        }
    }
    LinearSolver<Rat> partner(A);
    auto solve_partner = [&](const Vec<Rat>& X) {
        auto t = partner.solve(X);
        if (!t) throw Error("InternalCheck", "no complex partner inside q");
        return B.apply(*t);
    };

    // well-definedness: partners of F_0 vectors stay in F_0
    const Subspace<Rat>& f0 = ag.filtration.at(0);
    for (int i = 0; i < f0.dim(); ++i)
        if (!f0.contains(solve_partner(f0.basis_vector(i))))
            throw Error("InternalCheck", "J is not well defined on the quotient");

    int m1 = ag.graded.dim(-1);
    ComplexStructureJ<Rat> out;
    out.J = Matrix<Rat>(m1, m1);
    const auto& L = ag.lifts.at(-1);
    for (int i = 0; i < m1; ++i) {
        Vec<Rat> y = solve_partner(L[i]);
        if (!ag.filtration.at(-1).contains(y))
            throw Error("InternalCheck", "complex partner leaves l0");
        Vec<Rat> col = ag.project(-1, y);
        for (int r = 0; r < m1; ++r) out.J.at(r, i) = col[r];
    }

    // J^2 = -1 and the compatibility of J with the bracket into G_{-2}
    Matrix<Rat> sq = out.J * out.J;
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m1; ++j)
            if (sq.at(i, j) != (i == j ? Rat(-1) : Rat(0)))
                throw Error("InternalCheck", "J squared is not minus one");
    const auto& gr = ag.graded;
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m1; ++j) {
            Vec<Rat> ji(m1), jj(m1);
            for (int r = 0; r < m1; ++r) {
                ji[r] = out.J.at(r, i);
                jj[r] = out.J.at(r, j);
            }
            Vec<Rat> lhs = gr.bracket(-1, ji, -1, jj);
            Vec<Rat> rhs = gr.bracket_basis(-1, i, -1, j);
            if (lhs != rhs)
                throw Error("InternalCheck", "[J x, J y] differs from [x, y]");
            Vec<Rat> m1term = gr.bracket(-1, ji, -1, gr.unit_vec(-1, j));
            Vec<Rat> m2term = gr.bracket(-1, gr.unit_vec(-1, i), -1, jj);
            for (std::size_t t = 0; t < m1term.size(); ++t)
                if (m1term[t] + m2term[t] != 0)
                    throw Error("InternalCheck", "[J x, y] + [x, J y] is not zero");
        }
    return out;
}

} // namespace crlab
