#pragma once

// Shared test fixtures: small algebras with known structure.

#include <functional>
#include <initializer_list>

#include "crlab/lie.hpp"

namespace fixtures {

using namespace crlab;

// Heisenberg algebra h_{2n+1}: basis X1..Xn, Y1..Yn, Z with [Xi, Yi] = Z.
inline LieAlgebra<Rat> heisenberg(int n = 1) {
    std::vector<std::string> lab;
    for (int i = 1; i <= n; ++i) lab.push_back("X" + std::to_string(i));
    for (int i = 1; i <= n; ++i) lab.push_back("Y" + std::to_string(i));
    lab.push_back("Z");
    LieAlgebra<Rat> g(2 * n + 1, lab);
    for (int i = 0; i < n; ++i) {
        Vec<Rat> z(2 * n + 1, Rat(0));
        z[2 * n] = 1;
        g.set_bracket(i, n + i, z);
    }
    return g;
}

// sl2: basis H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
inline LieAlgebra<Rat> sl2() {
    LieAlgebra<Rat> g(3, {"H", "E", "F"});
    g.add_term(0, 1, 1, Rat(2));
    g.add_term(0, 2, 2, Rat(-2));
    g.add_term(1, 2, 0, Rat(1));
    return g;
}

inline LieAlgebra<Rat> abelian(int n) { return LieAlgebra<Rat>(n); }

// Filiform nilpotent dim 4: [e1,e2] = e3, [e1,e3] = e4.
inline LieAlgebra<Rat> filiform4() {
    LieAlgebra<Rat> g(4);
    g.add_term(0, 1, 2, Rat(1));
    g.add_term(0, 2, 3, Rat(1));
    return g;
}

// h3 plus an extra central generator W.
inline LieAlgebra<Rat> heis_plus_center() {
    LieAlgebra<Rat> g(4, {"X", "Y", "Z", "W"});
    g.add_term(0, 1, 2, Rat(1));
    return g;
}

// h3 plus two extra central generators V, W.  With q = span_C{X-iY, V-iW}
// the pair is fundamental but span{V,W} is an ideal inside l0 = span{X,Y,V,W}.
inline LieAlgebra<Rat> heis_plus_2center() {
    LieAlgebra<Rat> g(5, {"X", "Y", "Z", "V", "W"});
    g.add_term(0, 1, 2, Rat(1));
    return g;
}

// h3 extended by the grading element: [E,X] = X, [E,Y] = Y, [E,Z] = 2Z.
inline LieAlgebra<Rat> heis_graded_ext() {
    LieAlgebra<Rat> g(4, {"X", "Y", "Z", "E"});
    g.add_term(0, 1, 2, Rat(1));
    g.add_term(3, 0, 0, Rat(1));
    g.add_term(3, 1, 1, Rat(1));
    g.add_term(3, 2, 2, Rat(2));
    return g;
}

// CR sphere model on h_{2n+1}: q = span_C{X_i - i*Y_i}.
inline Subspace<Gauss> sphere_q(int n = 1) {
    int d = 2 * n + 1;
    std::vector<Vec<Gauss>> rows;
    for (int i = 0; i < n; ++i) {
        Vec<Gauss> v(d, Gauss(0));
        v[i] = Gauss(1);
        v[n + i] = -Gauss::i();
        rows.push_back(v);
    }
    return Subspace<Gauss>::from_vectors(d, rows);
}

inline Vec<Rat> unit(int n, int i) {
    Vec<Rat> v(n, Rat(0));
    v[i] = 1;
    return v;
}

inline Vec<Gauss> gunit(int n, int i) {
    Vec<Gauss> v(n, Gauss(0));
    v[i] = Gauss(1);
    return v;
}

// sl2 as trace-free 2x2 matrices.
inline std::vector<Matrix<Gauss>> sl2_matrices() {
    Matrix<Gauss> H(2, 2), E(2, 2), F(2, 2);
    H.at(0, 0) = Gauss(1);
    H.at(1, 1) = Gauss(-1);
    E.at(0, 1) = Gauss(1);
    F.at(1, 0) = Gauss(1);
    return {H, E, F};
}

// Tube over the future light cone in C^3: g0 = R^3 (imaginary translations)
// semidirect co(1,2), dim 7; q at the base point (1,0,1).
// Basis order: T1, T2, T3, K, B1, B2, D.
inline LieAlgebra<Rat> cone_tube_algebra() {
    // the linear part acts on translations by the defining matrices
    // K = rotation in (1,2), B1, B2 boosts, D = identity
    auto K_ = [](int i, int j) {
        static const int k[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
        return k[i][j];
    };
    auto B1_ = [](int i, int j) {
        static const int b[3][3] = {{0, 0, 1}, {0, 0, 0}, {1, 0, 0}};
        return b[i][j];
    };
    auto B2_ = [](int i, int j) {
        static const int b[3][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}};
        return b[i][j];
    };
    auto D_ = [](int i, int j) { return i == j ? 1 : 0; };

    std::vector<std::function<int(int, int)>> lin = {K_, B1_, B2_, D_};
    LieAlgebra<Rat> g(7, {"T1", "T2", "T3", "K", "B1", "B2", "D"});
    // [A, T_v] = T_{A v}
    for (int a = 0; a < 4; ++a)
        for (int v = 0; v < 3; ++v) {
            Vec<Rat> out(7, Rat(0));
            for (int i = 0; i < 3; ++i) out[i] = Rat(lin[a](i, v));
            g.set_bracket(3 + a, v, out);
        }
    // [K,B1] = B2, [K,B2] = -B1, [B1,B2] = -K; D central in the linear part
    {
        Vec<Rat> v(7, Rat(0));
        v[5] = 1;
        g.set_bracket(3, 4, v);
    }
    {
        Vec<Rat> v(7, Rat(0));
        v[4] = -1;
        g.set_bracket(3, 5, v);
    }
    {
        Vec<Rat> v(7, Rat(0));
        v[3] = -1;
        g.set_bracket(4, 5, v);
    }
    g.validate();
    return g;
}

// q for the cone tube: span_C{B1 - D, K - B2, T1 + T3 - i*D, T2 - i*B2}
inline Subspace<Gauss> cone_tube_q() {
    auto gv = [](std::initializer_list<std::pair<int, Gauss>> terms) {
        Vec<Gauss> v(7, Gauss(0));
        for (auto& [i, c] : terms) v[i] = c;
        return v;
    };
    std::vector<Vec<Gauss>> rows = {
        gv({{4, Gauss(1)}, {6, Gauss(-1)}}),
        gv({{3, Gauss(1)}, {5, Gauss(-1)}}),
        gv({{0, Gauss(1)}, {2, Gauss(1)}, {6, -Gauss::i()}}),
        gv({{1, Gauss(1)}, {5, -Gauss::i()}}),
    };
    return Subspace<Gauss>::from_vectors(7, rows);
}

} // namespace fixtures
