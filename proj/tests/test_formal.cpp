#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "crlab/formal.hpp"
#include "fixtures.hpp"

using namespace crlab;

namespace {

// Bernoulli numbers (B1 = +1/2 convention) via the classical recurrence;
// independent route to the same coefficients, b_h = B_h / h!.
std::vector<Rat> bernoulli_plus(int N) {
    std::vector<Rat> B(N + 1);
    B[0] = Rat(1);
    for (int m = 1; m <= N; ++m) {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 with the B1 = -1/2 convention
        Rat s(0);
        Rat c(1); // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            s += c * B[j];
            c = c * Rat(m + 1 - j) / Rat(j + 1);
        }
        B[m] = -s / c;
    }
    if (N >= 1) B[1] = -B[1]; // switch to B1 = +1/2
    return B;
}

PolyVec<Rat> random_polyvec(std::mt19937_64& rng, int nvars, int maxdeg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    PolyVec<Rat> p = PolyVec<Rat>::zero(nvars, nvars);
    for (int d = 0; d <= maxdeg; ++d)
        for (const Mono& m : monomials_of_degree(nvars, d)) {
            Vec<Rat> v(nvars);
            for (auto& x : v) x = Rat(coef(rng));
            p.add(m, v);
        }
    return p;
}

} // namespace

TEST_CASE("BCH coefficients", "[formal]") {
    auto bch = bch_coefficients(8);
    CHECK(bch.b[0] == Rat(1));
    CHECK(bch.b[1] == Rat(1) / 2);
    CHECK(bch.b[2] == Rat(1) / 12);
    CHECK(bch.b[3] == Rat(0));
    CHECK(bch.b[4] == Rat(-1) / 720);
    CHECK(bch.b[5] == Rat(0));
    CHECK(bch.b[6] == Rat(1) / 30240);

    SECTION("agree with Bernoulli numbers") {
        auto B = bernoulli_plus(8);
        Rat fact(1);
        for (int h = 0; h <= 8; ++h) {
            if (h > 0) fact *= Rat(h);
            CHECK(bch.b[h] == B[h] / fact);
        }
    }
    SECTION("defining inversion identity") {
        // sum b_h t^h multiplied by (1 - e^{-t})/t is 1, truncated
        std::vector<Rat> c(9);
        Rat fact(1);
        for (int k = 0; k <= 8; ++k) {
            fact *= Rat(k + 1);
            c[k] = Rat(k % 2 == 0 ? 1 : -1) / fact;
        }
        for (int h = 0; h <= 8; ++h) {
            Rat s(0);
            for (int j = 0; j <= h; ++j) s += bch.b[j] * c[h - j];
            CHECK(s == (h == 0 ? Rat(1) : Rat(0)));
        }
    }
}

TEST_CASE("monomial enumeration", "[formal]") {
    auto ms = monomials_of_degree(3, 2);
    CHECK(ms.size() == 6);
    CHECK(ms.front() == Mono{2, 0, 0});
    CHECK(ms.back() == Mono{0, 0, 2});
    CHECK(monomials_of_degree(2, 0) == std::vector<Mono>{Mono{0, 0}});
}

TEST_CASE("invariant fields", "[formal]") {
    SECTION("abelian: constant fields") {
        auto g = fixtures::abelian(3);
        Vec<Rat> X{Rat(1), Rat(2), Rat(-1)};
        auto inv = invariant_fields(g, X, 4);
        CHECK(inv.left.f == PolyVec<Rat>::constant(3, X));
        CHECK(inv.right.f == PolyVec<Rat>::constant(3, X));
    }
    SECTION("central directions stay constant") {
        auto g = fixtures::heisenberg(1);
        Vec<Rat> Z = fixtures::unit(3, 2);
        auto inv = invariant_fields(g, Z, 5);
        CHECK(inv.left.f == PolyVec<Rat>::constant(3, Z));
        CHECK(inv.right.f == PolyVec<Rat>::constant(3, Z));
    }
    SECTION("first-order correction on the Heisenberg algebra") {
        auto g = fixtures::heisenberg(1);
        Vec<Rat> X = fixtures::unit(3, 0);
        auto inv = invariant_fields(g, X, 3);
        // at q = bY the degree-1 part of R_X is (b/2) Z
        Vec<Rat> q{Rat(0), Rat(4), Rat(0)};
        CHECK(inv.right.f.degree_part(1).evaluate(q) ==
              Vec<Rat>{Rat(0), Rat(0), Rat(2)});
        CHECK(inv.left.f.degree_part(1).evaluate(q) ==
              Vec<Rat>{Rat(0), Rat(0), Rat(-2)});
        // brackets of q with X close up, so the series stops after degree 1
        CHECK(inv.right.f.degree() == 1);
    }
    SECTION("R_X(v) = L_X(-v)") {
        auto g = fixtures::sl2();
        Vec<Rat> X{Rat(1), Rat(-2), Rat(3)};
        auto inv = invariant_fields(g, X, 5);
        PolyVec<Rat> flipped = PolyVec<Rat>::zero(3, 3);
        for (const auto& [m, v] : inv.left.f.terms) {
            Vec<Rat> w = v;
            if (mono_degree(m) % 2 == 1)
                for (auto& x : w) x = -x;
            flipped.add(m, w);
        }
        CHECK(inv.right.f == flipped);
    }
}

TEST_CASE("vector field bracket", "[formal]") {
    SECTION("constants commute") {
        auto A = TruncatedVectorField<Rat>(3, PolyVec<Rat>::constant(3, {Rat(1), Rat(0), Rat(2)}));
        auto B = TruncatedVectorField<Rat>(3, PolyVec<Rat>::constant(3, {Rat(0), Rat(5), Rat(1)}));
        CHECK(vf_bracket(A, B).f.is_zero());
    }
    SECTION("linear fields give the matrix commutator") {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> coef(-4, 4);
        for (int trial = 0; trial < 10; ++trial) {
            int n = 3;
            Matrix<Rat> P(n, n), Q(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    P.at(i, j) = Rat(coef(rng));
                    Q.at(i, j) = Rat(coef(rng));
                }
            auto lin = [&](const Matrix<Rat>& M) {
                PolyVec<Rat> p = PolyVec<Rat>::zero(n, n);
                for (int j = 0; j < n; ++j) {
                    Mono m(n, 0);
                    m[j] = 1;
                    Vec<Rat> col(n);
                    for (int i = 0; i < n; ++i) col[i] = M.at(i, j);
                    p.add(m, col);
                }
                return TruncatedVectorField<Rat>(4, p);
            };
            auto br = vf_bracket(lin(P), lin(Q));
            CHECK(br.f == lin(Q * P - P * Q).f);
        }
    }
    SECTION("bilinear, antisymmetric, Jacobi to the surviving order") {
        std::mt19937_64 rng(555);
        for (int trial = 0; trial < 5; ++trial) {
            auto A = TruncatedVectorField<Rat>(4, random_polyvec(rng, 2, 4));
            auto B = TruncatedVectorField<Rat>(4, random_polyvec(rng, 2, 4));
            auto C = TruncatedVectorField<Rat>(4, random_polyvec(rng, 2, 4));
            auto AB = vf_bracket(A, B);
            auto BA = vf_bracket(B, A);
            CHECK(AB.f == BA.f.scaled(Rat(-1)));
            // Jacobi: all three terms truncated to order N-2
            auto j1 = vf_bracket(AB, C);
            auto j2 = vf_bracket(vf_bracket(B, C), A);
            auto j3 = vf_bracket(vf_bracket(C, A), B);
            PolyVec<Rat> s = j1.f + j2.f + j3.f;
            s.truncate(2);
            CHECK(s.is_zero());
        }
    }
    SECTION("order bookkeeping") {
        auto A = TruncatedVectorField<Rat>(2, PolyVec<Rat>::constant(2, {Rat(1), Rat(0)}));
        auto B = TruncatedVectorField<Rat>(5, PolyVec<Rat>::constant(2, {Rat(0), Rat(1)}));
        CHECK(vf_bracket(A, B).order == 1);
        auto Z = TruncatedVectorField<Rat>(0, PolyVec<Rat>::constant(2, {Rat(1), Rat(1)}));
        try {
            vf_bracket(Z, Z);
            FAIL("expected OrderExhausted");
        } catch (const Error& e) {
            CHECK(e.code() == "OrderExhausted");
        }
    }
}

TEST_CASE("invariant field commutation rules", "[formal]") {
    // [L_X, L_Y] = L_{[X,Y]}, [R_X, R_Y] = -R_{[X,Y]}, [L_X, R_Y] = 0
    auto g = fixtures::sl2();
    int N = 5;
    std::vector<Vec<Rat>> xs = {fixtures::unit(3, 0), fixtures::unit(3, 1),
                                Vec<Rat>{Rat(1), Rat(2), Rat(-1)}};
    for (const auto& X : xs)
        for (const auto& Y : xs) {
            auto iX = invariant_fields(g, X, N);
            auto iY = invariant_fields(g, Y, N);
            auto iXY = invariant_fields(g, g.bracket(X, Y), N);
            PolyVec<Rat> dl = vf_bracket(iX.left, iY.left).f - iXY.left.f;
            dl.truncate(N - 1);
            CHECK(dl.is_zero());
            PolyVec<Rat> dr = vf_bracket(iX.right, iY.right).f + iXY.right.f;
            dr.truncate(N - 1);
            CHECK(dr.is_zero());
            PolyVec<Rat> dm = vf_bracket(iX.left, iY.right).f;
            dm.truncate(N - 1);
            CHECK(dm.is_zero());
        }
}
