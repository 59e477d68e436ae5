// Release gate. Each criterion prints exactly one [PASS]/[FAIL] line; the
// exit status is the number of failures. The unit suites cover internals;
// this binary pins the headline results end to end, with wall-clock budgets
// where a criterion carries one.

#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crlab/cr.hpp"
#include "crlab/presets.hpp"
#include "crlab/prolong.hpp"
#include "crlab/realize.hpp"
#include "fixtures.hpp"
#include "random_algebras.hpp"

using namespace crlab;

namespace {

int failures = 0;

void verdict(int num, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s -- %s\n", ok ? "PASS" : "FAIL", num, what,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void note(const std::string& s) {
    std::printf("          %s\n", s.c_str());
    std::fflush(stdout);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Subspace<Rat> span_of(const LieAlgebra<Rat>& g, std::initializer_list<int> idx) {
    std::vector<Vec<Rat>> vs;
    for (int i : idx) vs.push_back(fixtures::unit(g.dim(), i));
    return Subspace<Rat>::from_vectors(g.dim(), vs);
}

long long binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// 1. The su(1,5) hypersurface fixture classifies as fundamental, not weakly
//    nondegenerate (its hull gains one dimension), and contact-nondegenerate
//    with no nontrivial ideal inside the real isotropy. Budget: 60 s.
void criterion1() {
    Timer t;
    auto d = presets::su15_data();
    auto c = make_cr(d.matrix_algebra.alg, d.q);
    auto r = classify(c);
    auto ch = cr_chains(c);
    bool ok = r.fundamental && !r.weak && r.hull_gap == 1 &&
              ch.hull == d.q_prime && r.contact_nondeg &&
              r.largest_ideal_dim == 0;
    double s = t.seconds();
    verdict(1, "su(1,5) fixture classification", ok && s < 60.0,
            "fundamental, hull gains 1 dim, contact-nondegenerate, "
            "largest ideal 0, exact, " +
                fmt("%.2f", s) + "s");
}

// 2. Prolonging the abelian symbol Q^n from its full gl(n) of derivations
//    reproduces the polynomial vector fields: dim G_p = n * C(n+p, p+1).
//    The tower is infinite, so the cap must be the reason we stop.
void criterion2() {
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n) {
        GradedLieAlgebra<Rat> m;
        m.set_component(-1, n);
        auto P = tanaka_prolong<Rat>(m, std::nullopt, 6);
        if (P.terminated) {
            ok = false;
            note("n = " + std::to_string(n) + ": unexpected termination");
        }
        for (int p = -1; p <= 6; ++p)
            if (P.graded.dim(p) != n * binom(n + p, p + 1)) {
                ok = false;
                note("n = " + std::to_string(n) + ", p = " + std::to_string(p) +
                     ": dim " + std::to_string(P.graded.dim(p)) + " != " +
                     std::to_string(n * binom(n + p, p + 1)));
            }
    }
    verdict(2, "abelian symbols prolong to the polynomial fields", ok,
            "dim G_p = n*C(n+p, p+1) for n = 1..3, p <= 6, cap reached");
}

// 3. At the computed order of degeneracy k, the reduced space G'_{2k+1}
//    vanishes: sphere model (k = 0), cone tube (k = 1), su(1,5) (k = 1).
void criterion3() {
    auto leg = [](const CRAlgebra& c, int k_expected) {
        auto r = classify(c);
        if (!r.k || *r.k != k_expected) return false;
        auto s = cr_prolong_setup(c);
        auto P = tanaka_prolong<Rat>(s.m, std::nullopt, 10,
                                     std::make_optional(s.J));
        return finiteness_check(P, k_expected).gprime_vanishes;
    };
    bool sph = leg(make_cr(fixtures::heisenberg(1), fixtures::sphere_q(1)), 0);
    bool tube =
        leg(make_cr(fixtures::cone_tube_algebra(), fixtures::cone_tube_q()), 1);
    auto d = presets::su15_data();
    bool su = leg(make_cr(d.matrix_algebra.alg, d.q), 1);
    verdict(3, "G'_{2k+1} vanishes at the degeneracy order", sph && tube && su,
            "sphere k=0, cone tube k=1, su(1,5) k=1");
}

// 4. Every contact-nondegenerate CR fixture prolongs to a finite-dimensional
//    algebra: the J-constrained tower terminates strictly below the cap.
void criterion4() {
    struct Item {
        const char* name;
        CRAlgebra c;
    };
    auto d = presets::su15_data();
    std::vector<Item> corpus;
    corpus.push_back(
        {"sphere S3", make_cr(fixtures::heisenberg(1), fixtures::sphere_q(1))});
    corpus.push_back(
        {"sphere S5", make_cr(fixtures::heisenberg(2), fixtures::sphere_q(2))});
    corpus.push_back({"cone tube", make_cr(fixtures::cone_tube_algebra(),
                                           fixtures::cone_tube_q())});
    corpus.push_back({"su(1,5)", make_cr(d.matrix_algebra.alg, d.q)});
    bool ok = true;
    std::string dims;
    for (auto& it : corpus) {
        auto r = classify(it.c);
        if (!r.contact_nondeg) {
            ok = false;
            note(std::string(it.name) + ": not contact-nondegenerate");
            continue;
        }
        auto s = cr_prolong_setup(it.c);
        auto P = tanaka_prolong<Rat>(s.m, std::nullopt, 10,
                                     std::make_optional(s.J));
        if (!P.terminated) {
            ok = false;
            note(std::string(it.name) + ": hit the degree cap");
            continue;
        }
        if (!dims.empty()) dims += ", ";
        dims += std::string(it.name) + " dim " +
                std::to_string(P.graded.total_dim());
    }
    verdict(4, "contact-nondegenerate fixtures prolong finitely", ok, dims);
}

// 5. The right star fields anti-represent the bracket to full truncation
//    order: [R*_X, R*_Y] + R*_{[X,Y]} = 0 mod order N-1 with N = dim g0, over
//    every basis pair. Feasible for sl2 and h3 (N = 3). For su(1,5), N = 35
//    means order-34 jets in 21 variables, C(55,34) ~ 8.4e14 monomials per
//    jet component; that leg is reported as a failure and the identity is
//    checked exhaustively at order 2 instead.
void criterion5() {
    auto all_pairs = [](const LieAlgebra<Rat>& g, const Subspace<Rat>& h0,
                        int N, int* checked) {
        StarRealization<Rat> st(g, h0, N);
        int n = g.dim();
        std::vector<TruncatedVectorField<Rat>> R;
        R.reserve(n);
        for (int i = 0; i < n; ++i)
            R.push_back(st.r_star_field(fixtures::unit(n, i)));
        bool ok = true;
        *checked = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                PolyVec<Rat> d = vf_bracket(R[i], R[j]).f +
                                 st.r_star_field(g.bracket_basis(i, j)).f;
                d.truncate(N - 1);
                if (!d.is_zero()) ok = false;
                ++*checked;
            }
        return ok;
    };

    int np = 0;
    auto sl2 = fixtures::sl2();
    bool ok_sl2 = all_pairs(sl2, span_of(sl2, {1}), sl2.dim(), &np);
    note("sl2, isotropy span{E}, order 3: " + std::to_string(np) +
         std::string("/3 basis pairs vanish") + (ok_sl2 ? "" : " (FAILED)"));
    auto h3 = fixtures::heisenberg(1);
    bool ok_h3 = all_pairs(h3, span_of(h3, {2}), h3.dim(), &np);
    note("h3, isotropy span{Z}, order 3: " + std::to_string(np) +
         std::string("/3 basis pairs vanish") + (ok_h3 ? "" : " (FAILED)"));

    auto d = presets::su15_data();
    const auto& g15 = d.matrix_algebra.alg;
    auto h15 = breve0(make_cr(g15, d.q));
    long long monos = binom(21 + 34, 34);
    note("su(1,5), isotropy dim 14, full order 35 not attempted: order-34 "
         "jets in 21 variables hold " +
         std::to_string(monos) + " (~8.4e14) monomials per component");
    Timer t;
    bool ok_red = all_pairs(g15, h15, 2, &np);
    note("su(1,5) reduced-order evidence, order 2: " + std::to_string(np) +
         "/595 basis pairs vanish" + (ok_red ? "" : " (FAILED)") + ", " +
         fmt("%.1f", t.seconds()) + "s");

    bool full = false; // the su(1,5) leg at N = 35 is out of computational reach
    verdict(5, "star-field bracket identity at order dim(g0)-1",
            ok_sl2 && ok_h3 && ok_red && full,
            "sl2 and h3 hold at full order; su(1,5) requires ~8.4e14 jet "
            "coefficients and is only verified at order 2");
}

// 6. The kernel of the truncated realization equals the largest ideal of g
//    inside the isotropy, on every corpus pair. One pair (h3 with isotropy
//    equal to its center) is deliberately non-transitive.
void criterion6() {
    bool ok = true;
    auto check = [&](const char* name, const LieAlgebra<Rat>& g,
                     const Subspace<Rat>& h0, int expected_dim) {
        auto ker = realization_kernel(g, h0);
        auto ideal = largest_ideal_in(g, h0);
        bool good = ker == ideal && ker.dim() == expected_dim;
        if (!good) {
            ok = false;
            note(std::string(name) + ": kernel dim " +
                 std::to_string(ker.dim()) + ", ideal dim " +
                 std::to_string(ideal.dim()) + ", expected " +
                 std::to_string(expected_dim));
        }
        return good;
    };
    auto sl2 = fixtures::sl2();
    check("sl2 / span{E}", sl2, span_of(sl2, {1}), 0);
    check("sl2 / 0", sl2, Subspace<Rat>::zero(3), 0);
    auto h3 = fixtures::heisenberg(1);
    auto hz = span_of(h3, {2});
    bool center_pair = check("h3 / center", h3, hz, 1) &&
                       largest_ideal_in(h3, hz) == hz;
    ok = ok && center_pair;
    auto g4 = fixtures::heis_plus_center();
    check("h3+R / span{Z,W}", g4, span_of(g4, {2, 3}), 2);
    auto ext = fixtures::heis_graded_ext();
    check("graded ext / span{T}", ext, span_of(ext, {3}), 0);
    auto ab = fixtures::abelian(3);
    check("Q^3 / span{e0,e2}", ab, span_of(ab, {0, 2}), 2);
    verdict(6, "realization kernel equals the largest isotropy ideal", ok,
            "6 pairs, including the non-transitive h3/center pair");
}

// 7. Two independent routes to the sphere's symmetry dimension agree: the
//    stabilized value of the truncated symmetry filtration equals the total
//    dimension of the J-constrained prolongation of the symbol.
void criterion7() {
    auto g = fixtures::heisenberg(1);
    auto q = fixtures::sphere_q(1);
    auto tab = truncated_symmetries(g, Subspace<Rat>::zero(3), q, 8);
    auto s = cr_prolong_setup(make_cr(g, q));
    auto P = tanaka_prolong<Rat>(s.m, std::nullopt, 10, std::make_optional(s.J));
    auto fin = finiteness_check(P, 0);
    bool ok = tab.stabilized && tab.stable_value == fin.total_dim;
    verdict(7, "truncated symmetries match the constrained prolongation", ok,
            "sphere: plateau of 3 orders at dim " +
                std::to_string(tab.stable_value) + " (from order " +
                std::to_string(tab.stable_at) + "), prolongation total " +
                std::to_string(fin.total_dim));
}

// 8. Structural fuzz. 200 random solvable/nilpotent pairs (g, l0) with l0
//    generating: bracket law [F_a, F_b] in F_{a+b}, tail of the filtration
//    equals the largest ideal inside l0. 200 random CR structures on the
//    same family: equal chain lengths, hull idempotence, and the implication
//    chain strict => weak => contact-nondegenerate. Budget: 300 s.
void criterion8() {
    Timer t;
    std::mt19937_64 rng(86220413);
    bool ok = true;
    int bad = 0;
    auto flunk = [&](const std::string& why) {
        ok = false;
        if (++bad <= 5) note(why);
    };

    int pairs = 0;
    for (int iter = 0; pairs < 200; ++iter) {
        auto g = testgen::random_matrix_algebra(rng, iter % 2 == 0);
        auto l0 = testgen::random_generating_l0(rng, g);
        if (!l0) continue;
        ContactPair<Rat> p(g, *l0);
        auto f = contact_filtration(p);
        for (int a = -f.depth - 1; a <= f.stabilized_at + 1; ++a)
            for (int b = a; b <= f.stabilized_at + 1; ++b)
                if (!bracket_space(g, f.at(a), f.at(b)).leq(f.at(a + b)))
                    flunk("pair " + std::to_string(pairs) +
                          ": bracket law fails at (" + std::to_string(a) +
                          ", " + std::to_string(b) + ")");
        if (f.c0 != largest_ideal_in(g, p.l0))
            flunk("pair " + std::to_string(pairs) +
                  ": filtration tail is not the largest ideal in l0");
        ++pairs;
    }

    int crs = 0, declined = 0;
    for (int iter = 0; crs < 200; ++iter) {
        auto g = testgen::random_matrix_algebra(rng, iter % 2 == 1);
        auto cx = complexify(g);
        auto q = testgen::random_complex_subalgebra(rng, cx);
        if (q.dim() == 0 || q.dim() == g.dim()) continue;
        auto c = make_cr(g, q);
        try {
            auto ch = cr_chains(c);
            if (ch.qbar_terms.size() != ch.qtilde_terms.size() ||
                ch.qbar_terms.size() != static_cast<std::size_t>(ch.nu) + 1)
                flunk("cr " + std::to_string(crs) + ": chain lengths disagree");
            auto hulled = wn_hull(c);
            if (!weak_nondegenerate(hulled) || wn_hull(hulled).q != hulled.q)
                flunk("cr " + std::to_string(crs) + ": hull not idempotent");
            if (cr_strict_nondegenerate(c, ch) && !weak_nondegenerate(c, ch))
                flunk("cr " + std::to_string(crs) + ": strict but not weak");
            try {
                auto r = classify(c); // cross-checks both nondegeneracy routes
                if (r.cr_strict && !r.weak)
                    flunk("cr " + std::to_string(crs) +
                          ": strict but not weak");
                if (r.fundamental && r.weak && !r.contact_nondeg)
                    flunk("cr " + std::to_string(crs) +
                          ": weak but contact-degenerate");
            } catch (const Error& e) {
                // fundamental structures whose isotropy swallows an ideal are
                // refused; accept only when the ideal is really there
                if (e.code() == "NotTransitive" &&
                    largest_ideal_in(g, breve0(c)).dim() > 0)
                    ++declined;
                else
                    flunk("cr " + std::to_string(crs) + ": " + e.what());
            }
        } catch (const Error& e) {
            flunk("cr " + std::to_string(crs) + ": " + e.what());
        }
        ++crs;
    }

    double s = t.seconds();
    verdict(8, "structural fuzz over random solvable algebras",
            ok && s < 300.0,
            std::to_string(pairs) + " filtration pairs + " +
                std::to_string(crs) + " CR structures (" +
                std::to_string(declined) +
                " refused as non-transitive, refusals verified), " +
                fmt("%.1f", s) + "s");
}

} // namespace

int main() {
    Timer t;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%d/8 criteria passed in %.1fs\n", 8 - failures, t.seconds());
    return failures;
}
