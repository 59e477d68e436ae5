#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cr.hpp"

namespace crlab::presets {

// A named algebra together with the subspaces that usually accompany it
// (contact planes, CR structures, isotropy choices).
struct Preset {
    std::string name;
    LieAlgebra<Rat> algebra;
    std::map<std::string, Subspace<Rat>> real_subspaces;
    std::map<std::string, Subspace<Gauss>> complex_subspaces;
};

// Heisenberg algebra of dimension 2n+1 with [X_i, Y_i] = Z, carrying the
// contact plane span{X_i, Y_i} and the sphere CR structure span_C{X_i - iY_i}.
inline Preset heisenberg(int n) {
    int d = 2 * n + 1;
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
    for (int i = 1; i <= n; ++i) labels.push_back("Y" + std::to_string(i));
    labels.push_back("Z");
    LieAlgebra<Rat> g(d, labels);
    for (int i = 0; i < n; ++i) {
        Vec<Rat> z(d, Rat(0));
        z[d - 1] = Rat(1);
        g.set_bracket(i, n + i, std::move(z));
    }

    Matrix<Rat> plane(2 * n, d);
    for (int i = 0; i < 2 * n; ++i) plane.at(i, i) = Rat(1);

    Matrix<Gauss> qrows(n, d);
    for (int i = 0; i < n; ++i) {
        qrows.at(i, i) = Gauss(1);
        qrows.at(i, n + i) = -Gauss::i();
    }

    Preset p;
    p.name = "heisenberg" + std::to_string(n);
    p.algebra = std::move(g);
    p.real_subspaces.emplace("l_contact", Subspace<Rat>::from_rows(d, std::move(plane)));
    p.complex_subspaces.emplace("q_sphere", Subspace<Gauss>::from_rows(d, std::move(qrows)));
    return p;
}

inline Preset sl2() {
    LieAlgebra<Rat> g(3, {"H", "E", "F"});
    g.set_bracket(0, 1, {Rat(0), Rat(2), Rat(0)});
    g.set_bracket(0, 2, {Rat(0), Rat(0), Rat(-2)});
    g.set_bracket(1, 2, {Rat(1), Rat(0), Rat(0)});

    Matrix<Rat> e(1, 3);
    e.at(0, 1) = Rat(1);

    Preset p;
    p.name = "sl2";
    p.algebra = std::move(g);
    p.real_subspaces.emplace("h_nilpotent", Subspace<Rat>::from_rows(3, std::move(e)));
    return p;
}

inline Preset abelian(int n) {
    Preset p;
    p.name = "abelian" + std::to_string(n);
    p.algebra = LieAlgebra<Rat>(n);
    return p;
}

// --- the su(1,5) minimal-orbit fixture -------------------------------------
//
// 6x6 trace-free matrices X with -E X^dagger E = X, where E is the identity
// on the middle block and swaps the first and last coordinates.  The 35 real
// parameters are: lambda in C on the corners, s and sigma on the off-corners,
// t_1..t_3 on the inner diagonal (t_4 balances the trace), z and zeta columns
// and rows, and the w entries of the inner u(4) block.

struct Su15Data {
    MatrixAlgebra<Rat> matrix_algebra;
    Subspace<Gauss> q;
    Subspace<Gauss> q_prime;
};

namespace detail {

// coordinate subspace of the generator span cut out by vanishing of all
// matrix entries outside the allowed pattern
inline Subspace<Gauss> entry_pattern_subspace(const std::vector<Matrix<Gauss>>& gens,
                                              const bool (&allowed)[6][6]) {
    std::vector<Vec<Gauss>> rows;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            if (allowed[r][c]) continue;
            Vec<Gauss> row(gens.size(), Gauss(0));
            for (std::size_t k = 0; k < gens.size(); ++k) row[k] = gens[k].at(r, c);
            rows.push_back(std::move(row));
        }
    int n = int(gens.size());
    return Subspace<Gauss>::from_rows(n, kernel(rows_to_matrix(rows, n)));
}

} // namespace detail

inline Su15Data su15_data() {
    const Gauss I = Gauss::i();
    std::vector<Matrix<Gauss>> gens;
    std::vector<std::string> labels;
    auto put = [&](std::string name,
                   std::initializer_list<std::tuple<int, int, Gauss>> entries) {
        Matrix<Gauss> m(6, 6);
        for (const auto& [r, c, v] : entries) m.at(r, c) = v;
        gens.push_back(std::move(m));
        labels.push_back(std::move(name));
    };

    put("re_lambda", {{0, 0, Gauss(1)}, {5, 5, Gauss(-1)}});
    put("im_lambda", {{0, 0, I}, {4, 4, Gauss(-2) * I}, {5, 5, I}});
    put("s", {{5, 0, I}});
    put("sigma", {{0, 5, I}});
    for (int j = 1; j <= 3; ++j)
        put("t" + std::to_string(j), {{j, j, I}, {4, 4, -I}});
    for (int j = 1; j <= 4; ++j) {
        put("re_z" + std::to_string(j), {{j, 0, Gauss(1)}, {5, j, Gauss(-1)}});
        put("im_z" + std::to_string(j), {{j, 0, I}, {5, j, I}});
    }
    for (int j = 1; j <= 4; ++j) {
        put("re_zeta" + std::to_string(j), {{0, j, Gauss(1)}, {j, 5, Gauss(-1)}});
        put("im_zeta" + std::to_string(j), {{0, j, I}, {j, 5, I}});
    }
    const int wpos[6][2] = {{2, 1}, {3, 1}, {4, 1}, {3, 2}, {4, 2}, {4, 3}};
    for (int k = 0; k < 6; ++k) {
        int a = wpos[k][0], b = wpos[k][1];
        put("re_w" + std::to_string(k + 1), {{a, b, Gauss(1)}, {b, a, Gauss(-1)}});
        put("im_w" + std::to_string(k + 1), {{a, b, I}, {b, a, I}});
    }

    const bool qpat[6][6] = {
        {1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 1},
        {0, 0, 1, 1, 1, 1},
        {0, 0, 0, 1, 1, 1},
        {0, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1},
    };
    bool qppat[6][6];
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) qppat[r][c] = qpat[r][c];
    qppat[3][2] = true;

    Su15Data d;
    d.q = detail::entry_pattern_subspace(gens, qpat);
    d.q_prime = detail::entry_pattern_subspace(gens, qppat);
    d.matrix_algebra = from_matrices<Rat>(gens, std::move(labels));
    return d;
}

inline Preset su15() {
    Su15Data d = su15_data();
    Preset p;
    p.name = "su15";
    p.algebra = std::move(d.matrix_algebra.alg);
    p.complex_subspaces.emplace("q", std::move(d.q));
    p.complex_subspaces.emplace("q_prime", std::move(d.q_prime));
    return p;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"abelian:n", "heisenberg:n",
                                                   "sl2", "su15"};
    return names;
}

// Resolves "heisenberg:2", "su15", ... to a preset.
inline Preset lookup(const std::string& name) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    std::optional<int> param;
    if (colon != std::string::npos) {
        std::string tail = name.substr(colon + 1);
        try {
            std::size_t used = 0;
            int v = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
            param = v;
        } catch (const std::exception&) {
            throw Error("UnknownPreset", "malformed parameter in preset '" + name + "'");
        }
    }
    auto need_param = [&](int lo, int hi) {
        if (!param)
            throw Error("UnknownPreset", "preset '" + head + "' needs a parameter, e.g. " +
                                             head + ":2");
        if (*param < lo || *param > hi)
            throw Error("UnknownPreset", "parameter of preset '" + name + "' is outside [" +
                                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return *param;
    };
    auto no_param = [&]() {
        if (param)
            throw Error("UnknownPreset", "preset '" + head + "' takes no parameter");
    };
    if (head == "heisenberg") return heisenberg(need_param(1, 32));
    if (head == "abelian") return abelian(need_param(1, 64));
    if (head == "sl2") {
        no_param();
        return sl2();
    }
    if (head == "su15") {
        no_param();
        return su15();
    }
    std::string known;
    for (const auto& n : preset_names()) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw Error("UnknownPreset", "no preset named '" + head + "'", "known: " + known);
}

} // namespace crlab::presets
