#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lie.hpp"

// JSON manifests for algebras and subspaces.  All scalars travel as exact
// strings ("2/3", "1/2-3/4*i"); floats are rejected.  Printing is canonical:
// sorted keys, reduced basis rows, zero entries omitted, so equal objects
// print byte-identically.

namespace crlab::manifest {

using nlohmann::json;

inline constexpr const char* tool_version = "0.1.0";

namespace detail {

template <class K> K scalar_from_json(const json& v) {
    if (v.is_string()) return FieldTraits<K>::parse(v.get<std::string>());
    if (v.is_number_integer()) return K(v.get<long>());
    if (v.is_number_float())
        throw Error("BadManifest", "floating point values are not accepted",
                    "write scalars as exact strings, e.g. \"2/3\"");
    throw Error("BadManifest", "scalar entries must be strings or integers");
}

inline int label_index(const std::vector<std::string>& labels, const std::string& name) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return int(i);
    throw Error("BadManifest", "unknown basis label '" + name + "'");
}

template <class K>
Vec<K> vector_from_json(const json& v, const std::vector<std::string>& labels) {
    if (!v.is_object())
        throw Error("BadManifest", "vectors must be objects mapping labels to scalars");
    Vec<K> x(labels.size(), K(0));
    for (const auto& [key, val] : v.items())
        x[label_index(labels, key)] = scalar_from_json<K>(val);
    return x;
}

template <class K>
json vector_to_json(const Vec<K>& x, const std::vector<std::string>& labels) {
    json v = json::object();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero(x[i])) v[labels[i]] = FieldTraits<K>::print(x[i]);
    return v;
}

} // namespace detail

inline LieAlgebra<Rat> algebra_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || j.at("kind") != "algebra")
        throw Error("BadManifest", "expected an object with \"kind\": \"algebra\"");
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw Error("BadManifest", "algebra manifest needs an integer \"dim\"");
    int n = j.at("dim").get<int>();
    if (n < 0) throw Error("BadManifest", "negative dimension");

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j.at("labels").is_array())
            throw Error("BadManifest", "\"labels\" must be an array of strings");
        for (const auto& l : j.at("labels")) {
            if (!l.is_string() || l.get<std::string>().empty())
                throw Error("BadManifest", "labels must be nonempty strings");
            labels.push_back(l.get<std::string>());
        }
        std::set<std::string> uniq(labels.begin(), labels.end());
        if (int(uniq.size()) != n || int(labels.size()) != n)
            throw Error("BadManifest", "labels must be distinct and match \"dim\"");
    }
    LieAlgebra<Rat> g(n, std::move(labels));

    std::set<std::pair<int, int>> seen;
    if (j.contains("brackets")) {
        if (!j.at("brackets").is_array())
            throw Error("BadManifest", "\"brackets\" must be an array");
        for (const auto& b : j.at("brackets")) {
            if (!b.is_object() || !b.contains("x") || !b.contains("y") || !b.contains("value"))
                throw Error("BadManifest", "each bracket needs \"x\", \"y\" and \"value\"");
            int i = detail::label_index(g.labels(), b.at("x").get<std::string>());
            int k = detail::label_index(g.labels(), b.at("y").get<std::string>());
            if (i == k)
                throw Error("BadManifest", "bracket [x, x] must vanish and is not listed");
            auto key = std::minmax(i, k);
            if (!seen.insert({key.first, key.second}).second)
                throw Error("BadManifest", "duplicate bracket for one basis pair");
            g.set_bracket(i, k, detail::vector_from_json<Rat>(b.at("value"), g.labels()));
        }
    }
    g.validate();
    return g;
}

inline json algebra_to_json(const LieAlgebra<Rat>& g) {
    json j;
    j["kind"] = "algebra";
    j["dim"] = g.dim();
    j["labels"] = g.labels();
    json brackets = json::array();
    for (int i = 0; i < g.dim(); ++i)
        for (int k = i + 1; k < g.dim(); ++k) {
            const Vec<Rat>& v = g.bracket_basis(i, k);
            if (vec_is_zero(v)) continue;
            json b;
            b["x"] = g.labels()[i];
            b["y"] = g.labels()[k];
            b["value"] = detail::vector_to_json(v, g.labels());
            brackets.push_back(std::move(b));
        }
    j["brackets"] = std::move(brackets);
    return j;
}

template <class K>
Subspace<K> subspace_from_json(const json& j, const std::vector<std::string>& labels) {
    if (!j.is_object() || !j.contains("kind") || j.at("kind") != "subspace")
        throw Error("BadManifest", "expected an object with \"kind\": \"subspace\"");
    if (!j.contains("field") || j.at("field") != FieldTraits<K>::name())
        throw Error("BadManifest", std::string("subspace field must be \"") +
                                       FieldTraits<K>::name() + "\" here");
    int n = int(labels.size());
    if (j.contains("ambient") && j.at("ambient").get<int>() != n)
        throw Error("DimensionMismatch",
                    "subspace ambient dimension does not match the algebra");
    std::vector<Vec<K>> rows;
    if (!j.contains("vectors") || !j.at("vectors").is_array())
        throw Error("BadManifest", "subspace manifest needs a \"vectors\" array");
    for (const auto& v : j.at("vectors"))
        rows.push_back(detail::vector_from_json<K>(v, labels));
    return Subspace<K>::from_vectors(n, rows);
}

template <class K>
json subspace_to_json(const Subspace<K>& s, const std::vector<std::string>& labels) {
    json j;
    j["kind"] = "subspace";
    j["field"] = FieldTraits<K>::name();
    j["ambient"] = s.ambient();
    json vs = json::array();
    for (int i = 0; i < s.dim(); ++i)
        vs.push_back(detail::vector_to_json(s.basis_vector(i), labels));
    j["vectors"] = std::move(vs);
    return j;
}

inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileError", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error("BadManifest", "invalid JSON in '" + path + "'", e.what());
    }
    return j;
}

inline void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("FileError", "cannot write '" + path + "'");
    out << canonical(j);
}

} // namespace crlab::manifest
