// End-to-end tests driving the installed binary through a shell.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string bin() {
    if (const char* env = std::getenv("CRLAB_BIN")) return env;
    return CRLAB_BIN_PATH;
}

RunResult run(const std::string& args) {
    std::string cmd = bin() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

const std::string& scratch() {
    static const std::string d = [] {
        char tmpl[] = "/tmp/crlab_cli_XXXXXX";
        const char* r = mkdtemp(tmpl);
        REQUIRE(r != nullptr);
        return std::string(r);
    }();
    return d;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

} // namespace

TEST_CASE("validate and presets", "[cli]") {
    auto r = run("validate preset:su15");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "valid, dim 35\n");

    auto bad = run("validate preset:no_such_thing --json");
    REQUIRE(bad.code == 1);
    json j = json::parse(bad.out);
    REQUIRE(j.at("error").at("code") == "UnknownPreset");

    auto emitted = run("preset heisenberg:1 --out-dir " + scratch());
    REQUIRE(emitted.code == 0);
    REQUIRE(emitted.out.find("heisenberg1_q_sphere.json") != std::string::npos);

    auto from_file = run("validate " + scratch() + "/heisenberg1.json");
    REQUIRE(from_file.code == 0);
    REQUIRE(from_file.out == "valid, dim 3\n");
}

TEST_CASE("classify matches the sphere model", "[cli]") {
    run("preset heisenberg:1 --out-dir " + scratch());
    auto r = run("classify preset:heisenberg:1 --q " + scratch() +
                 "/heisenberg1_q_sphere.json --json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("command") == "classify");
    const json& res = j.at("result");
    REQUIRE(res.at("fundamental") == true);
    REQUIRE(res.at("strict") == true);
    REQUIRE(res.at("nu") == 1);
    REQUIRE(res.at("k") == 0);

    // identical inputs give byte-identical reports
    auto again = run("classify preset:heisenberg:1 --q " + scratch() +
                     "/heisenberg1_q_sphere.json --json");
    REQUIRE(again.out == r.out);
}

TEST_CASE("classify the su15 fixture from emitted files", "[cli]") {
    run("preset su15 --out-dir " + scratch());
    auto r = run("classify " + scratch() + "/su15.json --q " + scratch() +
                 "/su15_q.json --json");
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out).at("result");
    REQUIRE(res.at("fundamental") == true);
    REQUIRE(res.at("weak") == false);
    REQUIRE(res.at("hull_gap") == 1);
    REQUIRE(res.at("contact_nondegenerate") == true);
    REQUIRE(res.at("largest_ideal_dim") == 0);
}

TEST_CASE("contact chain errors carry structured payloads", "[cli]") {
    run("preset abelian:3 --out-dir " + scratch());
    write_file(scratch() + "/l_bad.json",
               R"({"kind":"subspace","field":"Q","ambient":3,"vectors":[{"e1":"1"}]})");
    auto r = run("chain contact " + scratch() + "/abelian3.json --l " + scratch() +
                 "/l_bad.json --json");
    REQUIRE(r.code == 1);
    json j = json::parse(r.out);
    REQUIRE(j.at("error").at("code") == "NotFundamental");
    REQUIRE_FALSE(j.contains("result"));
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    REQUIRE(run("").code == 2);
    REQUIRE(run("frobnicate").code == 2);
    REQUIRE(run("classify").code == 2);                      // missing algebra and --q
    REQUIRE(run("prolong preset:sl2").code == 2);            // neither --l nor --q
    REQUIRE(run("chain").code == 2);                         // missing chain kind
    REQUIRE(run("--help").code == 0);
}

TEST_CASE("prolong reports the sphere profile", "[cli]") {
    run("preset heisenberg:1 --out-dir " + scratch());
    auto r = run("prolong preset:heisenberg:1 --q " + scratch() +
                 "/heisenberg1_q_sphere.json --max-degree 6 --json");
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out).at("result");
    REQUIRE(res.at("terminated") == true);
    REQUIRE(res.at("first_zero") == 3);
    REQUIRE(res.at("total_dim") == 8);
    std::map<int, int> dims;
    for (const auto& row : res.at("components"))
        dims[row.at("h").get<int>()] = row.at("dim").get<int>();
    REQUIRE(dims == std::map<int, int>{{-2, 1}, {-1, 2}, {0, 2}, {1, 2}, {2, 1}});
}

TEST_CASE("symmetries stabilize on the sphere and grow on the contact plane", "[cli]") {
    run("preset heisenberg:1 --out-dir " + scratch());
    write_file(scratch() + "/h_zero.json",
               R"({"kind":"subspace","field":"Q","ambient":3,"vectors":[]})");

    auto cr = run("symmetries preset:heisenberg:1 --h " + scratch() + "/h_zero.json --q " +
                  scratch() + "/heisenberg1_q_sphere.json --order 7 --json");
    REQUIRE(cr.code == 0);
    const json res = json::parse(cr.out).at("result");
    REQUIRE(res.at("stabilized") == true);
    REQUIRE(res.at("stable_value") == 8);

    auto real = run("symmetries preset:heisenberg:1 --h " + scratch() + "/h_zero.json --l " +
                    scratch() + "/heisenberg1_l_contact.json --order 5 --json");
    REQUIRE(real.code == 0);
    const json rr = json::parse(real.out).at("result");
    REQUIRE(rr.at("stabilized") == false);
    auto dims = rr.at("dims");
    REQUIRE(dims.size() == 6);
    REQUIRE(dims[5].at("dim").get<int>() > dims[4].at("dim").get<int>());
}

TEST_CASE("realize prints star fields", "[cli]") {
    run("preset sl2 --out-dir " + scratch());
    auto r = run("realize preset:sl2 --h " + scratch() +
                 "/sl2_h_nilpotent.json --order 3 --basis F --json");
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out).at("result");
    REQUIRE(res.at("variables") == json::array({"H", "F"}));
    REQUIRE(res.at("fields").size() == 1);
    const json& f = res.at("fields")[0];
    REQUIRE(f.at("basis") == "F");
    bool found = false;
    for (const auto& term : f.at("rstar"))
        if (term.at("monomial") == json{{"H", 2}} && term.at("value") == json{{"F", "1/3"}})
            found = true;
    REQUIRE(found);

    auto human = run("realize preset:sl2 --h " + scratch() +
                     "/sl2_h_nilpotent.json --order 2 --basis H");
    REQUIRE(human.code == 0);
    REQUIRE(human.out.find("R*_H") != std::string::npos);
    REQUIRE(human.out.find("L*_H") != std::string::npos);
}
