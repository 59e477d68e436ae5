// crlab: exact computations with contact pairs, CR algebras and their
// truncated vector-field realizations.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crlab/manifest.hpp"
#include "crlab/presets.hpp"
#include "crlab/prolong.hpp"
#include "crlab/realize.hpp"

using namespace crlab;
using manifest::json;

namespace {

struct Ctx {
    std::string command;
    bool emit_json = false;
    json inputs = json::object();
};

struct LoadedAlgebra {
    LieAlgebra<Rat> g;
    std::optional<presets::Preset> preset;
};

bool is_preset_spec(const std::string& s) { return s.rfind("preset:", 0) == 0; }

LoadedAlgebra load_algebra(const std::string& spec) {
    LoadedAlgebra out;
    if (is_preset_spec(spec)) {
        out.preset = presets::lookup(spec.substr(7));
        out.g = out.preset->algebra;
        out.g.validate();
    } else {
        out.g = manifest::algebra_from_json(manifest::load_file(spec));
    }
    return out;
}

template <class K>
const std::map<std::string, Subspace<K>>& preset_subspaces(const presets::Preset& p);
template <>
const std::map<std::string, Subspace<Rat>>& preset_subspaces(const presets::Preset& p) {
    return p.real_subspaces;
}
template <>
const std::map<std::string, Subspace<Gauss>>& preset_subspaces(const presets::Preset& p) {
    return p.complex_subspaces;
}

// A subspace argument is either a manifest file or "preset:NAME" referring to
// a subspace shipped with the algebra preset.
template <class K>
Subspace<K> load_subspace(const std::string& spec, const LoadedAlgebra& a) {
    if (is_preset_spec(spec)) {
        if (!a.preset)
            throw Error("BadManifest",
                        "subspace '" + spec + "' needs the algebra to come from a preset");
        const auto& table = preset_subspaces<K>(*a.preset);
        auto it = table.find(spec.substr(7));
        if (it == table.end())
            throw Error("UnknownPreset", "preset '" + a.preset->name +
                                             "' has no subspace named '" + spec.substr(7) + "'");
        return it->second;
    }
    return manifest::subspace_from_json<K>(manifest::load_file(spec), a.g.labels());
}

void emit(const Ctx& ctx, const json& result, const std::string& human) {
    if (ctx.emit_json) {
        json report;
        report["tool"] = "crlab";
        report["version"] = manifest::tool_version;
        report["command"] = ctx.command;
        report["inputs"] = ctx.inputs;
        report["result"] = result;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << human;
    }
}

std::string print_flag(bool b) { return b ? "true" : "false"; }

// --- command bodies --------------------------------------------------------

void cmd_validate(Ctx& ctx, const std::string& alg) {
    LoadedAlgebra a = load_algebra(alg); // throws on any defect
    json result;
    result["valid"] = true;
    result["dim"] = a.g.dim();
    result["labels"] = a.g.labels();
    emit(ctx, result, "valid, dim " + std::to_string(a.g.dim()) + "\n");
}

void cmd_chain_contact(Ctx& ctx, const std::string& alg, const std::string& lf) {
    LoadedAlgebra a = load_algebra(alg);
    ContactPair<Rat> p(a.g, load_subspace<Rat>(lf, a));
    ContactFiltration<Rat> f = contact_filtration(p);

    json levels = json::array();
    std::string human;
    for (int h = -f.depth; h <= f.stabilized_at; ++h) {
        json row;
        row["h"] = h;
        row["dim"] = f.at(h).dim();
        levels.push_back(std::move(row));
        human += "F_" + std::to_string(h) + ": dim " + std::to_string(f.at(h).dim()) + "\n";
    }
    json result;
    result["depth"] = f.depth;
    result["stabilized_at"] = f.stabilized_at;
    result["levels"] = std::move(levels);
    result["c0_dim"] = f.c0.dim();
    human += "depth " + std::to_string(f.depth) + ", stable tail c0 of dim " +
             std::to_string(f.c0.dim()) + "\n";
    emit(ctx, result, human);
}

void cmd_chain_cr(Ctx& ctx, const std::string& alg, const std::string& qf) {
    LoadedAlgebra a = load_algebra(alg);
    CRAlgebra c = make_cr(a.g, load_subspace<Gauss>(qf, a));
    CRChain ch = cr_chains(c);

    json steps = json::array();
    std::string human;
    for (std::size_t h = 0; h < ch.qbar_terms.size(); ++h) {
        json row;
        row["h"] = int(h);
        row["qbar_dim"] = ch.qbar_terms[h].dim();
        row["qtilde_dim"] = ch.qtilde_terms[h].dim();
        steps.push_back(std::move(row));
        human += "h=" + std::to_string(h) + ": qbar dim " +
                 std::to_string(ch.qbar_terms[h].dim()) + ", qtilde dim " +
                 std::to_string(ch.qtilde_terms[h].dim()) + "\n";
    }
    json result;
    result["nu"] = ch.nu;
    result["steps"] = std::move(steps);
    result["hull_dim"] = ch.hull.dim();
    result["weak"] = weak_nondegenerate(c, ch);
    result["cr_strict"] = cr_strict_nondegenerate(c, ch);
    human += "nu = " + std::to_string(ch.nu) + ", hull dim " + std::to_string(ch.hull.dim()) +
             ", weakly nondegenerate: " + print_flag(result["weak"].get<bool>()) + "\n";
    emit(ctx, result, human);
}

void cmd_classify(Ctx& ctx, const std::string& alg, const std::string& qf) {
    LoadedAlgebra a = load_algebra(alg);
    CRAlgebra c = make_cr(a.g, load_subspace<Gauss>(qf, a));
    Classification r = classify(c);

    json result;
    result["fundamental"] = r.fundamental;
    result["nu"] = r.nu;
    result["weak"] = r.weak;
    result["cr_strict"] = r.cr_strict;
    result["hull_gap"] = r.hull_gap;
    std::string human;
    human += "fundamental:            " + print_flag(r.fundamental) + "\n";
    human += "weakly nondegenerate:   " + print_flag(r.weak) + " (nu = " +
             std::to_string(r.nu) + ", hull gap " + std::to_string(r.hull_gap) + ")\n";
    if (r.fundamental) {
        result["strict"] = r.strict;
        result["contact_nondegenerate"] = r.contact_nondeg;
        result["k"] = r.k ? json(*r.k) : json(nullptr);
        result["depth"] = r.depth;
        result["largest_ideal_dim"] = r.largest_ideal_dim;
        human += "strictly nondegenerate: " + print_flag(r.strict) + "\n";
        human += "contact nondegenerate:  " + print_flag(r.contact_nondeg) +
                 (r.k ? " (k = " + std::to_string(*r.k) + ")" : "") + "\n";
        human += "depth:                  " + std::to_string(r.depth) + "\n";
        human += "largest ideal in l0:    dim " + std::to_string(r.largest_ideal_dim) + "\n";
    } else {
        human += "contact invariants skipped: the pair is not fundamental\n";
    }
    emit(ctx, result, human);
}

void cmd_grade(Ctx& ctx, const std::string& alg, const std::string& lf) {
    LoadedAlgebra a = load_algebra(alg);
    ContactPair<Rat> p(a.g, load_subspace<Rat>(lf, a));
    ContactFiltration<Rat> f = contact_filtration(p);
    AssociatedGraded<Rat> ag = associated_graded(a.g, f);

    json comps = json::array();
    std::string human;
    for (const auto& [h, d] : ag.graded.components()) {
        json row;
        row["h"] = h;
        row["dim"] = d;
        comps.push_back(std::move(row));
        human += "G_" + std::to_string(h) + ": dim " + std::to_string(d) + "\n";
    }
    json result;
    result["depth"] = f.depth;
    result["components"] = std::move(comps);
    result["fundamental"] = graded_fundamental(ag.graded);
    result["transitive"] = is_transitive(ag.graded);
    human += "fundamental: " + print_flag(result["fundamental"].get<bool>()) +
             ", transitive: " + print_flag(result["transitive"].get<bool>()) + "\n";
    if (ag.graded.dim(-2) > 0) {
        bool levi = levi_nondegenerate(ag.graded);
        result["levi_nondegenerate"] = levi;
        human += "Levi form nondegenerate: " + print_flag(levi) + "\n";
    }
    emit(ctx, result, human);
}

void prolong_report(Ctx& ctx, const Prolongation<Rat>& P) {
    json comps = json::array();
    std::string human;
    for (const auto& [h, d] : P.graded.components()) {
        json row;
        row["h"] = h;
        row["dim"] = d;
        comps.push_back(std::move(row));
        human += "G_" + std::to_string(h) + ": dim " + std::to_string(d) + "\n";
    }
    json result;
    result["components"] = std::move(comps);
    result["terminated"] = P.terminated;
    result["first_zero"] = P.terminated ? json(P.first_zero) : json(nullptr);
    result["total_dim"] = P.graded.total_dim();
    if (P.terminated)
        human += "terminated: first zero component at degree " + std::to_string(P.first_zero) +
                 ", total dim " + std::to_string(P.graded.total_dim()) + "\n";
    else
        human += "cap reached: no zero component up to the cap (dim so far " +
                 std::to_string(P.graded.total_dim()) + ")\n";
    emit(ctx, result, human);
}

void cmd_prolong(Ctx& ctx, const std::string& alg, const std::string& lf,
                 const std::string& qf, int cap) {
    LoadedAlgebra a = load_algebra(alg);
    if (!qf.empty()) {
        CRAlgebra c = make_cr(a.g, load_subspace<Gauss>(qf, a));
        CRProlongSetup setup = cr_prolong_setup(c);
        prolong_report(ctx, tanaka_prolong<Rat>(setup.m, std::nullopt, cap,
                                                std::make_optional(setup.J)));
    } else {
        ContactPair<Rat> p(a.g, load_subspace<Rat>(lf, a));
        ContactFiltration<Rat> f = contact_filtration(p);
        AssociatedGraded<Rat> ag = associated_graded(a.g, f);
        GradedLieAlgebra<Rat> m = negative_part(ag.graded);
        prolong_report(ctx, tanaka_prolong<Rat>(m, std::nullopt, cap));
    }
}

// variable names for the default complement frame: the labels of the
// coordinates not used by the isotropy
std::vector<std::string> frame_variable_names(const Subspace<Rat>& h0,
                                              const std::vector<std::string>& labels) {
    std::vector<bool> is_pivot(labels.size(), false);
    for (int p : h0.pivots()) is_pivot[p] = true;
    std::vector<std::string> vars;
    for (std::size_t t = 0; t < labels.size(); ++t)
        if (!is_pivot[t]) vars.push_back(labels[t]);
    return vars;
}

std::string mono_string(const Mono& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string value_string(const Vec<Rat>& v, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (is_zero(v[k])) continue;
        if (!s.empty()) s += " + ";
        s += "(" + FieldTraits<Rat>::print(v[k]) + ")*" + names[k];
    }
    return s.empty() ? "0" : s;
}

json field_to_json(const PolyVec<Rat>& f, const std::vector<std::string>& vars,
                   const std::vector<std::string>& names) {
    json terms = json::array();
    for (const auto& [m, v] : f.terms) {
        json mono = json::object();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) mono[vars[i]] = m[i];
        json t;
        t["monomial"] = std::move(mono);
        t["value"] = manifest::detail::vector_to_json(v, names);
        terms.push_back(std::move(t));
    }
    return terms;
}

std::string field_to_text(const PolyVec<Rat>& f, const std::vector<std::string>& vars,
                          const std::vector<std::string>& names, int order) {
    std::string s;
    for (int h = 0; h <= order; ++h) {
        PolyVec<Rat> part = f.degree_part(h);
        if (part.terms.empty()) continue;
        s += "    deg " + std::to_string(h) + ":\n";
        for (const auto& [m, v] : part.terms)
            s += "      [" + mono_string(m, vars) + "] " + value_string(v, names) + "\n";
    }
    if (s.empty()) s = "    0\n";
    return s;
}

void cmd_realize(Ctx& ctx, const std::string& alg, const std::string& hf, int order,
                 const std::string& basis_csv) {
    LoadedAlgebra a = load_algebra(alg);
    Subspace<Rat> h0 = load_subspace<Rat>(hf, a);
    StarRealization<Rat> star(a.g, h0, order);
    std::vector<std::string> vars = frame_variable_names(h0, a.g.labels());

    std::vector<int> picks;
    if (basis_csv.empty()) {
        for (int i = 0; i < a.g.dim(); ++i) picks.push_back(i);
    } else {
        std::string csv = basis_csv;
        while (!csv.empty()) {
            auto comma = csv.find(',');
            std::string name = csv.substr(0, comma);
            csv = comma == std::string::npos ? "" : csv.substr(comma + 1);
            picks.push_back(manifest::detail::label_index(a.g.labels(), name));
        }
    }

    json fields = json::array();
    std::string human;
    for (int i : picks) {
        const std::string& name = a.g.labels()[i];
        TruncatedVectorField<Rat> r = star.r_star_field(a.g.basis_vector(i));
        TruncatedVectorField<Rat> l = star.l_star_field(a.g.basis_vector(i));
        json jf;
        jf["basis"] = name;
        jf["rstar"] = field_to_json(r.f, vars, vars);
        jf["lstar"] = field_to_json(l.f, vars, vars);
        fields.push_back(std::move(jf));
        human += "R*_" + name + ":\n" + field_to_text(r.f, vars, vars, order);
        human += "L*_" + name + ":\n" + field_to_text(l.f, vars, vars, order);
    }
    json result;
    result["order"] = order;
    result["variables"] = vars;
    result["fields"] = std::move(fields);
    emit(ctx, result, human);
}

void cmd_symmetries(Ctx& ctx, const std::string& alg, const std::string& hf,
                    const std::string& lf, const std::string& qf, int order) {
    LoadedAlgebra a = load_algebra(alg);
    Subspace<Rat> h0 = load_subspace<Rat>(hf, a);
    SymmetryTable table = qf.empty()
                              ? truncated_symmetries(a.g, h0, load_subspace<Rat>(lf, a), order)
                              : truncated_symmetries(a.g, h0, load_subspace<Gauss>(qf, a), order);

    json dims = json::array();
    std::string human;
    for (std::size_t n = 0; n < table.dims.size(); ++n) {
        json row;
        row["order"] = int(n);
        row["dim"] = table.dims[n];
        dims.push_back(std::move(row));
        human += "order " + std::to_string(n) + ": dim " + std::to_string(table.dims[n]) + "\n";
    }
    json result;
    result["dims"] = std::move(dims);
    result["stabilized"] = table.stabilized;
    if (table.stabilized) {
        result["stable_at"] = table.stable_at;
        result["stable_value"] = table.stable_value;
        human += "stabilizes at order " + std::to_string(table.stable_at) + " with dim " +
                 std::to_string(table.stable_value) + "\n";
    } else {
        result["stable_at"] = json(nullptr);
        result["stable_value"] = json(nullptr);
        human += "does not stabilize within the cap\n";
    }
    emit(ctx, result, human);
}

void cmd_preset(Ctx& ctx, const std::string& name, const std::string& out_dir) {
    presets::Preset p = presets::lookup(name);
    std::vector<std::string> files;
    auto path_of = [&](const std::string& stem) { return out_dir + "/" + stem + ".json"; };

    manifest::save_file(path_of(p.name), manifest::algebra_to_json(p.algebra));
    files.push_back(path_of(p.name));
    for (const auto& [sub, s] : p.real_subspaces) {
        manifest::save_file(path_of(p.name + "_" + sub),
                            manifest::subspace_to_json(s, p.algebra.labels()));
        files.push_back(path_of(p.name + "_" + sub));
    }
    for (const auto& [sub, s] : p.complex_subspaces) {
        manifest::save_file(path_of(p.name + "_" + sub),
                            manifest::subspace_to_json(s, p.algebra.labels()));
        files.push_back(path_of(p.name + "_" + sub));
    }

    json result;
    result["name"] = p.name;
    result["dim"] = p.algebra.dim();
    result["files"] = files;
    std::string human;
    for (const auto& f : files) human += "wrote " + f + "\n";
    emit(ctx, result, human);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with contact pairs and CR algebras"};
    // long-form help only: "-h" must stay free for the --h isotropy option
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    std::string alg, lf, hf, qf, basis_csv, preset_name, out_dir = ".";
    int cap = 10, order = 4;
    Ctx ctx;

    auto subcommand = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* c = parent->add_subcommand(name, desc);
        c->set_help_flag("--help", "print this help message and exit");
        return c;
    };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", ctx.emit_json, "emit a JSON report"); };
    auto add_alg = [&](CLI::App* c) {
        c->add_option("algebra", alg, "algebra manifest file or preset:NAME")->required();
    };

    CLI::App* validate = subcommand(&app, "validate", "check a manifest and report dimensions");
    add_alg(validate);
    add_json(validate);

    CLI::App* chain = subcommand(&app, "chain", "descending chains");
    chain->require_subcommand(1);
    CLI::App* chain_contact = subcommand(chain, "contact", "canonical filtration of a pair");
    add_alg(chain_contact);
    chain_contact->add_option("--l", lf, "distinguished subspace l0")->required();
    add_json(chain_contact);
    CLI::App* chain_cr = subcommand(chain, "cr", "qbar/qtilde chains of a CR algebra");
    add_alg(chain_cr);
    chain_cr->add_option("--q", qf, "complex subalgebra q")->required();
    add_json(chain_cr);

    CLI::App* cls = subcommand(&app, "classify", "nondegeneracy classification of a CR algebra");
    add_alg(cls);
    cls->add_option("--q", qf, "complex subalgebra q")->required();
    add_json(cls);

    CLI::App* grade = subcommand(&app, "grade", "associated graded algebra of a pair");
    add_alg(grade);
    grade->add_option("--l", lf, "distinguished subspace l0")->required();
    add_json(grade);

    CLI::App* prolong = subcommand(&app, "prolong", "Tanaka prolongation of the symbol");
    add_alg(prolong);
    prolong->add_option("--l", lf, "real pair route: subspace l0");
    prolong->add_option("--q", qf, "CR route: complex subalgebra q");
    prolong->add_option("--max-degree", cap, "degree cap")->capture_default_str();
    add_json(prolong);

    CLI::App* realize = subcommand(&app, "realize", "truncated star fields of a pair");
    add_alg(realize);
    realize->add_option("--h", hf, "isotropy subalgebra h0")->required();
    realize->add_option("--order", order, "truncation order")->capture_default_str();
    realize->add_option("--basis", basis_csv, "comma-separated basis labels (default: all)");
    add_json(realize);

    CLI::App* sym = subcommand(&app, "symmetries", "truncated symmetries of a distribution");
    add_alg(sym);
    sym->add_option("--h", hf, "isotropy subalgebra h0")->required();
    sym->add_option("--l", lf, "real distribution l0");
    sym->add_option("--q", qf, "complex distribution q");
    sym->add_option("--order", order, "truncation order")->capture_default_str();
    add_json(sym);

    CLI::App* preset = subcommand(&app, "preset", "write a preset and its subspaces to files");
    preset->add_option("name", preset_name, "preset name, e.g. heisenberg:2 or su15")->required();
    preset->add_option("--out-dir", out_dir, "target directory")->capture_default_str();
    add_json(preset);

    try {
        app.parse(argc, argv);
        if (prolong->parsed() && (lf.empty() == qf.empty()))
            throw CLI::ValidationError("prolong", "exactly one of --l or --q is required");
        if (sym->parsed() && (lf.empty() == qf.empty()))
            throw CLI::ValidationError("symmetries", "exactly one of --l or --q is required");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    for (CLI::App* c : app.get_subcommands()) {
        ctx.command = c->get_name();
        for (CLI::App* sub : c->get_subcommands()) ctx.command += " " + sub->get_name();
    }
    ctx.inputs = json::object();
    if (!alg.empty()) ctx.inputs["algebra"] = alg;
    if (!lf.empty()) ctx.inputs["l"] = lf;
    if (!hf.empty()) ctx.inputs["h"] = hf;
    if (!qf.empty()) ctx.inputs["q"] = qf;
    if (!basis_csv.empty()) ctx.inputs["basis"] = basis_csv;
    if (!preset_name.empty()) ctx.inputs["name"] = preset_name;
    if (prolong->parsed()) ctx.inputs["max_degree"] = cap;
    if (realize->parsed() || sym->parsed()) ctx.inputs["order"] = order;
    if (preset->parsed()) ctx.inputs["out_dir"] = out_dir;

    try {
        if (validate->parsed()) cmd_validate(ctx, alg);
        if (chain_contact->parsed()) cmd_chain_contact(ctx, alg, lf);
        if (chain_cr->parsed()) cmd_chain_cr(ctx, alg, qf);
        if (cls->parsed()) cmd_classify(ctx, alg, qf);
        if (grade->parsed()) cmd_grade(ctx, alg, lf);
        if (prolong->parsed()) cmd_prolong(ctx, alg, lf, qf, cap);
        if (realize->parsed()) cmd_realize(ctx, alg, hf, order, basis_csv);
        if (sym->parsed()) cmd_symmetries(ctx, alg, hf, lf, qf, order);
        if (preset->parsed()) cmd_preset(ctx, preset_name, out_dir);
    } catch (const Error& e) {
        std::string message = e.what(); // strip the "code: " prefix what() adds
        if (message.rfind(e.code() + ": ", 0) == 0)
            message = message.substr(e.code().size() + 2);
        if (ctx.emit_json) {
            json report;
            report["tool"] = "crlab";
            report["version"] = manifest::tool_version;
            report["command"] = ctx.command;
            report["inputs"] = ctx.inputs;
            json err;
            err["code"] = e.code();
            err["message"] = message;
            if (!e.detail().empty()) err["detail"] = e.detail();
            report["error"] = std::move(err);
            std::cout << report.dump(2) << "\n";
        } else {
            std::cerr << "error[" << e.code() << "]: " << message;
            if (!e.detail().empty()) std::cerr << " (" << e.detail() << ")";
            std::cerr << "\n";
        }
        return 1;
    }
    return 0;
}
