#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trinerve/abgrp.hpp"
#include "trinerve/budget.hpp"
#include "trinerve/cat.hpp"
#include "trinerve/cocycle.hpp"
#include "trinerve/emac.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/highercat.hpp"
#include "trinerve/homology.hpp"
#include "trinerve/postnikov.hpp"
#include "trinerve/simplicial.hpp"
#include "trinerve/ssx.hpp"

using namespace trinerve;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerification = 1, kInput = 2, kBudget = 3 };

struct JobConfig {
    std::vector<std::string> inputs;
    std::string kind = "nerve";
    std::optional<int> trunc;
    std::string coeff = "z";
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample;
    std::string out;
    std::string ssx_dir;
    std::string verify = "basic";
    std::string degrees;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text << '\n';
}

void emit(const JobConfig& cfg, const json& report) {
    if (!cfg.out.empty()) write_text(cfg.out, report.dump(2));
}

std::vector<int> parse_degrees(const std::string& text, int trunc) {
    std::vector<int> out;
    if (text.empty()) {
        for (int d = 0; d < trunc; ++d) out.push_back(d);
        return out;
    }
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            auto dash = part.find('-');
            if (dash == std::string::npos) {
                out.push_back(std::stoi(part));
            } else {
                int lo = std::stoi(part.substr(0, dash)), hi = std::stoi(part.substr(dash + 1));
                for (int d = lo; d <= hi; ++d) out.push_back(d);
            }
        } catch (const std::logic_error&) {
            throw InputError("bad degree list '" + text + "'");
        }
    }
    return out;
}

std::string counts_string(const TruncSSet& X) {
    std::string s;
    for (int d = 0; d <= X.trunc(); ++d) s += (d ? "," : "") + std::to_string(X.total_count(d));
    return "(" + s + ")";
}

json counts_json(const TruncSSet& X) {
    json nd = json::array(), all = json::array();
    for (int d = 0; d <= X.trunc(); ++d) {
        nd.push_back(X.count(d));
        all.push_back(X.total_count(d));
    }
    return {{"nondegenerate", nd}, {"all", all}};
}

json identities_json(const IdentityReport& r) {
    return {{"ok", r.ok()}, {"checked", r.checked}, {"summary", r.summary()}};
}

// Builtin fixtures: {"builtin": "ordinal", "p": n}, {"builtin": "group", "G": ...},
// {"builtin": "sigma2", "A": ...}, {"builtin": "two_cell_z2"}.
std::optional<StrictCat> builtin_cat(const json& j, std::optional<FiniteCategory>& plain) {
    if (!j.contains("builtin")) return std::nullopt;
    auto name = j.at("builtin").get<std::string>();
    if (name == "ordinal") {
        plain = ordinal_category(j.at("p").get<int>());
        return category_as_3cat(*plain);
    }
    if (name == "group") {
        plain = group_category(group_from_json(j.at("G")));
        return category_as_3cat(*plain);
    }
    if (name == "sigma2") return suspension_sigma2(fgab_from_json(j.at("A")));
    if (name == "two_cell_z2") return two_cell_z2();
    throw InputError("unknown builtin '" + name + "'");
}

TruncSSet build_nerve(const json& j, const std::string& kind, int N) {
    std::optional<FiniteCategory> plain;
    std::optional<StrictCat> cat;
    try {
        cat = builtin_cat(j, plain);
        if (!cat) {
            if (j.contains("dim")) cat = StrictCat(strict_cat_data_from_json(j));
            else plain = category_from_json(j);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed category: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("category fails its validator: ") + e.what());
    }
    if (kind == "nerve") {
        if (!plain) throw InputError("kind 'nerve' needs an ordinary category");
        return nerve(*plain, N);
    }
    if (!cat) cat = category_as_3cat(*plain);
    auto data = cat->data();
    try {
        if (kind == "duskin") {
            if (data.dim == 3) {
                for (int x = 0; x < cat->count(3); ++x)
                    if (cat->identity(2, cat->source(3, x)) != x)
                        throw InputError("kind 'duskin' needs a 2-category (the 3-cells are not all identities)");
                data.dim = 2;
                data.cells.resize(3);
                data.source.resize(3);
                data.target.resize(3);
                data.identity.resize(2);
                data.comp.resize(3);
            }
            return duskin_nerve(Strict2Cat(data), N);
        }
        auto T3 = data.dim == 3 ? Strict3Cat(data) : as_3cat(Strict2Cat(data));
        if (kind == "geometric3") return geometric_nerve_3(T3, N);
        if (kind == "diag-triple") return diagonal(triple_nerve(std::make_shared<const Strict3Cat>(T3)), N);
    } catch (const StructuralError& e) {
        throw InputError(std::string("category fails its validator: ") + e.what());
    }
    throw InputError("unknown nerve kind '" + kind + "'");
}

int cmd_nerve(const JobConfig& cfg) {
    int N = cfg.trunc.value_or(4);
    auto X = build_nerve(read_json(cfg.inputs.at(0)), cfg.kind, N);
    auto ids = check_simplicial_identities(X);
    if (!cfg.out.empty()) save_ssx(X, cfg.out);
    std::cout << cfg.kind << " N=" << N << " simplices " << counts_string(X) << "\n";
    std::cout << "identities: " << ids.summary() << "\n";
    return ids.ok() ? kOk : kVerification;
}

json group_summary(const FiniteGroup& g) {
    auto inv = abelian_invariants(g);
    return {{"order", g.order()}, {"invariants", inv}};
}

json kan_sweep(const TruncSSet& X, int max_n, const JobConfig& cfg, bool& ok) {
    json out = json::array();
    KanMode mode = cfg.sample ? KanMode::sample(*cfg.sample, *cfg.seed) : KanMode::all();
    for (int n = 1; n <= max_n; ++n)
        for (int k = 0; k <= n; ++k) {
            auto r = kan_horn_check(X, n, k, mode);
            ok = ok && r.ok();
            json w = json::array();
            for (const auto& s : r.witness) w.push_back({s.dim, s.degens, s.id});
            out.push_back({{"n", n}, {"k", k}, {"tested", r.horns_tested}, {"fillable", r.fillable}, {"ok", r.ok()},
                           {"witness", w}});
        }
    return out;
}

json element_json(const Element& e) { return json(e); }

int cmd_postnikov(const JobConfig& cfg) {
    PostnikovData P = postnikov_from_json(read_json(cfg.inputs.at(0)));
    P.check_shape();
    json report;
    bool ok = true;
    auto fail = [&](const std::string& what) {
        ok = false;
        std::cout << "FAIL " << what << "\n";
    };

    auto hw = twisted_violation(P.A, h_cochain(P.A, P.h));
    bool h_ok = hw.empty() && validate_h(P.A, P.h);
    report["validate_h"] = {{"ok", h_ok}, {"witness", hw}};
    if (!h_ok) {
        fail("validate_h: h is not a twisted 3-cocycle at (σ1,σ2,σ3,σ4) = " + json(hw).dump());
        emit(cfg, report);
        return kVerification;
    }
    auto tc = check_t(P);
    bool normal = is_normalized_t(P);
    report["validate_t"] = {{"ok", tc.ok() && normal},
                            {"normalized", normal},
                            {"checked", tc.checked},
                            {"message", tc.message},
                            {"witness", element_json(tc.witness)}};
    if (!normal) fail("validate_t: t does not vanish on degenerate 4-simplices");
    if (!tc.ok()) fail("validate_t: " + tc.message);
    if (!ok) {
        emit(cfg, report);
        return kVerification;
    }

    auto Bg = std::make_shared<const BicatGroup>(realize(P));
    auto M = std::make_shared<const TruncSSet>(build_M(P, 4).sset);
    auto nerve_m = nerve_of_bicatgroup(*Bg, 4);
    auto Nv = std::make_shared<const TruncSSet>(nerve_m.sset);
    auto idM = check_simplicial_identities(*M), idN = check_simplicial_identities(*Nv);
    report["identities"] = {{"M", identities_json(idM)}, {"nerve", identities_json(idN)}};
    report["counts"] = {{"M", counts_json(*M)}, {"nerve", counts_json(*Nv)}};
    if (!idM.ok()) fail("simplicial identities of M: " + idM.summary());
    if (!idN.ok()) fail("simplicial identities of the nerve: " + idN.summary());

    auto f = phi_map(*Bg, P, 4);
    auto fr = verify_simplicial_map(f, 4);
    bool iso = fr.ok() && is_iso_up_to(f, 4);
    auto Pn = nerve_cocycle(*Bg);
    auto g = phi_map(*Bg, Pn, 4);
    bool iso_n = verify_simplicial_map(g, 4).ok() && is_iso_up_to(g, 4);
    report["phi_iso"] = {{"ok", iso},
                         {"simplicial", fr.ok()},
                         {"violations", fr.violations.size() > 5 ? json(std::vector<std::string>(fr.violations.begin(),
                                                                                               fr.violations.begin() + 5))
                                                                 : json(fr.violations)},
                         {"onto_nerve_cocycle", iso_n},
                         {"nerve_cocycle_equals_t", Pn.t == P.t}};
    if (!iso) fail("phi is not an isomorphism onto M (the nerve only sees t through its bicategorical constants)");
    if (!iso_n) fail("phi is not an isomorphism onto M of the nerve cocycle");

    auto pib = bicatgroup_homotopy(*Bg);
    auto pim = minimal_homotopy_groups(*M, 3);
    json hg = json::array(), hm = json::array();
    std::vector<FiniteGroup> expect{P.G, FiniteGroup::from_abelian(P.A.coeff()), FiniteGroup::from_abelian(P.B.coeff())};
    bool groups_ok = true;
    for (int i = 0; i < 3; ++i) {
        hg.push_back(group_summary(pib[i]));
        hm.push_back(group_summary(pim[i]));
        groups_ok = groups_ok && are_isomorphic(pib[i], expect[i]) && are_isomorphic(pim[i], expect[i]);
    }
    report["homotopy_groups"] = {{"ok", groups_ok}, {"bicategorical", hg}, {"minimal_M", hm}};
    if (!groups_ok) fail("homotopy groups differ from (G, A, B)");

    if (cfg.verify == "full") {
        bool kan_ok = true;
        report["kan"] = {{"M", kan_sweep(*M, 4, cfg, kan_ok)}, {"nerve", kan_sweep(*Nv, 4, cfg, kan_ok)}, {"ok", true}};
        report["kan"]["ok"] = kan_ok;
        if (!kan_ok) fail("Kan horn filling");
        auto co = coherence_check(*Bg);
        json fam = json::array();
        for (const auto& c : co.families)
            fam.push_back({{"name", c.name}, {"checked", c.checked}, {"witness", c.witness}});
        report["coherence"] = {{"ok", co.ok()}, {"families", fam}};
        if (!co.ok()) fail("coherence: " + co.summary());
    }
    if (!cfg.ssx_dir.empty()) {
        save_ssx(*M, cfg.ssx_dir + "/M.ssx");
        save_ssx(*Nv, cfg.ssx_dir + "/nerve.ssx");
    }
    report["ok"] = ok;
    emit(cfg, report);
    std::cout << "M " << counts_string(*M) << " nerve " << counts_string(*Nv) << "\n";
    std::cout << "pi_1..3 of (B,x): ";
    for (int i = 0; i < 3; ++i) std::cout << (i ? ", " : "") << hg[i]["invariants"].dump();
    std::cout << "\n" << (ok ? "all checks passed" : "verification failed") << "\n";
    return ok ? kOk : kVerification;
}

// {"G", "A", "B", "h", "t"} (Postnikov data), {"module", "cochain"} (twisted group cochain) or
// {"base", "cochain"} (cochain on a category).
int cmd_cocycle_check(const JobConfig& cfg) {
    auto j = read_json(cfg.inputs.at(0));
    json report;
    bool ok = true;
    if (j.contains("t")) {
        auto P = postnikov_from_json(j);
        P.check_shape();
        auto hw = twisted_violation(P.A, h_cochain(P.A, P.h));
        auto tc = check_t(P);
        ok = hw.empty() && tc.ok() && is_normalized_t(P);
        report = {{"h", {{"ok", hw.empty()}, {"witness", hw}}},
                  {"t", {{"ok", tc.ok()}, {"normalized", is_normalized_t(P)}, {"message", tc.message},
                         {"witness", element_json(tc.witness)}}}};
    } else if (j.contains("module")) {
        GModule A;
        try {
            A = module_from_json(j.at("module"));
        } catch (const json::exception& e) {
            throw InputError(std::string("malformed module: ") + e.what());
        }
        auto base = std::make_shared<const FiniteCategory>(group_category(A.group()));
        auto c = cochain_from_json(j.at("cochain"), base);
        if (c.degree() != 3) throw InputError("twisted cochains are checked in degree 3");
        auto w = twisted_violation(A, c);
        ok = w.empty();
        report = {{"normalized", c.is_normalized()}, {"witness", w}};
    } else if (j.contains("base")) {
        std::shared_ptr<const FiniteCategory> base;
        try {
            base = std::make_shared<const FiniteCategory>(category_from_json(j.at("base")));
        } catch (const json::exception& e) {
            throw InputError(std::string("malformed base category: ") + e.what());
        }
        auto c = cochain_from_json(j.at("cochain"), base);
        if (c.degree() < 1 || c.degree() > 3) throw InputError("cochain degree must be 1, 2 or 3");
        auto d = coboundary(c);
        ok = d.is_zero();
        json w = json::array();
        for (std::size_t i = 0; i < d.size() && w.empty(); ++i)
            if (!d.coeff().is_zero(d.at_index(i))) w = d.tuples()[i];
        report = {{"normalized", c.is_normalized()}, {"witness", w}};
    } else {
        throw InputError("cocycle-check input needs 't', 'module' or 'base'");
    }
    report["ok"] = ok;
    emit(cfg, report);
    std::cout << (ok ? "cocycle" : "not a cocycle") << "\n";
    if (!ok) std::cout << report.dump() << "\n";
    return ok ? kOk : kVerification;
}

HomologyResult homology_of(const TruncSSet& X, const JobConfig& cfg) {
    auto coeff = Coefficients::parse(cfg.coeff);
    auto degrees = parse_degrees(cfg.degrees, X.trunc());
    try {
        return homology(X, degrees, coeff);
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) + "; retry with --coeff q or --coeff zp:<p>", e.dimension(),
                            e.requested());
    }
}

int cmd_homology(const JobConfig& cfg) {
    auto X = load_ssx(cfg.inputs.at(0));
    auto r = homology_of(X, cfg);
    emit(cfg, homology_to_json(r));
    for (const auto& g : r.groups) std::cout << "H" << g.degree << " = " << g.describe() << "\n";
    return kOk;
}

int cmd_compare(const JobConfig& cfg) {
    if (cfg.inputs.size() != 2) throw InputError("compare needs two SSX files");
    auto X = load_ssx(cfg.inputs[0]), Y = load_ssx(cfg.inputs[1]);
    auto a = homology_of(X, cfg), b = homology_of(Y, cfg);
    json per = json::array();
    bool equal = a.groups.size() == b.groups.size();
    for (std::size_t i = 0; i < a.groups.size() && i < b.groups.size(); ++i) {
        bool e = a.groups[i] == b.groups[i];
        equal = equal && e;
        per.push_back({{"degree", a.groups[i].degree}, {"equal", e}, {"a", a.groups[i].describe()},
                       {"b", b.groups[i].describe()}});
        std::cout << "H" << a.groups[i].degree << ": " << a.groups[i].describe() << (e ? " == " : " != ")
                  << b.groups[i].describe() << "\n";
    }
    emit(cfg, {{"equal", equal}, {"coeff", a.coeff.tag()}, {"degrees", per}});
    std::cout << (equal ? "equal" : "unequal") << "\n";
    return equal ? kOk : kVerification;
}

int cmd_kan(const JobConfig& cfg) {
    auto X = load_ssx(cfg.inputs.at(0));
    int max_n = cfg.trunc.value_or(X.trunc());
    if (max_n < 1 || max_n > X.trunc() + 1) throw InputError("--trunc for kan must lie in 1..trunc+1");
    bool ok = true;
    auto horns = kan_sweep(X, max_n, cfg, ok);
    emit(cfg, {{"ok", ok}, {"horns", horns}});
    for (const auto& h : horns)
        std::cout << "Λ" << h["n"] << "_" << h["k"] << ": " << h["fillable"] << "/" << h["tested"] << "\n";
    std::cout << (ok ? "Kan" : "not Kan") << "\n";
    return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nerves of higher categories and Postnikov data"};
    app.require_subcommand(1);
    JobConfig cfg;
    auto common = [&](CLI::App* s) {
        s->add_option("--budget", cfg.budget, "maximum simplices per dimension")->check(CLI::PositiveNumber);
        s->add_option("--out", cfg.out, "output path");
    };
    auto* nerve_cmd = app.add_subcommand("nerve", "build a nerve and write it as SSX");
    nerve_cmd->add_option("input", cfg.inputs, "category JSON")->required()->expected(1);
    nerve_cmd->add_option("--kind", cfg.kind)->check(CLI::IsMember({"nerve", "duskin", "geometric3", "diag-triple"}));
    nerve_cmd->add_option("--trunc", cfg.trunc)->check(CLI::Range(0, 8));
    common(nerve_cmd);

    auto* post_cmd = app.add_subcommand("postnikov", "validate and realize Postnikov data");
    post_cmd->add_option("input", cfg.inputs, "Postnikov data JSON")->required()->expected(1);
    post_cmd->add_option("--verify", cfg.verify)->check(CLI::IsMember({"basic", "full"}));
    post_cmd->add_option("--ssx-dir", cfg.ssx_dir, "directory for M.ssx and nerve.ssx");
    post_cmd->add_option("--seed", cfg.seed);
    post_cmd->add_option("--sample", cfg.sample, "horns per (n, k) instead of all")->check(CLI::PositiveNumber);
    common(post_cmd);

    auto* cc_cmd = app.add_subcommand("cocycle-check", "check a cochain or Postnikov datum for the cocycle condition");
    cc_cmd->add_option("input", cfg.inputs)->required()->expected(1);
    common(cc_cmd);

    auto* hom_cmd = app.add_subcommand("homology", "homology of an SSX file");
    hom_cmd->add_option("input", cfg.inputs)->required()->expected(1);
    hom_cmd->add_option("--coeff", cfg.coeff, "z, q or zp:<p>");
    hom_cmd->add_option("--degrees", cfg.degrees, "e.g. 0-3 or 0,2 (default 0..trunc-1)");
    common(hom_cmd);

    auto* cmp_cmd = app.add_subcommand("compare", "compare homology of two SSX files");
    cmp_cmd->add_option("inputs", cfg.inputs)->required()->expected(2);
    cmp_cmd->add_option("--coeff", cfg.coeff, "z, q or zp:<p>");
    cmp_cmd->add_option("--degrees", cfg.degrees);
    common(cmp_cmd);

    auto* kan_cmd = app.add_subcommand("kan", "horn filling of an SSX file");
    kan_cmd->add_option("input", cfg.inputs)->required()->expected(1);
    kan_cmd->add_option("--trunc", cfg.trunc, "largest horn dimension");
    kan_cmd->add_option("--seed", cfg.seed);
    kan_cmd->add_option("--sample", cfg.sample, "horns per (n, k) instead of all")->check(CLI::PositiveNumber);
    common(kan_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    try {
        if (cfg.sample && !cfg.seed) throw InputError("--sample needs --seed");
        set_size_budget(resolve_budget(cfg.budget));
        if (nerve_cmd->parsed()) return cmd_nerve(cfg);
        if (post_cmd->parsed()) return cmd_postnikov(cfg);
        if (cc_cmd->parsed()) return cmd_cocycle_check(cfg);
        if (hom_cmd->parsed()) return cmd_homology(cfg);
        if (cmp_cmd->parsed()) return cmd_compare(cfg);
        if (kan_cmd->parsed()) return cmd_kan(cfg);
    } catch (const ResourceError& e) {
        std::cerr << "budget exceeded in dimension " << e.dimension() << ": " << e.what() << "\n";
        return kBudget;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const StructuralError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerification;
    }
    return kInput;
}
