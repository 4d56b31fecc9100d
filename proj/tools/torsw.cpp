// Batch front-end: builds fixture modules, runs the verification suites, and
// writes deterministic JSON reports. Exit 0 = all in-hypothesis checks pass,
// 1 = a suite failed, 2 = usage error.

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsw/fixtures.hpp"
#include "torsw/hom.hpp"
#include "torsw/io.hpp"

using namespace torsw;

namespace {

struct Options {
    int n = 2;
    int ell = 2;
    int loops = 2;
    long kmax = 2;
    unsigned long seed = 0;
    std::string fixtures;
    std::string out;
    std::string config;
    std::vector<std::string> suites;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--n", opt.n, "rank: the Lie algebra is sl_{n+1}");
    cmd->add_option("--ell", opt.ell, "tensor length / letters of S_ell");
    cmd->add_option("--loops", opt.loops, "number of Laurent variables m");
    cmd->add_option("--kmax", opt.kmax, "exponent bound for relation and hom checks");
    cmd->add_option("--seed", opt.seed, "seed for sampled syzygy checks");
    cmd->add_option("--fixtures", opt.fixtures, "JSON fixture list (see README)");
    cmd->add_option("--out", opt.out, "report output path (default stdout)");
}

std::vector<Fixture> load_fixtures(const Options& opt) {
    std::vector<Fixture> out;
    if (opt.fixtures.empty()) {
        out = evaluation_fixtures(opt.loops, opt.ell, 4);
        if (opt.ell >= 2) {
            out.push_back({"trivial", trivial_module(opt.loops, opt.ell)});
            out.push_back({"sign", sign_module(opt.loops, opt.ell)});
            out.push_back({"regular", regular_module(opt.loops, opt.ell)});
        }
        return out;
    }
    Json doc = read_json_file(opt.fixtures);
    int idx = 0;
    for (const auto& item : doc) {
        if (item.is_string()) {
            out.push_back({item.get<std::string>(),
                           module_from_json(read_json_file(item.get<std::string>()))});
        } else if (item.contains("params")) {
            std::vector<std::vector<Rational>> params;
            for (const auto& row : item.at("params")) {
                std::vector<Rational> r;
                for (const auto& v : row) r.push_back(rat_from_string(v.get<std::string>()));
                params.push_back(std::move(r));
            }
            std::string name = item.value("name", "fixture-" + std::to_string(idx));
            out.push_back({name, evaluation_module(params, opt.ell)});
        } else {
            out.push_back({item.value("name", "fixture-" + std::to_string(idx)),
                           module_from_json(item)});
        }
        ++idx;
    }
    return out;
}

void emit(const Options& opt, Json& report, bool pass) {
    report["status"] = pass ? "pass" : "fail";
    if (opt.out.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_json_file(opt.out, report);
}

Json report_header(const std::string& command, const Options& opt) {
    Json rep;
    rep["schema"] = 1;
    rep["command"] = command;
    rep["n"] = opt.n;
    rep["ell"] = opt.ell;
    rep["loops"] = opt.loops;
    rep["kmax"] = opt.kmax;
    rep["seed"] = opt.seed;
    return rep;
}

bool cross_loop_commutation(const AffModule& m, std::string& witness) {
    for (int i = 1; i <= m.loops(); ++i)
        for (int j = i + 1; j <= m.loops(); ++j)
            for (int r = 1; r <= m.letters(); ++r)
                for (int s = 1; s <= m.letters(); ++s) {
                    const RatMatrix& a = m.gen_matrix(GenLabel::y(i, r));
                    const RatMatrix& b = m.gen_matrix(GenLabel::y(j, s));
                    if (a * b != b * a) {
                        witness = GenLabel::y(i, r).str() + " vs " + GenLabel::y(j, s).str();
                        return false;
                    }
                }
    return true;
}

bool suite_verify_aff(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        VerifyReport rep = f.module.verify();
        std::string witness;
        bool derived = cross_loop_commutation(f.module, witness);
        pass = pass && rep.all_pass() && derived;
        Json e;
        e["fixture"] = f.name;
        e["relations"] = verify_report_to_json(rep);
        e["cross_loop_commutation"] = derived ? "pass" : ("fail: " + witness);
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_build(const Options& opt, Json& out) {
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        BalancedModule b(f.module, opt.n);
        Json e;
        e["fixture"] = f.name;
        e["ambient_dim"] = b.ambient_dim();
        e["dim"] = b.dim();
        Json weights = Json::array();
        for (const auto& [w, d] : b.weight_multiset()) {
            Json coords = Json::array();
            for (long c : w.coords) coords.push_back(c);
            weights.push_back(Json{{"weight", coords}, {"mult", d}});
        }
        e["weights"] = std::move(weights);
        e["project"] = matrix_to_json(b.project());
        e["section"] = matrix_to_json(b.section());
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return true;
}

bool suite_toroidal(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        BalancedModule b(f.module, opt.n);
        ToroidalReport rep = b.verify_toroidal_relations(opt.kmax);
        pass = pass && rep.all_pass();
        Json e;
        e["fixture"] = f.name;
        e["checked"] = rep.items.size();
        e["status"] = rep.all_pass() ? "pass" : "fail";
        e["failures"] = rep.failures();
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_alpha(const Options& opt, Json& out) {
    bool pass = true;
    ClaimReport tensor = distinguished_tensor_checks(opt.n, opt.ell);
    pass = pass && tensor.all_pass();
    out["distinguished_vectors"] = claim_report_to_json(tensor);
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        BalancedModule b(f.module, opt.n);
        ClaimReport rep = verify_alpha_identities(b, opt.kmax);
        pass = pass && rep.all_pass();
        Json e;
        e["fixture"] = f.name;
        e["checked"] = rep.items.size();
        e["status"] = rep.all_pass() ? "pass" : "fail";
        e["failures"] = rep.failures();
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_roundtrip(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        Json e;
        e["fixture"] = f.name;
        try {
            BalancedModule b(f.module, opt.n);
            AffModule back = assemble_aff2(b);
            bool ok = back.same_matrices(f.module);
            e["status"] = ok ? "pass" : "fail";
            pass = pass && ok;
        } catch (const AlphaError& err) {
            e["status"] = "fail";
            e["witness"] = std::string(err.what()) + " (" + err.witness + ")";
            pass = false;
        }
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_glue(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        auto space = std::make_shared<BalancedModule>(f.module, opt.n);
        auto sys = std::make_shared<LoopSystem>(space);
        BatchReport cond = check_conditions(*sys, opt.kmax, 25, opt.seed);
        GluedAction rho(sys);
        BatchReport hom = verify_lie_hom(rho, 1);
        pass = pass && cond.all_pass() && hom.all_pass();
        Json e;
        e["fixture"] = f.name;
        e["conditions"] = batch_report_to_json(cond);
        e["lie_homomorphism"] = batch_report_to_json(hom);
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_compare_direct(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        auto space = std::make_shared<BalancedModule>(f.module, opt.n);
        auto sys = std::make_shared<LoopSystem>(space);
        GluedAction rho(sys);
        BatchReport rep = compare_with_direct(rho, *space, opt.kmax);
        pass = pass && rep.all_pass();
        Json e;
        e["fixture"] = f.name;
        e["comparison"] = batch_report_to_json(rep);
        per.push_back(std::move(e));
    }
    out["fixtures"] = std::move(per);
    return pass;
}

bool suite_hom(const Options& opt, Json& out) {
    bool pass = true;
    std::vector<Fixture> fx = load_fixtures(opt);
    Json per = Json::array();
    for (const Fixture& a : fx)
        for (const Fixture& b : fx) {
            FaithfulReport rep = check_fully_faithful(a.module, b.module, opt.n, opt.kmax);
            pass = pass && rep.pass();
            per.push_back(Json{{"pair", a.name + " -> " + b.name},
                               {"dim_aff", rep.dim_aff},
                               {"dim_tor", rep.dim_tor},
                               {"kmax", opt.kmax},
                               {"stabilized", rep.stabilized},
                               {"fully_faithful", rep.pass()}});
        }
    out["pairs"] = std::move(per);
    return pass;
}

bool suite_degree(const Options& opt, Json& out) {
    bool pass = true;
    Json per = Json::array();
    for (const Fixture& f : load_fixtures(opt)) {
        BalancedModule b(f.module, opt.n);
        ClaimReport rep = degree_check(b);
        pass = pass && rep.all_pass();
        per.push_back(Json{{"fixture", f.name}, {"status", rep.all_pass() ? "pass" : "fail"}});
    }
    out["fixtures"] = std::move(per);
    return pass;
}

int require(bool cond, const std::string& msg) {
    if (!cond) {
        std::cerr << "error: " << msg << "\n";
        return 2;
    }
    return 0;
}

int run_suite(const std::string& name, const Options& opt) {
    if (int rc = require(opt.n >= 1 && opt.ell >= 1 && opt.loops >= 1 && opt.kmax >= 1,
                         "need n, ell, loops, kmax >= 1"))
        return rc;
    bool needs_two_loops = name == "verify-toroidal" || name == "extract-alpha" ||
                           name == "roundtrip" || name == "compare-direct" || name == "hom";
    if (needs_two_loops && opt.loops != 2) {
        if (int rc = require(false, name + " works on two-loop modules; pass --loops 2"))
            return rc;
    }
    bool needs_small_ell =
        name == "extract-alpha" || name == "roundtrip" || name == "hom";
    if (needs_small_ell && opt.ell > opt.n) {
        if (int rc = require(false, name + " requires ell <= n")) return rc;
    }

    Json rep = report_header(name, opt);
    bool pass;
    try {
        if (name == "verify-aff")
            pass = suite_verify_aff(opt, rep);
        else if (name == "build-F")
            pass = suite_build(opt, rep);
        else if (name == "verify-toroidal")
            pass = suite_toroidal(opt, rep);
        else if (name == "extract-alpha")
            pass = suite_alpha(opt, rep);
        else if (name == "roundtrip")
            pass = suite_roundtrip(opt, rep);
        else if (name == "glue")
            pass = suite_glue(opt, rep);
        else if (name == "compare-direct")
            pass = suite_compare_direct(opt, rep);
        else if (name == "hom")
            pass = suite_hom(opt, rep);
        else
            return require(false, "unknown suite " + name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    emit(opt, rep, pass);
    return pass ? 0 : 1;
}

int run_all(Options opt) {
    if (!opt.config.empty()) {
        Json cfg = read_json_file(opt.config);
        opt.n = cfg.value("n", opt.n);
        opt.ell = cfg.value("ell", opt.ell);
        opt.loops = cfg.value("m", opt.loops);
        opt.kmax = cfg.value("kmax", opt.kmax);
        opt.seed = cfg.value("seed", opt.seed);
        opt.fixtures = cfg.value("fixtures", opt.fixtures);
        if (cfg.contains("suites"))
            opt.suites = cfg.at("suites").get<std::vector<std::string>>();
    }
    std::vector<std::string> suites = opt.suites;
    if (suites.empty()) suites = {"relations", "alpha", "roundtrip", "glue", "hom", "degree"};

    if (int rc = require(opt.n >= 1 && opt.ell >= 1 && opt.loops >= 1 && opt.kmax >= 1,
                         "need n, ell, loops, kmax >= 1"))
        return rc;
    for (const std::string& s : suites)
        if ((s == "alpha" || s == "roundtrip" || s == "hom") && opt.ell > opt.n)
            return require(false, "suite " + s + " requires ell <= n");

    Json rep = report_header("run-all", opt);
    bool pass = true;
    try {
        for (const std::string& s : suites) {
            Json section;
            bool ok = true;
            if (s == "relations") {
                ok = suite_verify_aff(opt, section);
                Json tor;
                if (opt.loops == 2) ok = suite_toroidal(opt, tor) && ok;
                section["toroidal"] = std::move(tor);
            } else if (s == "alpha") {
                ok = suite_alpha(opt, section);
            } else if (s == "roundtrip") {
                ok = suite_roundtrip(opt, section);
            } else if (s == "glue") {
                ok = suite_glue(opt, section);
                if (opt.loops == 2) {
                    Json cmp;
                    ok = suite_compare_direct(opt, cmp) && ok;
                    section["direct_comparison"] = std::move(cmp);
                }
            } else if (s == "hom") {
                ok = suite_hom(opt, section);
            } else if (s == "degree") {
                ok = suite_degree(opt, section);
            } else {
                return require(false, "unknown suite " + s);
            }
            section["status"] = ok ? "pass" : "fail";
            rep[s] = std::move(section);
            pass = pass && ok;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    emit(opt, rep, pass);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for two-sided tensor dualities"};
    app.require_subcommand(1);
    Options opt;

    for (const char* name : {"verify-aff", "build-F", "verify-toroidal", "extract-alpha",
                             "roundtrip", "glue", "compare-direct", "hom"})
        add_common(app.add_subcommand(name), opt);
    CLI::App* all = app.add_subcommand("run-all", "run every suite");
    add_common(all, opt);
    all->add_option("--config", opt.config, "JSON run configuration");
    all->add_option("--suites", opt.suites, "subset of suites to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "run-all") return run_all(opt);
    return run_suite(sub, opt);
}
