// Command-line driver: builds Hopf-von Neumann algebras from group specs,
// verifies their axioms, runs the duality pipeline, and emits deterministic
// JSON reports next to a human summary.

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <hopfdual/duality.hpp>

using namespace hopfdual;

namespace {

struct RunConfig {
    std::string spec_text;
    std::string side = "function";
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-9;
    std::string out;
    bool want_double = false;
    bool want_triple = false;
    bool want_reflexive = false;
    bool timing = false;
    int verbosity = 0;
};

std::string load_spec_text(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return arg;
    std::ifstream in(arg);
    if (!in) fail("BadSpec", "cannot read spec file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HopfPtr build_from_spec(const GroupSpec& spec, const std::string& side, std::uint64_t seed) {
    if (spec.type == GroupSpec::Type::Twisted) return twisted_hopf(spec.n);
    const FiniteGroup G = make_group(spec);
    if (side == "function") return function_algebra(G);
    if (side == "groupvn") return group_vn_algebra(G, seed);
    fail("BadSpec", "side must be 'function' or 'groupvn'");
}

void write_report(const RunConfig& cfg, const json::Value& report) {
    if (cfg.out.empty()) return;
    std::ofstream out(cfg.out);
    if (!out) fail("BadSpec", "cannot write report to '" + cfg.out + "'");
    out << report.dump(1) << "\n";
}

std::string sig_str(const std::vector<int>& sig) {
    std::string s = "{";
    for (size_t i = 0; i < sig.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(sig[i]);
    }
    return s + "}";
}

int cmd_axioms(const RunConfig& cfg) {
    const GroupSpec spec = parse_group_spec(cfg.spec_text);
    const HopfPtr M = build_from_spec(spec, cfg.side, cfg.seed);
    const AxiomReport rep = verify_hopf(*M);

    DualityRunResult r;
    r.input_spec_json = spec.to_json();
    r.side = spec.type == GroupSpec::Type::Twisted ? "twisted" : cfg.side;
    r.seed = cfg.seed;
    r.tol = cfg.tol;
    r.M = M;
    r.axioms = rep;
    write_report(cfg, duality_report(r));

    const bool ok = rep.pass(cfg.tol);
    std::cout << (ok ? "PASS" : "FAIL") << " axioms " << M->provenance() << "  dim=" << M->dim()
              << " blocks=" << sig_str(M->block_signature())
              << " max_residual=" << json::format_double(rep.max_residual()) << "\n";
    if (cfg.verbosity > 0 || !ok)
        for (const auto& [k, v] : rep.residuals)
            std::cout << "  " << k << " = " << json::format_double(v) << "\n";
    return ok ? 0 : 1;
}

int cmd_dualize(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupSpec spec = parse_group_spec(cfg.spec_text);
    const HopfPtr M = build_from_spec(spec, cfg.side, cfg.seed);

    DualityRunResult r;
    r.input_spec_json = spec.to_json();
    r.side = spec.type == GroupSpec::Type::Twisted ? "twisted" : cfg.side;
    r.seed = cfg.seed;
    r.tol = cfg.tol;
    r.M = M;

    if (cfg.want_reflexive) {
        ReflexivityReport rr = is_reflexive(M, cfg.seed, cfg.tol);
        r.first = rr.first;
        r.second = rr.second;
        r.reflexivity = std::move(rr);
    } else {
        r.first = dualize(M, cfg.seed, cfg.tol);
        if (cfg.want_double || cfg.want_triple)
            r.second = dualize(r.first->dual, cfg.seed, cfg.tol);
    }
    if (cfg.want_triple) {
        r.third = dualize(r.second->dual, cfg.seed, cfg.tol);
        r.triple = triple_dual_check(*r.first, *r.second, *r.third, cfg.tol);
    }
    if (r.first->dual->commutative()) {
        try {
            r.dual_reconstruction = reconstruct_group(r.first->dual, cfg.seed, cfg.tol);
        } catch (const Error&) {
            // Dual spectrum does not carry a group; the report just omits it.
        }
    }
    if (cfg.timing) {
        const auto t1 = std::chrono::steady_clock::now();
        r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    write_report(cfg, duality_report(r));

    std::cout << "dualize " << M->provenance() << ": M blocks=" << sig_str(M->block_signature())
              << " -> M^ blocks=" << sig_str(r.first->dual->block_signature())
              << " (ideal dim " << r.first->ideal.dim() << ", standard "
              << r.first->partition.standard_idx.size() << "/" << r.first->partition.reps.size()
              << ")\n";
    if (r.second)
        std::cout << "  M^^ blocks=" << sig_str(r.second->dual->block_signature()) << "\n";
    if (r.triple)
        std::cout << "  triple dual " << (r.triple->holds ? "matches" : "DIFFERS FROM")
                  << " the first dual\n";
    if (r.dual_reconstruction)
        std::cout << "  dual spectrum group: order " << r.dual_reconstruction->group.order << "\n";
    if (r.reflexivity)
        std::cout << "  reflexive (canonical): " << (r.reflexivity->canonical ? "yes" : "no")
                  << ", structural (" << r.reflexivity->structural_kind
                  << "): " << (r.reflexivity->structural_ok ? "yes" : "no") << "\n";
    return 0;
}

int cmd_pontryagin(const RunConfig& cfg) {
    const GroupSpec spec = parse_group_spec(cfg.spec_text);
    if (spec.type == GroupSpec::Type::Twisted) fail("BadSpec", "pontryagin needs a group spec");
    const FiniteGroup G = make_group(spec);
    if (!G.abelian()) fail("NotAbelian", "pontryagin needs an abelian group");

    const DualConstruction dc = dualize(function_algebra(G), cfg.seed, cfg.tol);
    const GroupReconstruction rec = reconstruct_group(dc.dual, cfg.seed, cfg.tol);
    const FiniteGroup Ghat = dual_group(G, cfg.seed);
    const bool ok = are_isomorphic(rec.group, Ghat);

    DualityRunResult r;
    r.input_spec_json = spec.to_json();
    r.side = "function";
    r.seed = cfg.seed;
    r.tol = cfg.tol;
    r.M = dc.source;
    r.first = dc;
    r.dual_reconstruction = rec;
    write_report(cfg, duality_report(r));

    std::cout << (ok ? "PASS" : "FAIL") << " pontryagin " << G.name
              << ": reconstructed dual of order " << rec.group.order
              << (ok ? " isomorphic to " : " NOT isomorphic to ") << Ghat.name << "\n";
    return ok ? 0 : 1;
}

int cmd_twisted_demo(const RunConfig& cfg, int n) {
    const HopfPtr M = twisted_hopf(n);
    const DualConstruction dc = dualize(M, cfg.seed, cfg.tol);

    // Closed-form law: chi_s is standard iff 2s = 0 mod n.
    int expected_standard = 0;
    for (int s = 0; s < n; ++s)
        if ((2 * s) % n == 0) ++expected_standard;

    const int got_standard = int(dc.partition.standard_idx.size());
    bool ok = got_standard == expected_standard && dc.ideal.dim() == expected_standard &&
              dc.dual->dim() == expected_standard;

    std::cout << "twisted(" << n << "): characters " << n << ", standard " << got_standard
              << " (expected " << expected_standard << "), dim M_*^0 = " << dc.ideal.dim()
              << ", dim M^ = " << dc.dual->dim() << "\n";
    for (int i = 0; i < int(dc.partition.reps.size()); ++i) {
        const bool is_std = std::find(dc.partition.standard_idx.begin(),
                                      dc.partition.standard_idx.end(),
                                      i) != dc.partition.standard_idx.end();
        // Recover the Fourier index s from the value at delta_1.
        int s = 0;
        if (n > 1) {
            const double arg = std::arg(dc.partition.reps[i].mats[1](0, 0));
            s = (int(std::lround(arg * n / (2.0 * 3.14159265358979323846))) % n + n) % n;
        }
        ok = ok && (is_std == ((2 * s) % n == 0));
        std::cout << "  chi_" << s << ": " << (is_std ? "standard" : "non-standard")
                  << " (residual " << json::format_double(dc.partition.standard_residuals[i])
                  << ")\n";
    }

    const ReflexivityReport rr = is_reflexive(M, cfg.seed, cfg.tol);
    const bool expect_reflexive = (expected_standard == n);
    ok = ok && (rr.canonical == expect_reflexive);
    std::cout << "  reflexive: " << (rr.canonical ? "yes" : "no") << " (expected "
              << (expect_reflexive ? "yes" : "no") << ")\n";

    DualityRunResult r;
    GroupSpec spec;
    spec.type = GroupSpec::Type::Twisted;
    spec.n = n;
    r.input_spec_json = spec.to_json();
    r.side = "twisted";
    r.seed = cfg.seed;
    r.tol = cfg.tol;
    r.M = M;
    r.first = dc;
    r.reflexivity = rr;
    r.second = rr.second;
    write_report(cfg, duality_report(r));
    return ok ? 0 : 1;
}

int cmd_fleet(const RunConfig& cfg, int jobs) {
    const std::vector<std::string> specs = {
        R"({"type":"cyclic","n":2})",
        R"({"type":"cyclic","n":3})",
        R"({"type":"cyclic","n":4})",
        R"({"type":"cyclic","n":5})",
        R"({"type":"cyclic","n":6})",
        R"({"type":"cyclic","n":7})",
        R"({"type":"cyclic","n":8})",
        R"({"type":"product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":2}]})",
        R"({"type":"product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":4}]})",
        R"({"type":"sym","n":3})",
        R"({"type":"dihedral","n":4})",
        R"({"type":"quaternion"})",
        R"({"type":"sym","n":4})",
    };

    struct Task {
        std::string spec;
        std::string side;
    };
    std::vector<Task> tasks;
    for (const auto& s : specs) {
        tasks.push_back({s, "function"});
        tasks.push_back({s, "groupvn"});
    }
    for (int n : {2, 3, 5, 6}) {
        GroupSpec t;
        t.type = GroupSpec::Type::Twisted;
        t.n = n;
        tasks.push_back({t.to_json(), "twisted"});
    }

    auto run_one = [&](const Task& task, std::uint64_t subseed) -> std::pair<bool, std::string> {
        const GroupSpec spec = parse_group_spec(task.spec);
        const HopfPtr M = build_from_spec(spec, task.side == "twisted" ? "function" : task.side,
                                          subseed);
        const ReflexivityReport rr = is_reflexive(M, subseed, cfg.tol);
        bool ok;
        if (task.side == "twisted") {
            int expected_standard = 0;
            for (int s = 0; s < spec.n; ++s)
                if ((2 * s) % spec.n == 0) ++expected_standard;
            ok = rr.canonical == (expected_standard == spec.n);
        } else {
            ok = rr.canonical && rr.structural_ok;
        }
        std::ostringstream line;
        line << (ok ? "PASS " : "FAIL ") << spec.describe() << " [" << task.side << "] M^ blocks="
             << sig_str(rr.first.dual->block_signature())
             << " reflexive=" << (rr.canonical ? "yes" : "no");
        return {ok, line.str()};
    };

    std::vector<std::pair<bool, std::string>> results(tasks.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            results[i] = run_one(tasks[i], cfg.seed ^ static_cast<std::uint64_t>(i));
    } else {
        std::vector<std::future<std::pair<bool, std::string>>> futs;
        for (size_t i = 0; i < tasks.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_one, tasks[i],
                                      cfg.seed ^ static_cast<std::uint64_t>(i)));
        for (size_t i = 0; i < tasks.size(); ++i) results[i] = futs[i].get();
    }

    bool all_ok = true;
    json::Value arr = json::Value::array();
    for (size_t i = 0; i < results.size(); ++i) {
        all_ok = all_ok && results[i].first;
        std::cout << results[i].second << "\n";
        json::Value one = json::Value::object();
        one.set("spec", json::parse(tasks[i].spec));
        one.set("side", json::Value::str(tasks[i].side));
        one.set("pass", json::Value::boolean(results[i].first));
        arr.push(std::move(one));
    }
    if (!cfg.out.empty()) {
        json::Value root = json::Value::object();
        root.set("schema_version", json::Value::integer(1));
        root.set("tool", json::Value::str("hopfdual"));
        root.set("seed", json::Value::integer(static_cast<long long>(cfg.seed)));
        root.set("tol", json::Value::number(cfg.tol));
        root.set("fleet", std::move(arr));
        root.set("pass", json::Value::boolean(all_ok));
        std::ofstream outf(cfg.out);
        outf << root.dump(1) << "\n";
    }
    std::cout << (all_ok ? "fleet PASS" : "fleet FAIL") << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hopfdual: duality of finite-dimensional coinvolutive Hopf-von Neumann algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    int twisted_n = 5;
    int jobs = 1;

    auto add_common = [&](CLI::App* sub, bool with_spec) {
        if (with_spec)
            sub->add_option("--spec", cfg.spec_text, "group spec: inline JSON or a file path")
                ->required();
        sub->add_option("--seed", cfg.seed, "PRNG seed (default 0x5EED)");
        sub->add_option("--tol", cfg.tol, "residual tolerance")
            ->check(CLI::Range(1e-300, 1e-3));
        sub->add_option("--out", cfg.out, "write the JSON report to this path");
        sub->add_flag("-v,--verbose", cfg.verbosity, "verbose human output");
    };

    CLI::App* ax = app.add_subcommand("axioms", "verify the *-algebra and Hopf axioms");
    add_common(ax, true);
    ax->add_option("--side", cfg.side, "function | groupvn")
        ->check(CLI::IsMember({"function", "groupvn"}));

    CLI::App* du = app.add_subcommand("dualize", "run the duality pipeline M -> M^");
    add_common(du, true);
    du->add_option("--side", cfg.side, "function | groupvn")
        ->check(CLI::IsMember({"function", "groupvn"}));
    du->add_flag("--double", cfg.want_double, "also compute the double dual");
    du->add_flag("--triple", cfg.want_triple, "also compute the triple dual");
    du->add_flag("--reflexive", cfg.want_reflexive, "decide reflexivity via the canonical map");
    du->add_flag("--timing", cfg.timing, "include wall_clock_ms in the JSON report");

    CLI::App* po = app.add_subcommand("pontryagin",
                                      "check reconstruct(dual(C(G))) against the character group");
    add_common(po, true);

    CLI::App* tw = app.add_subcommand("twisted-demo", "walk through the twisted counterexample");
    add_common(tw, false);
    tw->add_option("--n", twisted_n, "cyclic order (default 5)")->check(CLI::Range(1, 64));

    CLI::App* fl = app.add_subcommand("fleet", "run the whole verification fleet");
    add_common(fl, false);
    fl->add_option("--jobs", jobs, "concurrent runs (seed is XORed with the task index)")
        ->check(CLI::Range(1, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!cfg.spec_text.empty()) cfg.spec_text = load_spec_text(cfg.spec_text);
        if (ax->parsed()) return cmd_axioms(cfg);
        if (du->parsed()) return cmd_dualize(cfg);
        if (po->parsed()) return cmd_pontryagin(cfg);
        if (tw->parsed()) return cmd_twisted_demo(cfg, twisted_n);
        if (fl->parsed()) return cmd_fleet(cfg, jobs);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == "BadSpec" || e.code() == "NotAbelian" || e.code() == "DimensionMismatch")
            return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
