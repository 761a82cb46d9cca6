// Command-line driver: build/solve the min-cut relaxations, run Hamilton
// cycle property sweeps, execute the win-win search, and emit reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cutpoly/cutpoly.hpp"

namespace {

using namespace cutpoly;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitInvariant = 3;

struct CommonOpts {
    std::string backend = "exact";
    std::uint64_t seed = 1;
    std::string out;
    std::string graph;
    int cycle_n = 0;
    std::uint64_t cycle_seed = 0;  // 0: canonical order
    int random_n = 0;
    double density = 0.5;

    std::string form;
    std::string alpha;  // rational
    int beta1 = 0;
    int beta2 = 0;
    std::string lambda;
    std::string X;
    std::string x_deficit;
    std::string eps = "1";
    int s = 0, t = 0;
};

FormulationSpec spec_from(const CommonOpts& o, int n) {
    FormulationSpec spec;
    spec.tag = o.form;
    if (!o.alpha.empty()) spec.alpha = parse_rat(o.alpha);
    spec.beta1 = o.beta1;
    spec.beta2 = o.beta2;
    if (!o.lambda.empty()) spec.lambda = parse_rat(o.lambda);
    if (!o.X.empty()) spec.X = parse_rat(o.X);
    spec.eps = parse_rat(o.eps);
    spec.s = o.s;
    spec.t = o.t;
    if (o.form == "beta-x" && !spec.X.has_value()) {
        require(!o.x_deficit.empty(), Errc::usage, "beta-x needs --X or --X-deficit");
        BetaParams bp;
        bp.beta1 = o.beta1 > 0 ? o.beta1 : 2;
        bp.beta2 = o.beta2 > 0 ? o.beta2 : bp.beta1 + 1;
        Rat lam = spec.lambda ? *spec.lambda : Rat(1, 2);
        spec.lambda = lam;
        spec.beta1 = bp.beta1;
        spec.beta2 = bp.beta2;
        spec.X = bp.sum_x_rhs_of(lam, n) - parse_rat(o.x_deficit);
    }
    return spec;
}

CostVector<Rat> resolve_instance(const CommonOpts& o) {
    if (!o.graph.empty()) return read_cost_vector_file(o.graph);
    if (o.cycle_n > 0) {
        if (o.cycle_seed == 0) return incidence_of_cycle<Rat>(HamCycle::canonical(o.cycle_n));
        Rng rng(o.cycle_seed);
        return incidence_of_cycle<Rat>(HamCycle(rng.permutation(o.cycle_n)));
    }
    if (o.random_n > 0) {
        Rng rng(o.seed);
        return random_positive_mincut(o.random_n, o.density, rng).first;
    }
    fail(Errc::usage, "no instance: use --graph, --cycle, or --random-n");
}

void write_out(const std::string& path, const ordered_json& j) {
    if (path.empty()) return;
    auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path);
    require(out.good(), Errc::io, "cannot write " + path);
    out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------- solve

template <typename T>
int do_solve(const CommonOpts& o, const CostVector<Rat>& c_exact) {
    auto c = convert_cost<T>(c_exact);
    FormulationSpec spec = spec_from(o, c.n());
    Tolerances tol = default_tolerances();
    lp::SolveOptions opts{tol.feasibility, tol.optimality, 0};

    lp::Model<T> model = build_formulation(spec, c);
    lp::Solution<T> sol;
    if (spec.tag == "subtour") {
        auto [m2, s2] = solve_subtour(c, opts);
        model = std::move(m2);
        sol = std::move(s2);
    } else {
        sol = lp::solve(model, opts);
    }
    ordered_json j = lp::solution_to_json(model, sol);
    j["formulation"] = spec_to_json(spec);
    j["backend"] = o.backend;
    j["version"] = kVersion;
    j["seed"] = o.seed;
    j["tolerances"] = {{"feasibility", tol.feasibility},
                       {"optimality", tol.optimality},
                       {"reported_value", tol.reported_value}};
    write_out(o.out, j);
    if (sol.status != lp::SolveStatus::Optimal) {
        std::cout << lp::status_str(sol.status) << "\n";
        return kExitSolver;
    }
    std::cout << "objective " << scalar_traits<T>::str(sol.objective) << "\n";
    return kExitOk;
}

int cmd_solve(const CommonOpts& o) {
    auto c = resolve_instance(o);
    if (o.backend == "float") {
        try {
            return do_solve<double>(o, c);
        } catch (const Error& e) {
            if (e.code != Errc::solver_failure) throw;
            std::cerr << "float backend stalled; escalating to exact\n";
        }
    }
    return do_solve<Rat>(o, c);
}

// ------------------------------------------------------------------- hamcheck

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmd_hamcheck(const CommonOpts& o, const std::string& n_range, int perms,
                 const std::string& eta_str, const std::string& mode, bool expect_below) {
    require(!o.form.empty(), Errc::usage, "--form required");
    auto [n_lo, n_hi] = parse_range(n_range);
    require(n_lo >= 3 && n_hi >= n_lo, Errc::usage, "bad --n range");
    bool lower_bound = mode == "lower-bound" || (mode.empty() && eta_is_lower_bound(o.form));

    Rng rng(o.seed);
    Tolerances tol = default_tolerances();
    lp::SolveOptions opts{tol.feasibility, tol.optimality, 0};
    ordered_json records = ordered_json::array();
    int below = 0, above = 0, meets = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        // parameter grid per formulation
        std::vector<FormulationSpec> specs;
        if (o.form == "alpha" || o.form == "alpha-old") {
            if (!o.alpha.empty()) {
                specs.push_back(spec_from(o, n));
            } else {
                for (int a = 1; a <= n / 2; ++a) {
                    auto sp = spec_from(o, n);
                    sp.alpha = Rat(a);
                    specs.push_back(sp);
                }
            }
        } else if (o.form == "beta" || o.form == "beta-x") {
            if (o.beta1 > 0) {
                specs.push_back(spec_from(o, n));
            } else {
                for (int b1 = 1; b1 <= n / 2 - 1; ++b1) {
                    CommonOpts oo = o;
                    oo.beta1 = b1;
                    specs.push_back(spec_from(oo, n));
                }
            }
        } else if (o.form == "gamma") {
            if (o.beta1 > 0) {
                specs.push_back(spec_from(o, n));
            } else {
                for (int b1 = 1; 2 * b1 <= n / 2; ++b1) {
                    CommonOpts oo = o;
                    oo.beta1 = b1;
                    specs.push_back(spec_from(oo, n));
                }
            }
        } else if (o.form == "st") {
            CommonOpts oo = o;
            if (oo.s == 0) oo.s = 1;
            if (oo.t == 0) oo.t = n >= 2 ? n / 2 + 1 : 2;
            specs.push_back(spec_from(oo, n));
        } else {
            specs.push_back(spec_from(o, n));
        }

        for (const auto& sp : specs) {
            Rat eta;
            if (!eta_str.empty()) {
                eta = parse_rat(eta_str);
            } else {
                auto d = default_eta(sp.tag);
                require(d.has_value(), Errc::usage,
                        "formulation has no Hamilton constant; pass --eta");
                eta = *d;
            }
            for (int p = 0; p < perms; ++p) {
                std::uint64_t cycle_seed = rng.next();
                HamCycle cyc = p == 0 ? HamCycle::canonical(n)
                                      : HamCycle(Rng(cycle_seed).permutation(n));
                auto rep = check_hamilton_property<Rat>(sp, cyc, eta, opts);
                ordered_json r = spec_to_json(sp);
                r["n"] = n;
                r["cycle_seed"] = p == 0 ? 0 : cycle_seed;
                r["lp_value"] = rep.lp_value.get_str();
                r["eta"] = eta.get_str();
                r["verdict"] = verdict_str(rep.verdict);
                records.push_back(std::move(r));
                if (rep.verdict == Verdict::Below) ++below;
                else if (rep.verdict == Verdict::Above) ++above;
                else ++meets;
            }
        }
    }
    ordered_json j;
    j["version"] = kVersion;
    j["seed"] = o.seed;
    j["backend"] = "exact";
    j["mode"] = lower_bound ? "lower-bound" : "exact";
    j["records"] = std::move(records);
    j["summary"] = {{"meets", meets}, {"above", above}, {"below", below}};
    write_out(o.out, j);
    std::cout << "meets " << meets << "  above " << above << "  below " << below << "\n";
    if (expect_below) return below > 0 && meets == 0 && above == 0 ? kExitOk : kExitInvariant;
    if (lower_bound) return below == 0 ? kExitOk : kExitInvariant;
    return below == 0 && above == 0 ? kExitOk : kExitInvariant;
}

// --------------------------------------------------------------------- search

int cmd_search(const CommonOpts& o, int trials) {
    SearchConfig cfg;
    cfg.form = o.form.empty() ? "alpha" : o.form;
    cfg.n = o.random_n > 0 ? o.random_n : 6;
    cfg.density = o.density;
    cfg.trials = trials;
    cfg.seed = o.seed;
    cfg.backend = o.backend;
    cfg.tol = default_tolerances();
    if (!o.out.empty()) {
        auto dir = std::filesystem::path(o.out).parent_path();
        cfg.out_dir = dir.empty() ? "." : dir.string();
    }
    auto report = run_search(cfg);
    write_out(o.out, report);
    const auto& s = report["summary"];
    std::cout << "trials " << cfg.trials << "  bound-holds " << s["bound_holds"]
              << "  certificates " << s["certificates"] << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------- sizes

int cmd_sizes(const std::string& forms_csv, const std::string& ns_csv, const CommonOpts& o) {
    std::vector<std::string> forms;
    std::stringstream fs(forms_csv);
    std::string tok;
    while (std::getline(fs, tok, ',')) forms.push_back(tok);
    std::vector<int> ns;
    std::stringstream nss(ns_csv);
    while (std::getline(nss, tok, ',')) ns.push_back(std::stoi(tok));
    require(!forms.empty() && !ns.empty(), Errc::usage, "--forms and --n required");

    std::ostringstream csv;
    csv << "form,n,m,rows,cols,blocks\n";
    for (const auto& form : forms)
        for (int n : ns) {
            auto c = incidence_of_cycle<Rat>(HamCycle::canonical(n));
            CommonOpts oo = o;
            oo.form = form;
            if ((form == "alpha" || form == "alpha-old") && oo.alpha.empty())
                oo.alpha = Rat(n / 2).get_str();
            if ((form == "beta" || form == "gamma" || form == "beta-x") && oo.beta1 == 0)
                oo.beta1 = 1;
            if (form == "st" && oo.s == 0) {
                oo.s = 1;
                oo.t = 2;
            }
            if (form == "beta-x" && oo.X.empty() && oo.x_deficit.empty()) oo.x_deficit = "0";
            auto spec = spec_from(oo, n);
            auto m = build_formulation(spec, c);
            int blocks = 0;
            auto it = m.meta().params.find("blocks");
            if (it != m.meta().params.end()) blocks = std::stoi(it->second);
            csv << form << "," << n << "," << c.support_size() << "," << m.num_rows() << ","
                << m.num_cols() << "," << blocks << "\n";
        }
    std::cout << csv.str();
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        require(f.good(), Errc::io, "cannot write " + o.out);
        f << csv.str();
    }
    return kExitOk;
}

// ------------------------------------------------------------------- splitoff

int cmd_splitoff(const CommonOpts& o, const std::string& replay_path) {
    if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        require(in.good(), Errc::io, "cannot open " + replay_path);
        ordered_json j;
        in >> j;
        auto trace = trace_from_json(j);
        replay_trace(trace);
        std::cout << "trace verified: " << trace.steps.size() << " steps, min cut "
                  << trace.mincut.get_str() << "\n";
        return kExitOk;
    }
    auto c = resolve_instance(o);
    auto norm = normalize_to_mincut_two(c);
    auto trace = lovasz_reduce(norm.c);
    write_out(o.out, trace_to_json(trace));
    std::cout << "reduced in " << trace.steps.size() << " steps; degrees now all 2\n";
    return kExitOk;
}

// --------------------------------------------------------------------- mstcert

int cmd_mstcert(const CommonOpts& o) {
    auto x = resolve_instance(o);
    auto res = mst_certificate(x);
    ordered_json j;
    j["mst_cost"] = res.mst_cost.get_str();
    j["premise_checked"] = res.premise_checked;
    if (res.premise_checked) j["premise_holds"] = res.premise_holds;
    else j["premise"] = "premise-unverified";
    switch (res.kind) {
        case MstCertificate<Rat>::Kind::Exact: j["kind"] = "exact-decomposition"; break;
        case MstCertificate<Rat>::Kind::Dominates: j["kind"] = "dominates-decomposition"; break;
        case MstCertificate<Rat>::Kind::Inconclusive: j["kind"] = "inconclusive"; break;
    }
    if (!res.diagnostic.empty()) j["diagnostic"] = res.diagnostic;
    ordered_json terms = ordered_json::array();
    for (const auto& [s, z] : res.decomposition.terms) {
        ordered_json t;
        t["side"] = s.members;
        t["weight"] = z.get_str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    write_out(o.out, j);
    std::cout << j["kind"].get<std::string>() << " (mst cost " << res.mst_cost.get_str()
              << ")\n";
    return kExitOk;
}

// --------------------------------------------------------------- tspcut-verify

int cmd_tspcut_verify(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::io, "cannot open " + path);
    ordered_json j;
    in >> j;
    auto cut = tsp_cut_from_json(j);
    verify_tsp_cut(cut);
    Rat margin = cut.rhs - dot(cut.witness, cut.coeffs);
    std::cout << "cut valid; witness violation " << margin.get_str() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric min-cut LP relaxations and TSP cutting planes"};
    app.require_subcommand(1);
    CommonOpts o;
    app.add_option("--backend", o.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--out", o.out, "output file (JSON/CSV)");
    app.add_option("--graph", o.graph, "instance file (\"n N\" header, \"i j w\" lines)");
    app.add_option("--cycle", o.cycle_n, "unit Hamilton cycle on N nodes");
    app.add_option("--cycle-seed", o.cycle_seed, "permute the cycle with this seed");
    app.add_option("--random-n", o.random_n, "random instance on N nodes");
    app.add_option("--density", o.density, "random support density");
    app.add_option("--form", o.form, "formulation tag");
    app.add_option("--alpha", o.alpha, "alpha (integer or p/q)");
    app.add_option("--beta1", o.beta1, "beta1");
    app.add_option("--beta2", o.beta2, "beta2");
    app.add_option("--lambda", o.lambda, "fixed lambda in [0,1]");
    app.add_option("--X", o.X, "explicit X for beta-x");
    app.add_option("--X-deficit", o.x_deficit, "X = threshold - deficit for beta-x");
    app.add_option("--eps", o.eps, "geometric schedule epsilon (0,1]");
    app.add_option("--s", o.s, "source node for st");
    app.add_option("--t", o.t, "sink node for st");

    auto* solve = app.add_subcommand("solve", "build and solve one formulation");
    solve->fallthrough();
    auto* hamcheck = app.add_subcommand("hamcheck", "Hamilton cycle property sweep");
    hamcheck->fallthrough();
    std::string n_range = "6";
    int perms = 5;
    std::string eta, mode;
    bool expect_below = false;
    hamcheck->add_option("--n", n_range, "node counts, e.g. 4..10");
    hamcheck->add_option("--perms", perms, "random cycle permutations per n");
    hamcheck->add_option("--eta", eta, "expected constant (default per formulation)");
    hamcheck->add_option("--mode", mode, "exact | lower-bound");
    hamcheck->add_flag("--expect-below", expect_below, "succeed only if every check is below eta");
    auto* search = app.add_subcommand("search", "win-win counterexample search");
    search->fallthrough();
    int trials = 0;
    search->add_option("--trials", trials, "number of trials")->required();
    search->add_option("--n", o.random_n, "instance size");
    auto* sizes = app.add_subcommand("sizes", "emit rows/cols per formulation as CSV");
    sizes->fallthrough();
    std::string forms_csv, ns_csv;
    sizes->add_option("--forms", forms_csv, "comma-separated tags")->required();
    sizes->add_option("--n", ns_csv, "comma-separated node counts")->required();
    auto* splitoff = app.add_subcommand("splitoff", "produce or replay a splitting-off trace");
    splitoff->fallthrough();
    std::string replay;
    splitoff->add_option("--replay", replay, "trace JSON to verify");
    auto* mstcert = app.add_subcommand("mstcert", "MST-based cut decomposition certificate");
    mstcert->fallthrough();
    auto* cutverify = app.add_subcommand("tspcut-verify", "re-verify a stored TSP cut");
    cutverify->fallthrough();
    std::string cutfile;
    cutverify->add_option("--cut", cutfile, "cut JSON file")->required();

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(o);
        if (hamcheck->parsed()) return cmd_hamcheck(o, n_range, perms, eta, mode, expect_below);
        if (search->parsed()) return cmd_search(o, trials);
        if (sizes->parsed()) return cmd_sizes(forms_csv, ns_csv, o);
        if (splitoff->parsed()) return cmd_splitoff(o, replay);
        if (mstcert->parsed()) return cmd_mstcert(o);
        if (cutverify->parsed()) return cmd_tspcut_verify(cutfile);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code) {
            case Errc::usage:
            case Errc::parameter:
            case Errc::io:
            case Errc::size_limit: return kExitUsage;
            case Errc::solver_failure: return kExitSolver;
            default: return kExitInvariant;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
