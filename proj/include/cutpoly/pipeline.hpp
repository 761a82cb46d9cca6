#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutpoly/certificates.hpp"
#include "cutpoly/config.hpp"
#include "cutpoly/instances.hpp"
#include "cutpoly/splitoff.hpp"

namespace cutpoly {

struct SearchConfig {
    std::string form = "alpha";  // "alpha" (per-alpha sweep) or "disj-alpha"
    int n = 6;
    double density = 0.5;
    int trials = 1;
    std::uint64_t seed = 1;
    std::string backend = "exact";  // the search itself runs exact; recorded only
    std::string out_dir;            // where certificate files go ("" = don't write)
    Tolerances tol;
};

/// The win-win experiment: per trial, sample, normalize to min cut 2, price
/// with the alpha-LPs (or the disjunction), and either record that the lower
/// bound holds or produce a verified TSP cutting plane. Deterministic under
/// the seed; the returned JSON is byte-stable.
inline nlohmann::ordered_json run_search(const SearchConfig& cfg) {
    require(cfg.trials >= 1, Errc::usage, "trials must be >= 1");
    require(cfg.n >= 4, Errc::usage, "search needs n >= 4");
    require(cfg.form == "alpha" || cfg.form == "disj-alpha", Errc::usage,
            "search supports forms: alpha, disj-alpha");
    require(cfg.backend == "exact" || cfg.n <= 10, Errc::usage,
            "exact backend required for n <= 10");
    Rng rng(cfg.seed);
    nlohmann::ordered_json report;
    report["tool"] = "cutpoly";
    report["version"] = kVersion;
    report["seed"] = cfg.seed;
    report["backend"] = "exact";
    report["tolerances"] = {{"feasibility", cfg.tol.feasibility},
                            {"optimality", cfg.tol.optimality},
                            {"reported_value", cfg.tol.reported_value}};
    report["form"] = cfg.form;
    report["n"] = cfg.n;
    report["density"] = cfg.density;
    report["trials"] = cfg.trials;

    int bound_holds = 0, certificates = 0, total_resamples = 0;
    nlohmann::ordered_json trials = nlohmann::ordered_json::array();
    for (int t = 0; t < cfg.trials; ++t) {
        auto [raw, resamples] = random_positive_mincut(cfg.n, cfg.density, rng);
        total_resamples += resamples;
        auto norm = normalize_to_mincut_two(raw);

        nlohmann::ordered_json rec;
        rec["trial"] = t;
        rec["digest"] = digest(norm.c);
        rec["resamples"] = resamples;
        rec["normalized"] = norm.scale != 1;
        rec["mincut"] = "2";

        Rat best;
        bool have_best = false;
        FormulationSpec best_spec;
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        if (cfg.form == "alpha") {
            for (int a = 1; a <= cfg.n / 2; ++a) {
                FormulationSpec spec;
                spec.tag = "alpha";
                spec.alpha = Rat(a);
                auto sol = solve_formulation(spec, norm.c);
                require(sol.status == lp::SolveStatus::Optimal, Errc::solver_failure,
                        "alpha-LP did not solve");
                values.push_back({{"alpha", a}, {"value", sol.objective.get_str()}});
                if (!have_best || sol.objective < best) {
                    best = sol.objective;
                    best_spec = spec;
                    have_best = true;
                }
            }
        } else {
            FormulationSpec spec;
            spec.tag = "disj-alpha";
            auto sol = solve_formulation(spec, norm.c);
            require(sol.status == lp::SolveStatus::Optimal, Errc::solver_failure,
                    "disjunction did not solve");
            values.push_back({{"value", sol.objective.get_str()}});
            best = sol.objective;
            best_spec = spec;
            have_best = true;
        }
        rec["lp_values"] = std::move(values);
        rec["min_value"] = best.get_str();

        if (best >= 2) {
            rec["branch"] = "bound-holds";
            ++bound_holds;
        } else {
            auto cert = certify_non_exactness(norm.c, best_spec);
            require(cert.kind == Certificate::Kind::Violated, Errc::internal_consistency,
                    "re-solve disagreed with the recorded LP value");
            auto cut = generate_tsp_cut(cert.c_star, cert.x_star, best_spec);
            rec["branch"] = "certificate";
            rec["certificate"] = tsp_cut_to_json(cut);
            if (!cfg.out_dir.empty()) {
                std::string fname = "cut_trial" + std::to_string(t) + ".json";
                std::ofstream out(cfg.out_dir + "/" + fname);
                require(out.good(), Errc::io, "cannot write certificate file");
                out << tsp_cut_to_json(cut).dump(2) << "\n";
                rec["certificate_ref"] = fname;
            }
            ++certificates;
        }
        trials.push_back(std::move(rec));
    }
    report["records"] = std::move(trials);
    report["summary"] = {{"bound_holds", bound_holds},
                         {"certificates", certificates},
                         {"resamples", total_resamples}};
    return report;
}

}  // namespace cutpoly
