#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutpoly/relaxations.hpp"

namespace cutpoly {

/// Parameter record for the stable formulation names used by the CLI and in
/// report JSON: alpha-old, alpha, beta, beta-x, gamma, w, w-small, st,
/// maxcut-naive, subtour, disj-alpha, disj-gamma, st-hull.
struct FormulationSpec {
    std::string tag;
    Rat alpha = 0;
    int beta1 = 0;
    int beta2 = 0;  // 0: default (beta1+1 for beta, 2*beta1 for gamma)
    std::optional<Rat> lambda;
    std::optional<Rat> X;
    Rat eps = 1;
    NodeId s = 0, t = 0;
};

inline const std::vector<std::string>& formulation_tags() {
    static const std::vector<std::string> tags = {
        "alpha-old", "alpha",  "beta",    "beta-x",     "gamma",     "w",      "w-small",
        "st",        "maxcut-naive", "subtour", "disj-alpha", "disj-gamma", "st-hull"};
    return tags;
}

/// Hamilton-property constant for formulations that have one; gamma-family
/// values are lower bounds rather than exact optima.
inline std::optional<Rat> default_eta(const std::string& tag) {
    if (tag == "alpha-old" || tag == "alpha" || tag == "beta" || tag == "beta-x" ||
        tag == "st" || tag == "w" || tag == "w-small" || tag == "disj-alpha" ||
        tag == "st-hull")
        return Rat(2);
    if (tag == "gamma" || tag == "disj-gamma") return Rat(16, 9);
    return std::nullopt;
}

inline bool eta_is_lower_bound(const std::string& tag) {
    return tag == "gamma" || tag == "disj-gamma";
}

/// Formulations whose rows include the support triangle inequalities (the
/// precondition of the splitting-off pipeline). Disjunction blocks carry the
/// rows per block; summing them gives the same inequalities on the shared x.
inline bool has_support_triangles(const std::string& tag) {
    return tag == "alpha-old" || tag == "alpha" || tag == "beta" || tag == "beta-x" ||
           tag == "gamma" || tag == "disj-alpha" || tag == "disj-gamma";
}

inline BetaParams beta_params_from(const FormulationSpec& spec, bool gamma) {
    BetaParams p;
    require(spec.beta1 >= 1, Errc::parameter, "beta1 required");
    p.beta1 = spec.beta1;
    p.beta2 = spec.beta2 > 0 ? spec.beta2 : (gamma ? 2 * spec.beta1 : spec.beta1 + 1);
    if (gamma)
        require(p.beta2 == 2 * p.beta1, Errc::parameter, "gamma-LP requires beta2 = 2*beta1");
    if (spec.lambda) {
        p.lambda_mode = LambdaMode::Fixed;
        p.lambda = *spec.lambda;
    }
    return p;
}

template <typename T>
lp::Model<T> build_formulation(const FormulationSpec& spec, const CostVector<T>& c) {
    const std::string& tag = spec.tag;
    if (tag == "alpha-old" || tag == "alpha")
        return build_alpha_lp(c, AlphaParams{spec.alpha, tag == "alpha-old"
                                                             ? AlphaVariant::Old
                                                             : AlphaVariant::New});
    if (tag == "beta") return build_beta_lp(c, beta_params_from(spec, false));
    if (tag == "gamma") return build_beta_lp(c, beta_params_from(spec, true), "gamma");
    if (tag == "beta-x") {
        BetaXParams p;
        p.beta = beta_params_from(spec, false);
        if (p.beta.lambda_mode != LambdaMode::Fixed) {
            p.beta.lambda_mode = LambdaMode::Fixed;
            p.beta.lambda = Rat(1, 2);
        }
        require(spec.X.has_value(), Errc::parameter, "(beta, X)-LP requires X");
        p.X = *spec.X;
        return build_beta_x_lp(c, p);
    }
    if (tag == "st") return build_auxiliary_lp(AuxKind::StCut, c, spec.s, spec.t);
    if (tag == "w") return build_auxiliary_lp(AuxKind::WLP, c);
    if (tag == "w-small") return build_auxiliary_lp(AuxKind::SmallWLP, c);
    if (tag == "maxcut-naive") return build_auxiliary_lp(AuxKind::NaiveMaxCut, c);
    if (tag == "subtour") return build_auxiliary_lp(AuxKind::Subtour, c);
    if (tag == "disj-alpha") return build_disjunction(DisjunctionKind::AllAlpha, c);
    if (tag == "disj-gamma") return build_disjunction(DisjunctionKind::GammaGeometric, c, spec.eps);
    if (tag == "st-hull") return build_disjunction(DisjunctionKind::StCutHull, c);
    fail(Errc::parameter, "unknown formulation tag: " + tag);
}

/// Solves a formulation on objective c; routes the subtour relaxation through
/// its row-generation loop.
template <typename T>
lp::Solution<T> solve_formulation(const FormulationSpec& spec, const CostVector<T>& c,
                                  lp::SolveOptions opts = {}) {
    if (spec.tag == "subtour") return solve_subtour(c, opts).second;
    return lp::solve(build_formulation(spec, c), opts);
}

}  // namespace cutpoly
