#pragma once

#include <string>
#include <vector>

#include "cutpoly/formulation.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

enum class Verdict { Meets, Below, Above };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Meets: return "meets";
        case Verdict::Below: return "below";
        case Verdict::Above: return "above";
    }
    return "?";
}

template <typename T>
struct HamiltonPropertyReport {
    FormulationSpec spec;
    HamCycle cycle;
    T lp_value{};
    Rat eta;
    Verdict verdict = Verdict::Meets;
};

/// Builds the formulation with the cycle's incidence vector as objective,
/// solves, and compares the optimum against the expected constant eta.
template <typename T>
HamiltonPropertyReport<T> check_hamilton_property(const FormulationSpec& spec,
                                                  const HamCycle& cycle, const Rat& eta,
                                                  lp::SolveOptions opts = {},
                                                  double verdict_tol = 1e-6) {
    auto c = incidence_of_cycle<T>(cycle);
    auto sol = solve_formulation(spec, c, opts);
    require(sol.status == lp::SolveStatus::Optimal, Errc::solver_failure,
            "formulation did not solve to optimality");
    HamiltonPropertyReport<T> rep{spec, cycle, sol.objective, eta, Verdict::Meets};
    if constexpr (scalar_traits<T>::exact) {
        Rat e = eta;
        if (sol.objective < e) rep.verdict = Verdict::Below;
        else if (sol.objective > e) rep.verdict = Verdict::Above;
    } else {
        double e = to_double(eta);
        if (sol.objective < e - verdict_tol) rep.verdict = Verdict::Below;
        else if (sol.objective > e + verdict_tol) rep.verdict = Verdict::Above;
    }
    return rep;
}

template <typename T>
struct SymmetricSolution {
    T K{};         // common x value on the canonical cycle edges
    T h_common{};  // common node value
    CostVector<T> x;
    std::vector<T> h;  // 1-based
    T objective{};
};

/// Averages the n cyclic rotations pi^k(i) = 1 + (i + k - 1 mod n) of an
/// optimal solution; the result must stay feasible with the same objective,
/// otherwise the formulation was not rotation-symmetric.
template <typename T>
SymmetricSolution<T> symmetrize(const lp::Model<T>& model, const lp::Solution<T>& sol, int n,
                                double tol = 1e-9) {
    require(sol.status == lp::SolveStatus::Optimal, Errc::parameter,
            "symmetrize needs an optimal solution");
    const T inv_n = scalar_traits<T>::from_int(1) / scalar_traits<T>::from_int(n);
    auto rot = [&](NodeId i, int k) { return 1 + (i + k - 1) % n; };

    std::vector<T> avg(static_cast<std::size_t>(model.num_cols()), T{});
    for (int col = 0; col < model.num_cols(); ++col) {
        const std::string& name = model.var_name(col);
        if (name.size() > 2 && name[0] == 'x' && name[1] == '_') {
            auto us = name.find('_', 2);
            NodeId i = std::stoi(name.substr(2, us - 2));
            NodeId j = std::stoi(name.substr(us + 1));
            T s{};
            for (int k = 0; k < n; ++k)
                s += sol.primal[static_cast<std::size_t>(model.var_index(xname(rot(i, k), rot(j, k))))];
            avg[static_cast<std::size_t>(col)] = s * inv_n;
        } else if (name.size() > 2 && name[0] == 'h' && name[1] == '_') {
            NodeId i = std::stoi(name.substr(2));
            T s{};
            for (int k = 0; k < n; ++k)
                s += sol.primal[static_cast<std::size_t>(model.var_index(hname(rot(i, k))))];
            avg[static_cast<std::size_t>(col)] = s * inv_n;
        } else {
            avg[static_cast<std::size_t>(col)] = sol.primal[static_cast<std::size_t>(col)];
        }
    }

    auto bad = model.violated_rows(avg, tol);
    require(bad.empty(), Errc::symmetry_violation,
            "rotation average infeasible (first violated row: " +
                (bad.empty() ? std::string() : bad.front()) + ")");
    T obj = model.objective_value(avg);
    T gap = obj - sol.objective;
    require(scalar_traits<T>::is_zero(gap, tol), Errc::symmetry_violation,
            "rotation average changed the objective");

    SymmetricSolution<T> out;
    out.objective = obj;
    out.x = CostVector<T>(n);
    out.h.assign(static_cast<std::size_t>(n) + 1, T{});
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            const T& v = avg[static_cast<std::size_t>(model.var_index(xname(i, j)))];
            if (!scalar_traits<T>::is_zero(v, 0)) out.x.set(i, j, v);
        }
    if (model.has_var(hname(1)))
        for (NodeId i = 1; i <= n; ++i)
            out.h[static_cast<std::size_t>(i)] =
                avg[static_cast<std::size_t>(model.var_index(hname(i)))];
    out.K = out.x.get(1, 2);
    out.h_common = out.h[1];
    return out;
}

template <typename T>
struct CanonicalSolution {
    CostVector<T> x;
    T h_common{};
    int n = 0;
};

/// h_i = alpha/n, x_ij = min(2 d_n(i,j)/n, 2 alpha/n): the closed-form
/// optimum of the new alpha-LP on the canonical cycle, with objective 2 and
/// sum x = alpha(n - alpha) for integral alpha.
template <typename T>
CanonicalSolution<T> canonical_symmetric_solution(int n, const Rat& alpha) {
    require(n >= 2, Errc::parameter, "need n >= 2");
    require(sgn(alpha) > 0 && alpha <= make_rat(n, 2), Errc::parameter, "alpha must lie in (0, n/2]");
    CanonicalSolution<T> out;
    out.n = n;
    out.x = CostVector<T>(n);
    Rat two_alpha_over_n = 2 * alpha / n;
    two_alpha_over_n.canonicalize();
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            Rat v = Rat(2 * cycle_distance(n, i, j), n);
            v.canonicalize();
            if (v > two_alpha_over_n) v = two_alpha_over_n;
            out.x.set(i, j, from_rat<T>(v));
        }
    Rat h = alpha / n;
    h.canonicalize();
    out.h_common = from_rat<T>(h);
    return out;
}

struct BetaXCounterexample {
    CostVector<Rat> x;
    Rat h_common;
    Rat alpha;
    Rat X;  // the weakened right hand side the point is feasible for
    Rat cycle_objective;
};

/// The tightness construction: for X = threshold - eps the assignment below
/// is feasible and prices the canonical cycle strictly below 2.
inline BetaXCounterexample beta_x_counterexample(int n, int beta1, const Rat& lambda,
                                                 const Rat& eps) {
    require(beta1 >= 1 && 2 * beta1 < n, Errc::parameter, "need 1 <= beta1 < n/2");
    require(sgn(lambda) >= 0 && lambda <= 1, Errc::parameter, "lambda must be in [0,1]");
    require(sgn(eps) > 0, Errc::parameter, "eps must be positive");
    int beta2 = beta1 + 1;
    Rat alpha = lambda * beta1 + (1 - lambda) * beta2;
    Rat coeff = make_rat(2, n) - 2 * eps / (Rat(n) * beta1 * (beta1 + 1));
    coeff.canonicalize();
    require(sgn(coeff) >= 0, Errc::parameter, "eps too large: cycle-edge weight went negative");

    BetaXCounterexample out;
    out.alpha = alpha;
    out.h_common = alpha / n;
    out.h_common.canonicalize();
    Rat cap = 2 * alpha / n;
    cap.canonicalize();
    out.x = CostVector<Rat>(n);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            int d = cycle_distance(n, i, j);
            Rat v = d <= beta1 ? Rat(coeff * d) : cap;
            v.canonicalize();
            out.x.set(i, j, v);
        }
    Rat threshold = lambda * Rat(beta1) * Rat(n - beta1) + (1 - lambda) * Rat(beta2) * Rat(n - beta2);
    out.X = threshold - eps;
    out.X.canonicalize();
    out.cycle_objective = Rat(n) * coeff;
    out.cycle_objective.canonicalize();
    return out;
}

/// Valid inequality x(P) >= x_{endpoints} derived from the support triangle
/// rows; every consecutive path pair must lie in the support of c.
template <typename T>
bool path_inequality_check(const CostVector<T>& x, const std::vector<NodeId>& path,
                           const CostVector<T>& support, double tol = 1e-9) {
    require(path.size() >= 2, Errc::parameter, "path needs at least two nodes");
    T along{};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        NodeId a = path[k], b = path[k + 1];
        require(!scalar_traits<T>::is_zero(support.get(a, b), 0), Errc::inapplicable_lemma,
                "path edge outside the support of c");
        along += x.get(a, b);
    }
    T end = x.get(path.front(), path.back());
    return !scalar_traits<T>::is_neg(along - end, tol);
}

}  // namespace cutpoly
