#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cutpoly/errors.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/lp/simplex.hpp"
#include "cutpoly/oracles.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

inline std::string xname(NodeId i, NodeId j) {
    auto p = make_pair_key(i, j);
    return "x_" + std::to_string(p.first) + "_" + std::to_string(p.second);
}
inline std::string hname(NodeId i) { return "h_" + std::to_string(i); }
inline std::string wname(NodeId k) { return "w_" + std::to_string(k); }

enum class AlphaVariant { Old, New };

struct AlphaParams {
    Rat alpha;  // integral in the problem statement; fractional values are
                // accepted (needed by the gamma -> alpha scaling map)
    AlphaVariant variant = AlphaVariant::New;
};

enum class LambdaMode { Variable, Fixed };

struct BetaParams {
    int beta1 = 1;
    int beta2 = 2;
    LambdaMode lambda_mode = LambdaMode::Variable;
    Rat lambda;  // used when fixed

    Rat alpha_of(const Rat& lam) const {
        return lam * beta1 + (Rat(1) - lam) * beta2;
    }
    Rat sum_x_rhs_of(const Rat& lam, int n) const {
        return lam * Rat(beta1) * Rat(n - beta1) + (Rat(1) - lam) * Rat(beta2) * Rat(n - beta2);
    }
};

struct BetaXParams {
    BetaParams beta;  // lambda_mode must be Fixed
    Rat X;
};

namespace detail {

template <typename T>
struct PairVars {
    std::vector<std::vector<int>> col;  // col[i][j], i<j
    int at(NodeId i, NodeId j) const {
        auto p = make_pair_key(i, j);
        return col[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)];
    }
};

template <typename T>
PairVars<T> add_edge_vars(lp::Model<T>& m, int n, const std::string& prefix = "") {
    PairVars<T> xs;
    xs.col.assign(static_cast<std::size_t>(n) + 1,
                  std::vector<int>(static_cast<std::size_t>(n) + 1, -1));
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j)
            xs.col[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m.add_variable(prefix + xname(i, j));
    return xs;
}

template <typename T>
std::vector<int> add_node_vars(lp::Model<T>& m, int n, const std::string& name,
                               const std::string& prefix = "") {
    std::vector<int> hs(static_cast<std::size_t>(n) + 1, -1);
    for (NodeId i = 1; i <= n; ++i)
        hs[static_cast<std::size_t>(i)] =
            m.add_variable(prefix + name + "_" + std::to_string(i));
    return hs;
}

template <typename T>
void add_maxcut_rows(lp::Model<T>& m, int n, const PairVars<T>& xs, const std::vector<int>& hs) {
    const T one = scalar_traits<T>::from_int(1);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j)
            m.add_row("mc_" + std::to_string(i) + "_" + std::to_string(j),
                      {{xs.at(i, j), one},
                       {hs[static_cast<std::size_t>(i)], T{} - one},
                       {hs[static_cast<std::size_t>(j)], T{} - one}},
                      lp::RowSense::LE, T{});
}

/// Support-restricted triangle rows: for every support pair {a,b} and third
/// node t, both x_{t,a} <= x_{b,t} + x_{b,a} and x_{t,b} <= x_{a,t} + x_{a,b}.
template <typename T>
void add_triangle_rows(lp::Model<T>& m, const CostVector<T>& c, const PairVars<T>& xs) {
    const T one = scalar_traits<T>::from_int(1);
    int n = c.n();
    for (const auto& [p, w] : c.entries()) {
        NodeId a = p.first, b = p.second;
        for (NodeId t = 1; t <= n; ++t) {
            if (t == a || t == b) continue;
            m.add_row("tri_" + std::to_string(t) + "_" + std::to_string(a) + "_" +
                          std::to_string(b),
                      {{xs.at(t, a), one}, {xs.at(b, t), T{} - one}, {xs.at(b, a), T{} - one}},
                      lp::RowSense::LE, T{});
            m.add_row("tri_" + std::to_string(t) + "_" + std::to_string(b) + "_" +
                          std::to_string(a),
                      {{xs.at(t, b), one}, {xs.at(a, t), T{} - one}, {xs.at(a, b), T{} - one}},
                      lp::RowSense::LE, T{});
        }
    }
}

template <typename T>
void set_cost_objective(lp::Model<T>& m, const CostVector<T>& c, const PairVars<T>& xs,
                        lp::ObjSense sense = lp::ObjSense::Minimize) {
    std::vector<std::pair<int, T>> obj;
    for (const auto& [p, w] : c.entries()) obj.emplace_back(xs.at(p.first, p.second), w);
    m.set_objective(sense, std::move(obj));
}

}  // namespace detail

/// The alpha-LP: variant Old uses per-node degree equalities, variant New
/// keeps only the aggregated sum-of-x row and the relaxed sum-of-h row.
template <typename T>
lp::Model<T> build_alpha_lp(const CostVector<T>& c, const AlphaParams& p) {
    int n = c.n();
    require(sgn(p.alpha) > 0 && p.alpha <= make_rat(n, 2), Errc::parameter,
            "alpha must lie in (0, n/2]");
    const T one = scalar_traits<T>::from_int(1);
    const T alpha = from_rat<T>(p.alpha);
    lp::Model<T> m;
    auto xs = detail::add_edge_vars(m, n);
    auto hs = detail::add_node_vars(m, n, "h");

    std::vector<std::pair<int, T>> sum_h;
    for (NodeId i = 1; i <= n; ++i) sum_h.emplace_back(hs[static_cast<std::size_t>(i)], one);

    if (p.variant == AlphaVariant::Old) {
        m.add_row("sumH", sum_h, lp::RowSense::EQ, alpha);
        // degree rows: x(delta(i)) - (n - 2 alpha) h_i = alpha
        T coeff = from_rat<T>(Rat(n) - 2 * p.alpha);
        for (NodeId i = 1; i <= n; ++i) {
            std::vector<std::pair<int, T>> row;
            for (NodeId j = 1; j <= n; ++j)
                if (j != i) row.emplace_back(xs.at(i, j), one);
            row.emplace_back(hs[static_cast<std::size_t>(i)], T{} - coeff);
            m.add_row("deg_" + std::to_string(i), std::move(row), lp::RowSense::EQ, alpha);
        }
    } else {
        m.add_row("sumH", sum_h, lp::RowSense::LE, alpha);
        std::vector<std::pair<int, T>> sum_x;
        for (NodeId i = 1; i <= n; ++i)
            for (NodeId j = i + 1; j <= n; ++j) sum_x.emplace_back(xs.at(i, j), one);
        m.add_row("sumX", std::move(sum_x), lp::RowSense::GE,
                  from_rat<T>(p.alpha * (Rat(n) - p.alpha)));
    }
    detail::add_maxcut_rows(m, n, xs, hs);
    detail::add_triangle_rows(m, c, xs);
    detail::set_cost_objective(m, c, xs);
    m.set_meta({p.variant == AlphaVariant::Old ? "alpha-old" : "alpha",
                {{"alpha", p.alpha.get_str()}, {"n", std::to_string(n)}}});
    m.seal();
    return m;
}

/// The beta-LP: alpha expressed as a convex combination of beta1 and beta2;
/// lambda is an LP variable unless fixed.
template <typename T>
lp::Model<T> build_beta_lp(const CostVector<T>& c, const BetaParams& p,
                           const std::string& tag = "beta") {
    int n = c.n();
    require(p.beta1 >= 1 && p.beta1 < p.beta2 && p.beta2 <= n - 1, Errc::parameter,
            "need 1 <= beta1 < beta2 <= n-1");
    const T one = scalar_traits<T>::from_int(1);
    lp::Model<T> m;
    auto xs = detail::add_edge_vars(m, n);
    auto hs = detail::add_node_vars(m, n, "h");

    std::vector<std::pair<int, T>> sum_x;
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) sum_x.emplace_back(xs.at(i, j), one);
    std::vector<std::pair<int, T>> sum_h;
    for (NodeId i = 1; i <= n; ++i) sum_h.emplace_back(hs[static_cast<std::size_t>(i)], one);

    Rat v1 = Rat(p.beta1) * Rat(n - p.beta1);
    Rat v2 = Rat(p.beta2) * Rat(n - p.beta2);
    std::map<std::string, std::string> params{{"beta1", std::to_string(p.beta1)},
                                              {"beta2", std::to_string(p.beta2)},
                                              {"n", std::to_string(n)}};
    if (p.lambda_mode == LambdaMode::Variable) {
        int lam = m.add_variable("lam");
        // sum x >= lam*v1 + (1-lam)*v2  <=>  sum x - (v1 - v2) lam >= v2
        sum_x.emplace_back(lam, from_rat<T>(v2 - v1));
        m.add_row("sumX", std::move(sum_x), lp::RowSense::GE, from_rat<T>(v2));
        // sum h <= lam*b1 + (1-lam)*b2  <=>  sum h + (b2 - b1) lam <= b2
        sum_h.emplace_back(lam, scalar_traits<T>::from_int(p.beta2 - p.beta1));
        m.add_row("sumH", std::move(sum_h), lp::RowSense::LE,
                  scalar_traits<T>::from_int(p.beta2));
        m.add_row("lamUB", {{lam, one}}, lp::RowSense::LE, one);
        params["lambda"] = "variable";
    } else {
        require(sgn(p.lambda) >= 0 && p.lambda <= 1, Errc::parameter, "lambda must be in [0,1]");
        m.add_row("sumX", std::move(sum_x), lp::RowSense::GE,
                  from_rat<T>(p.sum_x_rhs_of(p.lambda, n)));
        m.add_row("sumH", std::move(sum_h), lp::RowSense::LE,
                  from_rat<T>(p.alpha_of(p.lambda)));
        params["lambda"] = p.lambda.get_str();
    }
    detail::add_maxcut_rows(m, n, xs, hs);
    detail::add_triangle_rows(m, c, xs);
    detail::set_cost_objective(m, c, xs);
    m.set_meta({tag, std::move(params)});
    m.seal();
    return m;
}

/// The (beta, X)-LP: the sum-of-x row's right hand side replaced by the
/// literal X.
template <typename T>
lp::Model<T> build_beta_x_lp(const CostVector<T>& c, const BetaXParams& p) {
    require(p.beta.lambda_mode == LambdaMode::Fixed, Errc::parameter,
            "(beta, X)-LP requires a fixed lambda");
    require(sgn(p.X) >= 0, Errc::parameter, "X must be nonnegative");
    int n = c.n();
    require(p.beta.beta1 >= 1 && p.beta.beta1 < p.beta.beta2 && p.beta.beta2 <= n - 1,
            Errc::parameter, "need 1 <= beta1 < beta2 <= n-1");
    const T one = scalar_traits<T>::from_int(1);
    lp::Model<T> m;
    auto xs = detail::add_edge_vars(m, n);
    auto hs = detail::add_node_vars(m, n, "h");
    std::vector<std::pair<int, T>> sum_x;
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) sum_x.emplace_back(xs.at(i, j), one);
    m.add_row("sumX", std::move(sum_x), lp::RowSense::GE, from_rat<T>(p.X));
    std::vector<std::pair<int, T>> sum_h;
    for (NodeId i = 1; i <= n; ++i) sum_h.emplace_back(hs[static_cast<std::size_t>(i)], one);
    m.add_row("sumH", std::move(sum_h), lp::RowSense::LE,
              from_rat<T>(p.beta.alpha_of(p.beta.lambda)));
    detail::add_maxcut_rows(m, n, xs, hs);
    detail::add_triangle_rows(m, c, xs);
    detail::set_cost_objective(m, c, xs);
    m.set_meta({"beta-x",
                {{"beta1", std::to_string(p.beta.beta1)},
                 {"beta2", std::to_string(p.beta.beta2)},
                 {"lambda", p.beta.lambda.get_str()},
                 {"X", p.X.get_str()},
                 {"n", std::to_string(n)}}});
    m.seal();
    return m;
}

enum class AuxKind { Subtour, StCut, NaiveMaxCut, WLP, SmallWLP };

/// The surrounding formulations: subtour elimination (eager degree rows; cut
/// rows come from row generation), the s-t cut LP, the naive max-cut
/// relaxation, and the w-LP with its small variant.
template <typename T>
lp::Model<T> build_auxiliary_lp(AuxKind kind, const CostVector<T>& c, NodeId s = 0, NodeId t = 0) {
    int n = c.n();
    const T one = scalar_traits<T>::from_int(1);
    const T two = scalar_traits<T>::from_int(2);
    lp::Model<T> m;
    switch (kind) {
        case AuxKind::Subtour: {
            auto xs = detail::add_edge_vars(m, n);
            for (NodeId i = 1; i <= n; ++i) {
                std::vector<std::pair<int, T>> row;
                for (NodeId j = 1; j <= n; ++j)
                    if (j != i) row.emplace_back(xs.at(i, j), one);
                m.add_row("deg_" + std::to_string(i), std::move(row), lp::RowSense::EQ, two);
            }
            detail::set_cost_objective(m, c, xs);
            m.set_meta({"subtour", {{"n", std::to_string(n)}}});
            break;
        }
        case AuxKind::StCut: {
            require(s >= 1 && s <= n && t >= 1 && t <= n && s != t, Errc::parameter,
                    "StCut needs distinct s, t");
            auto xs = detail::add_edge_vars(m, n);
            auto hs = detail::add_node_vars(m, n, "h");
            for (NodeId i = 1; i <= n; ++i)
                for (NodeId j = i + 1; j <= n; ++j) {
                    m.add_row("pot_" + std::to_string(i) + "_" + std::to_string(j),
                              {{xs.at(i, j), one},
                               {hs[static_cast<std::size_t>(j)], T{} - one},
                               {hs[static_cast<std::size_t>(i)], one}},
                              lp::RowSense::GE, T{});
                    m.add_row("pot_" + std::to_string(j) + "_" + std::to_string(i),
                              {{xs.at(i, j), one},
                               {hs[static_cast<std::size_t>(i)], T{} - one},
                               {hs[static_cast<std::size_t>(j)], one}},
                              lp::RowSense::GE, T{});
                }
            m.add_row("stGap",
                      {{hs[static_cast<std::size_t>(t)], one},
                       {hs[static_cast<std::size_t>(s)], T{} - one}},
                      lp::RowSense::GE, one);
            detail::set_cost_objective(m, c, xs);
            m.set_meta({"st", {{"s", std::to_string(s)}, {"t", std::to_string(t)},
                               {"n", std::to_string(n)}}});
            break;
        }
        case AuxKind::NaiveMaxCut: {
            auto xs = detail::add_edge_vars(m, n);
            auto hs = detail::add_node_vars(m, n, "h");
            for (NodeId i = 1; i <= n; ++i)
                for (NodeId j = i + 1; j <= n; ++j) {
                    m.add_row("mc_" + std::to_string(i) + "_" + std::to_string(j),
                              {{xs.at(i, j), one},
                               {hs[static_cast<std::size_t>(i)], T{} - one},
                               {hs[static_cast<std::size_t>(j)], T{} - one}},
                              lp::RowSense::LE, T{});
                    m.add_row("mcbar_" + std::to_string(i) + "_" + std::to_string(j),
                              {{xs.at(i, j), one},
                               {hs[static_cast<std::size_t>(i)], one},
                               {hs[static_cast<std::size_t>(j)], one}},
                              lp::RowSense::LE, two);
                }
            for (NodeId i = 1; i <= n; ++i)
                m.add_row("hub_" + std::to_string(i), {{hs[static_cast<std::size_t>(i)], one}},
                          lp::RowSense::LE, one);
            detail::set_cost_objective(m, c, xs, lp::ObjSense::Maximize);
            m.set_meta({"maxcut-naive", {{"n", std::to_string(n)}}});
            break;
        }
        case AuxKind::WLP:
        case AuxKind::SmallWLP: {
            require(n >= 3, Errc::parameter, "w-LP needs n >= 3");
            auto xs = detail::add_edge_vars(m, n);
            std::vector<int> ws(static_cast<std::size_t>(n), -1);
            for (NodeId k = 1; k <= n - 1; ++k)
                ws[static_cast<std::size_t>(k)] = m.add_variable(wname(k));
            for (NodeId k = 1; k <= n; ++k)
                for (NodeId i = k + 1; i <= n; ++i)
                    for (NodeId j = i + 1; j <= n; ++j)
                        m.add_row("w_tri_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
                                      std::to_string(j),
                                  {{xs.at(i, j), one},
                                   {ws[static_cast<std::size_t>(k)], two},
                                   {xs.at(k, i), T{} - one},
                                   {xs.at(k, j), T{} - one}},
                                  lp::RowSense::LE, T{});
            if (kind == AuxKind::WLP) {
                for (NodeId k = 1; k <= n - 1; ++k)
                    for (NodeId i = k + 1; i <= n; ++i)
                        m.add_row("w_edge_" + std::to_string(k) + "_" + std::to_string(i),
                                  {{xs.at(k, i), one}, {ws[static_cast<std::size_t>(k)], T{} - one}},
                                  lp::RowSense::GE, T{});
            } else {
                m.add_row("w_edge_" + std::to_string(n - 1) + "_" + std::to_string(n),
                          {{xs.at(n - 1, n), one},
                           {ws[static_cast<std::size_t>(n - 1)], T{} - one}},
                          lp::RowSense::GE, T{});
            }
            std::vector<std::pair<int, T>> sw;
            for (NodeId k = 1; k <= n - 1; ++k)
                sw.emplace_back(ws[static_cast<std::size_t>(k)], one);
            m.add_row("sumW", std::move(sw), lp::RowSense::EQ, one);
            if (kind == AuxKind::WLP) {
                for (NodeId i = 1; i <= n; ++i)
                    for (NodeId j = i + 1; j <= n; ++j)
                        m.add_row("xub_" + std::to_string(i) + "_" + std::to_string(j),
                                  {{xs.at(i, j), one}}, lp::RowSense::LE, one);
                for (NodeId k = 1; k <= n - 1; ++k)
                    m.add_row("wub_" + std::to_string(k),
                              {{ws[static_cast<std::size_t>(k)], one}}, lp::RowSense::LE, one);
            }
            detail::set_cost_objective(m, c, xs);
            m.set_meta({kind == AuxKind::WLP ? "w" : "w-small", {{"n", std::to_string(n)}}});
            break;
        }
    }
    m.seal();
    return m;
}

/// Lazily solved subtour relaxation: cut rows x(delta(S)) >= 2 are added on
/// violation, separated by the exact global min cut oracle.
template <typename T>
std::pair<lp::Model<T>, lp::Solution<T>> solve_subtour(const CostVector<T>& c,
                                                       lp::SolveOptions opts = {}) {
    int n = c.n();
    const T one = scalar_traits<T>::from_int(1);
    const T two = scalar_traits<T>::from_int(2);
    std::vector<CutSet> cuts;
    long round_limit = 1L << std::min(n, 20);
    for (long round = 0; round <= round_limit; ++round) {
        lp::Model<T> m;
        auto xs = detail::add_edge_vars(m, n);
        for (NodeId i = 1; i <= n; ++i) {
            std::vector<std::pair<int, T>> row;
            for (NodeId j = 1; j <= n; ++j)
                if (j != i) row.emplace_back(xs.at(i, j), one);
            m.add_row("deg_" + std::to_string(i), std::move(row), lp::RowSense::EQ, two);
        }
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            std::vector<std::pair<int, T>> row;
            for (NodeId i = 1; i <= n; ++i)
                for (NodeId j = i + 1; j <= n; ++j)
                    if (cuts[k].crosses(i, j)) row.emplace_back(xs.at(i, j), one);
            m.add_row("cut_" + std::to_string(k), std::move(row), lp::RowSense::GE, two);
        }
        detail::set_cost_objective(m, c, xs);
        m.set_meta({"subtour", {{"n", std::to_string(n)}, {"cuts", std::to_string(cuts.size())}}});
        m.seal();
        auto sol = lp::solve(m, opts);
        if (sol.status != lp::SolveStatus::Optimal) return {std::move(m), std::move(sol)};
        CostVector<T> xhat(n);
        for (NodeId i = 1; i <= n; ++i)
            for (NodeId j = i + 1; j <= n; ++j) {
                const T& v = sol.primal[static_cast<std::size_t>(xs.at(i, j))];
                if (!scalar_traits<T>::is_neg(v, 0) && !scalar_traits<T>::is_zero(v, 0))
                    xhat.set(i, j, v);
            }
        auto [val, S] = global_min_cut(xhat);
        bool violated;
        if constexpr (scalar_traits<T>::exact) violated = val < two;
        else violated = val < 2.0 - opts.feas_tol * 10;
        if (!violated) return {std::move(m), std::move(sol)};
        cuts.push_back(S);
    }
    fail(Errc::solver_failure, "subtour row generation did not converge");
}

// ---------------------------------------------------------------------------
// geometric schedule and disjunctions

struct GammaSchedule {
    Rat eps;
    int n = 0;
    std::vector<int> boundaries;  // starts at 1, strictly increasing

    static GammaSchedule make(int n, const Rat& eps) {
        require(sgn(eps) > 0 && eps <= 1, Errc::parameter, "eps must lie in (0, 1]");
        require(n >= 3, Errc::parameter, "schedule needs n >= 3");
        GammaSchedule g;
        g.eps = eps;
        g.n = n;
        Rat half(n, 2);
        half.canonicalize();
        // q = ceil(log_{1+eps}(n/2)) via exact rational powers
        Rat base = Rat(1) + eps;
        int q = 0;
        Rat pow(1);
        while (pow < half) {
            pow *= base;
            ++q;
        }
        if (q == 0) q = 1;
        g.boundaries.push_back(1);
        Rat p(1);
        for (int gamma = 1; gamma <= q; ++gamma) {
            p *= base;
            int b;
            if (gamma == q) {
                b = n / 2;
            } else {
                b = static_cast<int>(mpz_class(mpz_class(p.get_num() + p.get_den() - 1) /
                                               p.get_den()).get_si());  // ceil(p)
                if (b > n / 2) b = n / 2;
            }
            int prev = g.boundaries.back();
            if (b <= prev) {
                if (gamma < q) continue;  // consecutive duplicate, drop
                b = std::min(prev + 1, n - 1);  // keep the last block nondegenerate
                if (b <= prev) continue;
            }
            g.boundaries.push_back(b);
        }
        require(g.boundaries.size() >= 2, Errc::parameter, "degenerate gamma schedule");
        return g;
    }

    /// Per-block (beta1, beta2) pairs.
    std::vector<std::pair<int, int>> blocks() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t i = 1; i < boundaries.size(); ++i)
            out.emplace_back(boundaries[i - 1], boundaries[i]);
        return out;
    }
};

enum class DisjunctionKind { AllAlpha, GammaGeometric, StCutHull };

namespace detail {

/// Lift-and-project merge: block rows become A z^k - b lam_k {sense} 0,
/// shared x coordinates aggregate the per-block copies.
template <typename T>
lp::Model<T> compose_disjunction(const CostVector<T>& c,
                                 const std::vector<lp::Model<T>>& block_models,
                                 const std::vector<std::string>& block_labels,
                                 const std::string& tag,
                                 std::map<std::string, std::string> params) {
    int n = c.n();
    const T one = scalar_traits<T>::from_int(1);
    lp::Model<T> m;
    auto shared = add_edge_vars(m, n);
    std::vector<int> lambda_cols;
    for (std::size_t k = 0; k < block_models.size(); ++k)
        lambda_cols.push_back(m.add_variable("lam_" + block_labels[k]));

    std::vector<std::vector<int>> colmap(block_models.size());
    for (std::size_t k = 0; k < block_models.size(); ++k) {
        const auto& bm = block_models[k];
        std::string prefix = "b" + block_labels[k] + ".";
        colmap[k].resize(static_cast<std::size_t>(bm.num_cols()));
        for (int col = 0; col < bm.num_cols(); ++col)
            colmap[k][static_cast<std::size_t>(col)] = m.add_variable(prefix + bm.var_name(col));
        for (const auto& row : bm.rows()) {
            std::vector<std::pair<int, T>> coeffs;
            for (const auto& [col, v] : row.coeffs)
                coeffs.emplace_back(colmap[k][static_cast<std::size_t>(col)], v);
            if (!scalar_traits<T>::is_zero(row.rhs, 0))
                coeffs.emplace_back(lambda_cols[k], T{} - row.rhs);
            m.add_row(prefix + row.name, std::move(coeffs), row.sense, T{});
        }
    }
    // z = sum_k z^k on the shared edge coordinates
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            std::vector<std::pair<int, T>> row{{shared.at(i, j), one}};
            for (std::size_t k = 0; k < block_models.size(); ++k)
                row.emplace_back(colmap[k][static_cast<std::size_t>(
                                     block_models[k].var_index(xname(i, j)))],
                                 T{} - one);
            m.add_row("agg_" + std::to_string(i) + "_" + std::to_string(j), std::move(row),
                      lp::RowSense::EQ, T{});
        }
    std::vector<std::pair<int, T>> conv;
    for (int col : lambda_cols) conv.emplace_back(col, one);
    m.add_row("convexity", std::move(conv), lp::RowSense::EQ, one);
    set_cost_objective(m, c, shared);
    params["blocks"] = std::to_string(block_models.size());
    params["n"] = std::to_string(n);
    m.set_meta({tag, std::move(params)});
    m.seal();
    return m;
}

}  // namespace detail

template <typename T>
lp::Model<T> build_disjunction(DisjunctionKind kind, const CostVector<T>& c,
                               const Rat& eps = Rat(1)) {
    int n = c.n();
    require(n >= 3, Errc::parameter, "disjunction needs n >= 3");
    std::vector<lp::Model<T>> blocks;
    std::vector<std::string> labels;
    switch (kind) {
        case DisjunctionKind::AllAlpha:
            for (int a = 1; a <= n / 2; ++a) {
                blocks.push_back(build_alpha_lp(c, AlphaParams{Rat(a), AlphaVariant::New}));
                labels.push_back(std::to_string(a));
            }
            return detail::compose_disjunction(c, blocks, labels, "disj-alpha", {});
        case DisjunctionKind::GammaGeometric: {
            auto sched = GammaSchedule::make(n, eps);
            auto bs = sched.blocks();
            for (std::size_t g = 0; g < bs.size(); ++g) {
                BetaParams bp;
                bp.beta1 = bs[g].first;
                bp.beta2 = bs[g].second;
                bp.lambda_mode = LambdaMode::Variable;
                blocks.push_back(build_beta_lp(c, bp, "gamma"));
                labels.push_back(std::to_string(g + 1));
            }
            return detail::compose_disjunction(c, blocks, labels, "disj-gamma",
                                               {{"eps", eps.get_str()}});
        }
        case DisjunctionKind::StCutHull:
            for (NodeId t = 1; t <= n - 1; ++t) {
                blocks.push_back(build_auxiliary_lp(AuxKind::StCut, c, n, t));
                labels.push_back(std::to_string(t));
            }
            return detail::compose_disjunction(c, blocks, labels, "st-hull", {});
    }
    fail(Errc::parameter, "unknown disjunction kind");
}

// ---------------------------------------------------------------------------
// gamma -> alpha scaling map

template <typename T>
struct ScaledAlphaSolution {
    CostVector<T> x;
    std::vector<T> h;  // 1-based at v, index 0 unused
    Rat alpha;
    Rat factor;
};

/// Theorem: a gamma-LP solution scaled by 9/8 (or n/2H when H > 4n/9) is
/// feasible for the new alpha-LP with alpha = 9H/8 (resp. n/2).
template <typename T>
ScaledAlphaSolution<T> scale_gamma_to_alpha(const lp::Model<T>& gamma_model,
                                            const lp::Solution<T>& sol, int n) {
    require(sol.status == lp::SolveStatus::Optimal, Errc::parameter,
            "need an optimal gamma-LP solution");
    Rat H;
    if constexpr (scalar_traits<T>::exact) {
        for (NodeId v = 1; v <= n; ++v) H += sol.value_of(gamma_model, hname(v));
    } else {
        double acc = 0;
        for (NodeId v = 1; v <= n; ++v) acc += sol.value_of(gamma_model, hname(v));
        H = Rat(acc);  // exact binary fraction of the float sum
        H.canonicalize();
    }
    require(sgn(H) > 0, Errc::degenerate_solution, "all-zero gamma solution cannot be scaled");

    ScaledAlphaSolution<T> out;
    if (H <= make_rat(4 * n, 9)) {
        out.factor = Rat(9, 8);
        out.alpha = out.factor * H;
    } else {
        out.factor = make_rat(n, 2) / H;
        out.alpha = make_rat(n, 2);
    }
    out.alpha.canonicalize();
    out.factor.canonicalize();
    const T f = from_rat<T>(out.factor);
    out.x = CostVector<T>(n);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            T v = sol.value_of(gamma_model, xname(i, j)) * f;
            if (!scalar_traits<T>::is_neg(v, 0) && !scalar_traits<T>::is_zero(v, 0))
                out.x.set(i, j, v);
        }
    out.h.assign(static_cast<std::size_t>(n) + 1, T{});
    for (NodeId v = 1; v <= n; ++v)
        out.h[static_cast<std::size_t>(v)] = sol.value_of(gamma_model, hname(v)) * f;
    return out;
}

/// Row names of the new alpha-LP (built on c's support) violated by (x, h).
template <typename T>
std::vector<std::string> alpha_feasibility_violations(const CostVector<T>& c, const Rat& alpha,
                                                      const CostVector<T>& x,
                                                      const std::vector<T>& h, double tol = 1e-9) {
    auto m = build_alpha_lp(c, AlphaParams{alpha, AlphaVariant::New});
    std::vector<T> z(static_cast<std::size_t>(m.num_cols()), T{});
    int n = c.n();
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j)
            z[static_cast<std::size_t>(m.var_index(xname(i, j)))] = x.get(i, j);
    for (NodeId v = 1; v <= n; ++v)
        z[static_cast<std::size_t>(m.var_index(hname(v)))] = h[static_cast<std::size_t>(v)];
    return m.violated_rows(z, tol);
}

}  // namespace cutpoly
