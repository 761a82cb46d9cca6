#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cutpoly/formulation.hpp"
#include "cutpoly/lp/dual.hpp"
#include "cutpoly/oracles.hpp"
#include "cutpoly/splitoff.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

/// Visits every Hamilton cycle of 1..n exactly once (reversals identified):
/// node 1 leads and the second node is smaller than the last.
template <typename F>
void for_each_ham_cycle(int n, F&& f) {
    require(n >= 3, Errc::parameter, "cycles need n >= 3");
    std::vector<NodeId> rest;
    for (NodeId v = 2; v <= n; ++v) rest.push_back(v);
    do {
        if (rest.front() > rest.back()) continue;
        std::vector<NodeId> ord{1};
        ord.insert(ord.end(), rest.begin(), rest.end());
        f(HamCycle(std::move(ord)));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

// ---------------------------------------------------------------------------
// TSP cutting planes

struct TspCut {
    CostVector<Rat> coeffs;   // x*: coeffs . c >= rhs is valid for all tours
    Rat rhs;                  // eta
    CostVector<Rat> witness;  // c* violating the inequality
    FormulationSpec provenance;
    bool validity_checked = false;  // brute-forced over all tours (n <= 9)
};

inline constexpr int kTourEnumerationLimit = 9;

/// Packages (x*, eta, c*) as a TSP inequality. Validity over every tour is
/// brute-forced for n <= 9; a failure means the producing formulation lacks
/// the Hamilton cycle property, which is a caller bug.
inline TspCut generate_tsp_cut(const CostVector<Rat>& c_star, const CostVector<Rat>& x_star,
                               const FormulationSpec& provenance, const Rat& eta = Rat(2)) {
    require(dot(c_star, x_star) < eta, Errc::parameter,
            "witness does not violate the inequality");
    TspCut cut{x_star, eta, c_star, provenance, false};
    int n = x_star.n();
    if (n <= kTourEnumerationLimit) {
        for_each_ham_cycle(n, [&](const HamCycle& h) {
            auto inc = incidence_of_cycle<Rat>(h);
            require(dot(inc, x_star) >= eta, Errc::invalid_cut,
                    "a Hamilton cycle violates the generated inequality");
        });
        cut.validity_checked = true;
    }
    return cut;
}

/// Re-checks both TspCut invariants; throws on failure.
inline void verify_tsp_cut(const TspCut& cut) {
    require(dot(cut.witness, cut.coeffs) < cut.rhs, Errc::invalid_cut,
            "witness violation is not strict");
    int n = cut.coeffs.n();
    require(n <= kTourEnumerationLimit, Errc::size_limit,
            "tour enumeration limited to n <= " + std::to_string(kTourEnumerationLimit));
    for_each_ham_cycle(n, [&](const HamCycle& h) {
        require(dot(incidence_of_cycle<Rat>(h), cut.coeffs) >= cut.rhs, Errc::invalid_cut,
                "a Hamilton cycle violates the inequality");
    });
}

// ---------------------------------------------------------------------------
// the TSP relaxation built from a Hamilton-property LP (duality form)

template <typename T>
struct TspRelaxation {
    lp::Model<T> model;
    FormulationSpec source;
    Rat eta;
    int n = 0;
};

namespace detail {

/// Common construction: variables (y per canonical row of the source, c per
/// edge); rows y.A <= t columnwise (t = c on edge columns, 0 elsewhere),
/// y.b >= eta, and degree rows c(delta(i)) = 2.
template <typename T>
TspRelaxation<T> tsp_relaxation_from_canonical(const CostVector<T>& c_obj,
                                               const lp::Model<T>& base,
                                               const FormulationSpec& source, const Rat& eta) {
    int n = c_obj.n();
    auto cf = lp::canonicalize(base);
    const T one = scalar_traits<T>::from_int(1);
    lp::Model<T> m;
    std::vector<int> yvars;
    for (int k = 0; k < cf.num_rows(); ++k)
        yvars.push_back(m.add_variable("y_" + std::to_string(k)));
    PairVars<T> cvars = add_edge_vars(m, n, "c.");

    // column-wise dual feasibility rows
    for (int col = 0; col < base.num_cols(); ++col) {
        std::vector<std::pair<int, T>> row;
        for (int k = 0; k < cf.num_rows(); ++k)
            for (const auto& [cc, v] : cf.rows[static_cast<std::size_t>(k)])
                if (cc == col) row.emplace_back(yvars[static_cast<std::size_t>(k)], v);
        const std::string& name = base.var_name(col);
        bool is_edge = name.rfind("x_", 0) == 0;
        if (is_edge) {
            auto us = name.find('_', 2);
            NodeId i = std::stoi(name.substr(2, us - 2));
            NodeId j = std::stoi(name.substr(us + 1));
            row.emplace_back(cvars.at(i, j), T{} - one);
        }
        m.add_row("dualfeas_" + name, std::move(row), lp::RowSense::LE, T{});
    }
    std::vector<std::pair<int, T>> yb;
    for (int k = 0; k < cf.num_rows(); ++k)
        if (!scalar_traits<T>::is_zero(cf.rhs[static_cast<std::size_t>(k)], 0))
            yb.emplace_back(yvars[static_cast<std::size_t>(k)], cf.rhs[static_cast<std::size_t>(k)]);
    m.add_row("ydotb", std::move(yb), lp::RowSense::GE, from_rat<T>(eta));
    for (NodeId i = 1; i <= n; ++i) {
        std::vector<std::pair<int, T>> row;
        for (NodeId j = 1; j <= n; ++j)
            if (j != i) row.emplace_back(cvars.at(i, j), one);
        m.add_row("deg_" + std::to_string(i), std::move(row), lp::RowSense::EQ,
                  scalar_traits<T>::from_int(2));
    }
    std::vector<std::pair<int, T>> obj;
    for (const auto& [p, w] : c_obj.entries()) obj.emplace_back(cvars.at(p.first, p.second), w);
    m.set_objective(lp::ObjSense::Minimize, std::move(obj));
    m.set_meta({"tsp-" + source.tag, {{"eta", eta.get_str()}, {"n", std::to_string(n)}}});
    m.seal();
    return TspRelaxation<T>{std::move(m), source, eta, n};
}

}  // namespace detail

/// alpha source: the alpha-LP on the complete support (triangle rows for all
/// triples, since the TSP cost is a variable here and has no fixed support).
template <typename T>
TspRelaxation<T> build_tsp_relaxation_alpha(const CostVector<T>& c_obj, const Rat& alpha) {
    int n = c_obj.n();
    CostVector<T> complete(n);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) complete.set(i, j, scalar_traits<T>::from_int(1));
    auto base = build_alpha_lp(complete, AlphaParams{alpha, AlphaVariant::New});
    FormulationSpec src;
    src.tag = "alpha";
    src.alpha = alpha;
    return detail::tsp_relaxation_from_canonical(c_obj, base, src, Rat(2));
}

/// General source: any built formulation plus its Hamilton constant.
template <typename T>
TspRelaxation<T> build_tsp_relaxation_general(const CostVector<T>& c_obj,
                                              const lp::Model<T>& base,
                                              const FormulationSpec& source, const Rat& eta) {
    require(sgn(eta) >= 0, Errc::parameter, "eta must be nonnegative");
    return detail::tsp_relaxation_from_canonical(c_obj, base, source, eta);
}

/// True iff no y >= 0 makes (y, c_star) feasible for the relaxation, proved
/// by a weak-duality witness: a source-feasible x* with c_star . x* < eta.
template <typename T>
bool check_weak_duality_exclusion(const CostVector<T>& c_star, const TspRelaxation<T>& relax,
                                  lp::SolveOptions opts = {}) {
    auto sol = solve_formulation(relax.source, c_star, opts);
    require(sol.status == lp::SolveStatus::Optimal, Errc::solver_failure,
            "source formulation did not solve");
    if constexpr (scalar_traits<T>::exact) return sol.objective < relax.eta;
    else return sol.objective < to_double(relax.eta) - opts.feas_tol;
}

// ---------------------------------------------------------------------------
// MST-based cut decompositions

template <typename T>
struct CutDecomposition {
    enum class Mode { Equals, Dominates };
    Mode mode = Mode::Equals;
    std::vector<std::pair<CutSet, T>> terms;

    CostVector<T> combination(int n) const {
        CostVector<T> out(n);
        for (const auto& [s, z] : terms)
            for (NodeId i = 1; i <= n; ++i)
                for (NodeId j = i + 1; j <= n; ++j)
                    if (s.crosses(i, j)) out.add(i, j, z);
        return out;
    }

    T total_weight() const {
        T t{};
        for (const auto& [s, z] : terms) t += z;
        return t;
    }
};

template <typename T>
struct MstCertificate {
    enum class Kind { Exact, Dominates, Inconclusive };
    Kind kind = Kind::Inconclusive;
    CutDecomposition<T> decomposition;
    T mst_cost{};
    std::string diagnostic;
    bool premise_checked = false;    // Hamilton property of x brute-forced (n <= 8)
    bool premise_holds = false;
    bool tolerance_qualified = false;  // float backend: comparisons at 1e-9
};

inline constexpr int kPackingLimit = 10;

/// Certificate that x (a metric with the Hamilton cycle property) equals or
/// dominates a convex combination of cuts, decided by the MST cost: exactly 1
/// gives an exact decomposition along the tree, >= 2 a dominating one via the
/// cut-packing dual; anything strictly between is inconclusive.
template <typename T>
MstCertificate<T> mst_certificate(const CostVector<T>& x, lp::SolveOptions opts = {}) {
    int n = x.n();
    MstCertificate<T> out;
    out.tolerance_qualified = !scalar_traits<T>::exact;
    auto [tree, cost] = mst(x);
    out.mst_cost = cost;

    if (n <= 8) {
        out.premise_checked = true;
        out.premise_holds = true;
        for (NodeId i = 1; i <= n && out.premise_holds; ++i)
            for (NodeId j = 1; j <= n && out.premise_holds; ++j)
                for (NodeId k = 1; k <= n && out.premise_holds; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (scalar_traits<T>::is_neg(x.get(i, k) + x.get(k, j) - x.get(i, j),
                                                 opts.feas_tol))
                        out.premise_holds = false;
                }
        if (out.premise_holds && n >= 3)
            for_each_ham_cycle(n, [&](const HamCycle& h) {
                if (scalar_traits<T>::is_neg(dot(incidence_of_cycle<T>(h), x) -
                                                 scalar_traits<T>::from_int(2),
                                             opts.feas_tol))
                    out.premise_holds = false;
            });
    }

    const T one = scalar_traits<T>::from_int(1);
    const T two = scalar_traits<T>::from_int(2);
    bool cost_is_one;
    if constexpr (scalar_traits<T>::exact) cost_is_one = cost == one;
    else cost_is_one = std::fabs(cost - 1.0) <= opts.feas_tol;

    if (cost_is_one) {
        // terms (S_e, x_e) over tree edges; S_e = component of T - e
        out.decomposition.mode = CutDecomposition<T>::Mode::Equals;
        for (const auto& e : tree) {
            if (scalar_traits<T>::is_zero(x.get(e.first, e.second), 0)) continue;
            // nodes reachable from e.first without crossing e
            std::vector<bool> side(static_cast<std::size_t>(n) + 1, false);
            side[static_cast<std::size_t>(e.first)] = true;
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& f : tree) {
                    if (f == e) continue;
                    bool a = side[static_cast<std::size_t>(f.first)];
                    bool b = side[static_cast<std::size_t>(f.second)];
                    if (a != b) {
                        side[static_cast<std::size_t>(f.first)] = true;
                        side[static_cast<std::size_t>(f.second)] = true;
                        grew = true;
                    }
                }
            }
            std::vector<NodeId> members;
            for (NodeId v = 1; v <= n; ++v)
                if (side[static_cast<std::size_t>(v)]) members.push_back(v);
            out.decomposition.terms.emplace_back(CutSet(n, std::move(members)),
                                                 x.get(e.first, e.second));
        }
        auto recon = out.decomposition.combination(n);
        bool equal = true;
        for (NodeId i = 1; i <= n && equal; ++i)
            for (NodeId j = i + 1; j <= n && equal; ++j)
                if (!scalar_traits<T>::is_zero(recon.get(i, j) - x.get(i, j), opts.feas_tol))
                    equal = false;
        if (!equal) {
            out.kind = MstCertificate<T>::Kind::Inconclusive;
            out.decomposition.terms.clear();
            out.diagnostic = "tree decomposition does not reproduce x (premise violated)";
            return out;
        }
        out.kind = MstCertificate<T>::Kind::Exact;
        return out;
    }

    bool cost_ge_two;
    if constexpr (scalar_traits<T>::exact) cost_ge_two = cost >= two;
    else cost_ge_two = cost >= 2.0 - opts.feas_tol;

    if (cost_ge_two) {
        require(n <= kPackingLimit, Errc::size_limit,
                "cut packing enumerates all cuts; limited to n <= " +
                    std::to_string(kPackingLimit));
        auto cuts = enumerate_cuts(n);
        lp::Model<T> m;
        for (std::size_t k = 0; k < cuts.size(); ++k)
            m.add_variable("z_" + std::to_string(k));
        for (NodeId i = 1; i <= n; ++i)
            for (NodeId j = i + 1; j <= n; ++j) {
                std::vector<std::pair<int, T>> row;
                for (std::size_t k = 0; k < cuts.size(); ++k)
                    if (cuts[k].crosses(i, j)) row.emplace_back(static_cast<int>(k), one);
                m.add_row("pack_" + std::to_string(i) + "_" + std::to_string(j), std::move(row),
                          lp::RowSense::LE, x.get(i, j));
            }
        std::vector<std::pair<int, T>> obj;
        for (std::size_t k = 0; k < cuts.size(); ++k)
            obj.emplace_back(static_cast<int>(k), one);
        m.set_objective(lp::ObjSense::Maximize, std::move(obj));
        m.seal();
        auto sol = lp::solve(m, opts);
        require(sol.status == lp::SolveStatus::Optimal, Errc::internal_consistency,
                "cut packing LP must solve");
        if (scalar_traits<T>::is_neg(sol.objective - one, opts.feas_tol)) {
            out.kind = MstCertificate<T>::Kind::Inconclusive;
            out.diagnostic = "cut packing optimum below 1 (premise violated)";
            return out;
        }
        out.decomposition.mode = CutDecomposition<T>::Mode::Dominates;
        for (std::size_t k = 0; k < cuts.size(); ++k)
            if (!scalar_traits<T>::is_zero(sol.primal[k], 0) &&
                !scalar_traits<T>::is_neg(sol.primal[k], 0))
                out.decomposition.terms.emplace_back(cuts[k], sol.primal[k]);
        out.kind = MstCertificate<T>::Kind::Dominates;
        return out;
    }

    out.kind = MstCertificate<T>::Kind::Inconclusive;
    out.diagnostic = "MST cost strictly between 1 and 2";
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json spec_to_json(const FormulationSpec& s) {
    nlohmann::ordered_json j;
    j["formulation"] = s.tag;
    if (sgn(s.alpha) != 0) j["alpha"] = s.alpha.get_str();
    if (s.beta1 > 0) j["beta1"] = s.beta1;
    if (s.beta2 > 0) j["beta2"] = s.beta2;
    if (s.lambda) j["lambda"] = s.lambda->get_str();
    if (s.X) j["X"] = s.X->get_str();
    if (s.tag == "disj-gamma") j["eps"] = s.eps.get_str();
    if (s.s > 0) j["s"] = s.s;
    if (s.t > 0) j["t"] = s.t;
    return j;
}

inline nlohmann::ordered_json tsp_cut_to_json(const TspCut& cut) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json coeffs;
    for (const auto& [p, v] : cut.coeffs.entries())
        coeffs[std::to_string(p.first) + "," + std::to_string(p.second)] = v.get_str();
    j["n"] = cut.coeffs.n();
    j["coeffs"] = std::move(coeffs);
    j["rhs"] = cut.rhs.get_str();
    j["witness"] = cost_vector_to_json(cut.witness);
    j["provenance"] = spec_to_json(cut.provenance);
    j["validity_checked"] = cut.validity_checked;
    return j;
}

inline TspCut tsp_cut_from_json(const nlohmann::ordered_json& j) {
    TspCut cut;
    int n = j.at("n").get<int>();
    cut.coeffs = CostVector<Rat>(n);
    for (const auto& [key, v] : j.at("coeffs").items()) {
        auto comma = key.find(',');
        cut.coeffs.set(std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1)),
                       parse_rat(v.get<std::string>()));
    }
    cut.rhs = parse_rat(j.at("rhs").get<std::string>());
    cut.witness = cost_vector_from_json(j.at("witness"));
    cut.provenance.tag = j.at("provenance").value("formulation", "");
    if (j.at("provenance").contains("alpha"))
        cut.provenance.alpha = parse_rat(j.at("provenance").at("alpha").get<std::string>());
    cut.validity_checked = j.value("validity_checked", false);
    return cut;
}

}  // namespace cutpoly
