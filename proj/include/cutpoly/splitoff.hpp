#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cutpoly/formulation.hpp"
#include "cutpoly/oracles.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

/// Splitting off is done in exact rationals only: the invariant it must
/// preserve is an equality of min-cut values, which floats cannot certify.
/// A step with i == j is the parallel-pair (loop-discarding) move: it removes
/// 2*eps from the edge {k, i}. It is required when a node's excess degree
/// sits entirely on one incident edge.
struct SplitStep {
    NodeId k = 0, i = 0, j = 0;
    Rat eps;

    bool is_shed() const { return i == j; }
};

struct SplitTrace {
    std::vector<SplitStep> steps;
    CostVector<Rat> initial;
    CostVector<Rat> final;
    Rat mincut;  // constant along the trace
};

/// One splitting-off move: c_ik -= eps, c_jk -= eps, c_ij += eps. Pure.
inline CostVector<Rat> split_step(const CostVector<Rat>& c, NodeId k, NodeId i, NodeId j,
                                  const Rat& eps) {
    require(k != i && k != j && i != j, Errc::parameter, "split nodes must be distinct");
    require(sgn(eps) >= 0, Errc::parameter, "eps must be nonnegative");
    require(eps <= c.get(i, k) && eps <= c.get(j, k), Errc::negativity,
            "eps exceeds an incident weight");
    CostVector<Rat> out = c;
    out.set(i, k, c.get(i, k) - eps);
    out.set(j, k, c.get(j, k) - eps);
    out.add(i, j, eps);
    return out;
}

/// The parallel-pair move: split two eps-copies of {k, i} into a loop at i,
/// i.e. remove 2*eps from that edge. Pure.
inline CostVector<Rat> shed_step(const CostVector<Rat>& c, NodeId k, NodeId i, const Rat& eps) {
    require(k != i, Errc::parameter, "shed nodes must be distinct");
    require(sgn(eps) >= 0, Errc::parameter, "eps must be nonnegative");
    require(2 * eps <= c.get(i, k), Errc::negativity, "eps exceeds half the edge weight");
    CostVector<Rat> out = c;
    out.set(i, k, c.get(i, k) - 2 * eps);
    return out;
}

inline CostVector<Rat> apply_step(const CostVector<Rat>& c, const SplitStep& s) {
    return s.is_shed() ? shed_step(c, s.k, s.i, s.eps) : split_step(c, s.k, s.i, s.j, s.eps);
}

namespace detail {

/// Common breakpoint computation: every cut's weight is linear in eps with
/// slope 0 or -2, so mincut(eps) = min(M0, M1 - 2 eps); two exact evaluations
/// pin the largest safe eps down, and a third verifies it.
template <typename Apply>
Rat max_safe_eps_generic(const CostVector<Rat>& c, const Rat& cap, Apply&& apply) {
    if (sgn(cap) == 0) return Rat(0);
    Rat g = global_min_cut(c).first;
    Rat at_cap = global_min_cut(apply(cap)).first;
    Rat eps;
    if (at_cap == g) {
        eps = cap;
    } else {
        Rat m1 = at_cap + 2 * cap;  // the tightest cut that moves
        if (m1 == g) return Rat(0);
        eps = (m1 - g) / 2;
        if (eps > cap) eps = cap;
        eps.canonicalize();
    }
    require(global_min_cut(apply(eps)).first == g, Errc::internal_consistency,
            "max_safe_eps verification failed");
    return eps;
}

}  // namespace detail

/// Largest eps in [0, min(c_ik, c_jk)] that keeps the global min cut value
/// unchanged (only cuts separating {i,j} from k move, by -2 eps).
inline Rat max_safe_eps(const CostVector<Rat>& c, NodeId k, NodeId i, NodeId j) {
    require(k != i && k != j && i != j, Errc::parameter, "split nodes must be distinct");
    Rat cap = std::min(c.get(i, k), c.get(j, k));
    return detail::max_safe_eps_generic(c, cap,
                                        [&](const Rat& e) { return split_step(c, k, i, j, e); });
}

/// Largest eps for the parallel-pair move at edge {k, i} (cuts separating k
/// from i move by -2 eps).
inline Rat max_safe_shed_eps(const CostVector<Rat>& c, NodeId k, NodeId i) {
    require(k != i, Errc::parameter, "shed nodes must be distinct");
    Rat cap = c.get(i, k) / 2;
    cap.canonicalize();
    return detail::max_safe_eps_generic(c, cap,
                                        [&](const Rat& e) { return shed_step(c, k, i, e); });
}

/// Lovasz reduction: split off at nodes of fractional degree > 2 until every
/// node has degree exactly 2. Requires min cut exactly 2 (callers normalize),
/// which also forces degree >= 2 everywhere. Deterministic: highest-degree
/// node first (ties by index), neighbor pairs in lexicographic order.
inline SplitTrace lovasz_reduce(const CostVector<Rat>& c) {
    const Rat two(2);
    int n = c.n();
    require(global_min_cut(c).first == two, Errc::parameter,
            "lovasz_reduce requires the min cut to be exactly 2");
    for (NodeId v = 1; v <= n; ++v)
        require(c.degree(v) >= two, Errc::parameter, "every node needs degree >= 2");

    SplitTrace trace;
    trace.initial = c;
    trace.mincut = two;
    CostVector<Rat> cur = c;
    long step_guard = 16L * n * n * n + 256;
    while (true) {
        NodeId k = -1;
        Rat kdeg;
        for (NodeId v = 1; v <= n; ++v) {
            Rat d = cur.degree(v);
            if (d > two && (k < 0 || d > kdeg)) {
                k = v;
                kdeg = d;
            }
        }
        if (k < 0) break;
        while (true) {
            Rat deg = cur.degree(k);
            if (deg <= two) break;
            Rat room = (deg - two) / 2;
            room.canonicalize();
            std::vector<NodeId> nbr;
            for (NodeId v = 1; v <= n; ++v)
                if (v != k && sgn(cur.get(k, v)) > 0) nbr.push_back(v);
            bool moved = false;
            for (std::size_t a = 0; a < nbr.size() && !moved; ++a)
                for (std::size_t b = a + 1; b < nbr.size() && !moved; ++b) {
                    Rat eps = max_safe_eps(cur, k, nbr[a], nbr[b]);
                    if (eps > room) eps = room;
                    if (sgn(eps) <= 0) continue;
                    cur = split_step(cur, k, nbr[a], nbr[b], eps);
                    trace.steps.push_back({k, nbr[a], nbr[b], eps});
                    moved = true;
                }
            // parallel-pair fallback: sheds excess stuck on a single edge
            for (std::size_t a = 0; a < nbr.size() && !moved; ++a) {
                Rat eps = max_safe_shed_eps(cur, k, nbr[a]);
                if (eps > room) eps = room;
                if (sgn(eps) <= 0) continue;
                cur = shed_step(cur, k, nbr[a], eps);
                trace.steps.push_back({k, nbr[a], nbr[a], eps});
                moved = true;
            }
            require(moved, Errc::reduction_stuck,
                    "no admissible splitting pair at node " + std::to_string(k));
            require(--step_guard > 0, Errc::reduction_stuck, "splitting-off did not converge");
        }
    }
    trace.final = cur;
    return trace;
}

/// Replays a trace from its initial vector, checking nonnegativity and the
/// preserved min cut at every step; returns the final vector.
inline CostVector<Rat> replay_trace(const SplitTrace& trace) {
    CostVector<Rat> cur = trace.initial;
    Rat g = global_min_cut(cur).first;
    require(g == trace.mincut, Errc::internal_consistency, "trace min cut mismatch");
    for (const auto& s : trace.steps) {
        cur = apply_step(cur, s);
        require(global_min_cut(cur).first == g, Errc::internal_consistency,
                "trace step changed the min cut");
    }
    require(cur == trace.final, Errc::internal_consistency, "trace final vector mismatch");
    return cur;
}

// ---------------------------------------------------------------------------
// the win-win pipeline

struct Certificate {
    enum class Kind { BoundHolds, Violated };
    Kind kind = Kind::BoundHolds;
    FormulationSpec spec;
    CostVector<Rat> normalized_c;  // c' scaled to min cut exactly 2
    Rat lp_value;
    // set when kind == Violated:
    CostVector<Rat> x_star;
    SplitTrace trace;
    CostVector<Rat> c_star;
};

template <typename T>
CostVector<T> extract_x(const lp::Model<T>& m, const lp::Solution<T>& sol, int n) {
    CostVector<T> x(n);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) {
            T v = sol.value_of(m, xname(i, j));
            if (scalar_traits<T>::is_neg(v, 0) || scalar_traits<T>::is_zero(v, 0)) continue;
            x.set(i, j, v);
        }
    return x;
}

/// The constructive half of the win-win theorem. Normalize c' to min cut 2,
/// price it with the formulation; a value below 2 yields a subtour point
/// c_star with c_star . x_star < 2 via splitting off, with the objective
/// checked to be nonincreasing along the trace.
inline Certificate certify_non_exactness(const CostVector<Rat>& c_prime,
                                         const FormulationSpec& spec,
                                         lp::SolveOptions opts = {}) {
    require(has_support_triangles(spec.tag), Errc::parameter,
            "pipeline requires a formulation with support triangle rows");
    require(default_eta(spec.tag) == Rat(2), Errc::parameter,
            "pipeline requires a formulation with Hamilton constant 2");
    const Rat two(2);
    auto [g, gs] = global_min_cut(c_prime);
    require(sgn(g) > 0, Errc::parameter, "min cut is 0; cannot normalize");
    Certificate cert;
    cert.spec = spec;
    Rat factor = two / g;
    factor.canonicalize();
    cert.normalized_c = c_prime.scaled(factor);

    auto model = build_formulation(spec, cert.normalized_c);
    auto sol = lp::solve(model, opts);
    require(sol.status == lp::SolveStatus::Optimal, Errc::solver_failure,
            "formulation did not solve");
    cert.lp_value = sol.objective;
    if (sol.objective >= two) {
        cert.kind = Certificate::Kind::BoundHolds;
        return cert;
    }

    cert.kind = Certificate::Kind::Violated;
    cert.x_star = extract_x(model, sol, c_prime.n());
    cert.trace = lovasz_reduce(cert.normalized_c);
    // triangle rows make the priced objective nonincreasing along the trace
    Rat prev = dot(cert.normalized_c, cert.x_star);
    CostVector<Rat> cur = cert.normalized_c;
    for (const auto& s : cert.trace.steps) {
        cur = apply_step(cur, s);
        Rat val = dot(cur, cert.x_star);
        require(val <= prev, Errc::pipeline_inconsistency,
                "objective increased along the split trace");
        prev = val;
    }
    cert.c_star = cert.trace.final;
    for (NodeId v = 1; v <= cert.c_star.n(); ++v)
        require(cert.c_star.degree(v) == two, Errc::internal_consistency,
                "final vector has a node of degree != 2");
    require(global_min_cut(cert.c_star).first == two, Errc::internal_consistency,
            "final vector lost the min cut value");
    require(dot(cert.c_star, cert.x_star) < two, Errc::internal_consistency,
            "certificate lost its violation");
    return cert;
}

// ---------------------------------------------------------------------------
// JSON (replayable traces)

inline nlohmann::ordered_json cost_vector_to_json(const CostVector<Rat>& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [p, w] : c.entries())
        edges.push_back({{"i", p.first}, {"j", p.second}, {"w", w.get_str()}});
    j["edges"] = std::move(edges);
    return j;
}

inline CostVector<Rat> cost_vector_from_json(const nlohmann::ordered_json& j) {
    CostVector<Rat> c(j.at("n").get<int>());
    for (const auto& e : j.at("edges"))
        c.add(e.at("i").get<int>(), e.at("j").get<int>(), parse_rat(e.at("w").get<std::string>()));
    return c;
}

inline nlohmann::ordered_json trace_to_json(const SplitTrace& t) {
    nlohmann::ordered_json j;
    j["mincut"] = t.mincut.get_str();
    j["initial"] = cost_vector_to_json(t.initial);
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"k", s.k}, {"i", s.i}, {"j", s.j}, {"eps", s.eps.get_str()}});
    j["steps"] = std::move(steps);
    j["final"] = cost_vector_to_json(t.final);
    return j;
}

inline SplitTrace trace_from_json(const nlohmann::ordered_json& j) {
    SplitTrace t;
    t.mincut = parse_rat(j.at("mincut").get<std::string>());
    t.initial = cost_vector_from_json(j.at("initial"));
    t.final = cost_vector_from_json(j.at("final"));
    for (const auto& s : j.at("steps"))
        t.steps.push_back({s.at("k").get<int>(), s.at("i").get<int>(), s.at("j").get<int>(),
                           parse_rat(s.at("eps").get<std::string>())});
    return t;
}

}  // namespace cutpoly
