#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "cutpoly/errors.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/lp/simplex.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

inline constexpr int kEnumerationLimit = 16;

/// Yields each nontrivial bipartition exactly once; the listed side never
/// contains node n.
template <typename F>
void for_each_cut(int n, F&& f) {
    require(n >= 2, Errc::instance_too_small, "need n >= 2");
    require(n <= kEnumerationLimit, Errc::size_limit,
            "cut enumeration limited to n <= " + std::to_string(kEnumerationLimit));
    std::uint32_t top = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < top; ++mask) {
        std::vector<NodeId> side;
        for (int v = 1; v < n; ++v)
            if (mask & (1u << (v - 1))) side.push_back(v);
        f(CutSet(n, std::move(side)));
    }
}

inline std::vector<CutSet> enumerate_cuts(int n) {
    std::vector<CutSet> out;
    for_each_cut(n, [&](CutSet s) { out.push_back(std::move(s)); });
    return out;
}

/// Brute-force global min cut; the independent oracle behind Stoer-Wagner.
template <typename T>
std::pair<T, CutSet> min_cut_by_enumeration(const CostVector<T>& c) {
    require(c.n() >= 2, Errc::instance_too_small, "min cut needs n >= 2");
    require(c.n() <= kEnumerationLimit, Errc::size_limit, "enumeration oracle limit exceeded");
    bool first = true;
    T best{};
    CutSet best_set;
    for_each_cut(c.n(), [&](const CutSet& s) {
        T w = cut_weight(c, s);
        if (first || w < best) {
            best = w;
            best_set = s;
            first = false;
        }
    });
    return {best, best_set};
}

/// Exact global min cut by Stoer-Wagner contraction (deterministic: maximum
/// adjacency order with lowest-index tie break).
template <typename T>
std::pair<T, CutSet> global_min_cut(const CostVector<T>& c) {
    int n = c.n();
    require(n >= 2, Errc::instance_too_small, "min cut needs n >= 2");
    std::vector<std::vector<T>> w(static_cast<std::size_t>(n) + 1,
                                  std::vector<T>(static_cast<std::size_t>(n) + 1, T{}));
    for (const auto& [p, v] : c.entries()) {
        w[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)] = v;
        w[static_cast<std::size_t>(p.second)][static_cast<std::size_t>(p.first)] = v;
    }
    std::vector<std::vector<NodeId>> group(static_cast<std::size_t>(n) + 1);
    for (NodeId v = 1; v <= n; ++v) group[static_cast<std::size_t>(v)] = {v};
    std::vector<NodeId> active;
    for (NodeId v = 1; v <= n; ++v) active.push_back(v);

    bool have = false;
    T best{};
    std::vector<NodeId> best_side;
    while (active.size() > 1) {
        std::vector<bool> added(static_cast<std::size_t>(n) + 1, false);
        std::vector<T> wsum(static_cast<std::size_t>(n) + 1, T{});
        NodeId prev = -1, last = -1;
        for (std::size_t step = 0; step < active.size(); ++step) {
            NodeId pick = -1;
            for (NodeId v : active) {
                if (added[static_cast<std::size_t>(v)]) continue;
                if (pick < 0 || wsum[static_cast<std::size_t>(v)] > wsum[static_cast<std::size_t>(pick)])
                    pick = v;
            }
            added[static_cast<std::size_t>(pick)] = true;
            prev = last;
            last = pick;
            for (NodeId v : active)
                if (!added[static_cast<std::size_t>(v)])
                    wsum[static_cast<std::size_t>(v)] +=
                        w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
        }
        const T& phase_cut = wsum[static_cast<std::size_t>(last)];
        if (!have || phase_cut < best) {
            best = phase_cut;
            best_side = group[static_cast<std::size_t>(last)];
            have = true;
        }
        // contract last into prev
        for (NodeId v : active) {
            if (v == last || v == prev) continue;
            w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] +=
                w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
            w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] =
                w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
        }
        auto& g = group[static_cast<std::size_t>(prev)];
        g.insert(g.end(), group[static_cast<std::size_t>(last)].begin(),
                 group[static_cast<std::size_t>(last)].end());
        active.erase(std::find(active.begin(), active.end(), last));
    }
    return {best, CutSet(n, best_side)};
}

/// Exact minimum cut with |S| = alpha, by enumeration of all C(n, alpha)
/// subsets. The problem is NP-hard; no heuristic fallback on purpose.
template <typename T>
std::pair<T, CutSet> min_alpha_cut(const CostVector<T>& c, int alpha) {
    int n = c.n();
    require(alpha >= 1 && alpha <= n / 2, Errc::parameter, "alpha must lie in [1, n/2]");
    require(n <= kEnumerationLimit, Errc::size_limit,
            "min_alpha_cut enumerates subsets; limited to n <= " +
                std::to_string(kEnumerationLimit));
    bool first = true;
    T best{};
    CutSet best_set;
    // Gosper's hack over alpha-subsets of {1..n}
    std::uint32_t mask = (1u << alpha) - 1;
    std::uint32_t top = 1u << n;
    while (mask < top) {
        std::vector<NodeId> side;
        for (int v = 1; v <= n; ++v)
            if (mask & (1u << (v - 1))) side.push_back(v);
        CutSet s(n, std::move(side));
        T w = cut_weight(c, s);
        if (first || w < best) {
            best = w;
            best_set = s;
            first = false;
        }
        std::uint32_t lo = mask & (~mask + 1);
        std::uint32_t carry = mask + lo;
        mask = (((carry ^ mask) >> 2) / lo) | carry;
    }
    return {best, best_set};
}

namespace detail {

/// Edmonds-Karp max flow on the undirected support, exact under Rat.
template <typename T>
T max_flow(const CostVector<T>& c, NodeId s, NodeId t) {
    int n = c.n();
    std::vector<std::vector<T>> cap(static_cast<std::size_t>(n) + 1,
                                    std::vector<T>(static_cast<std::size_t>(n) + 1, T{}));
    for (const auto& [p, v] : c.entries()) {
        cap[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)] += v;
        cap[static_cast<std::size_t>(p.second)][static_cast<std::size_t>(p.first)] += v;
    }
    T flow{};
    while (true) {
        std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1, 0);
        parent[static_cast<std::size_t>(s)] = s;
        std::deque<NodeId> q{s};
        while (!q.empty() && parent[static_cast<std::size_t>(t)] == 0) {
            NodeId u = q.front();
            q.pop_front();
            for (NodeId v = 1; v <= n; ++v) {
                if (parent[static_cast<std::size_t>(v)] != 0) continue;
                if (scalar_traits<T>::is_zero(cap[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)], 0))
                    continue;
                parent[static_cast<std::size_t>(v)] = u;
                q.push_back(v);
            }
        }
        if (parent[static_cast<std::size_t>(t)] == 0) break;
        T aug{};
        bool first = true;
        for (NodeId v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
            const T& e = cap[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])]
                            [static_cast<std::size_t>(v)];
            if (first || e < aug) aug = e;
            first = false;
        }
        for (NodeId v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
            NodeId u = parent[static_cast<std::size_t>(v)];
            cap[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] -= aug;
            cap[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] += aug;
        }
        flow += aug;
    }
    return flow;
}

}  // namespace detail

/// Exact s-t min cut value: subset enumeration at desk scale, max flow beyond.
template <typename T>
T st_min_cut(const CostVector<T>& c, NodeId s, NodeId t) {
    int n = c.n();
    require(s != t, Errc::parameter, "s and t must differ");
    require(s >= 1 && s <= n && t >= 1 && t <= n, Errc::parameter, "node out of range");
    if (n > kEnumerationLimit) return detail::max_flow(c, s, t);
    T best{};
    bool first = true;
    std::vector<NodeId> others;
    for (NodeId v = 1; v <= n; ++v)
        if (v != s && v != t) others.push_back(v);
    std::uint32_t top = 1u << others.size();
    for (std::uint32_t mask = 0; mask < top; ++mask) {
        std::vector<NodeId> side{s};
        for (std::size_t b = 0; b < others.size(); ++b)
            if (mask & (1u << b)) side.push_back(others[b]);
        T w = cut_weight(c, CutSet(n, std::move(side)));
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    return best;
}

/// Minimum spanning tree of the complete graph under weights x (absent pairs
/// are 0). Kruskal with lexicographic tie-break for reproducible trees.
template <typename T>
std::pair<std::vector<Pair>, T> mst(const CostVector<T>& x) {
    int n = x.n();
    std::vector<std::tuple<T, NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) edges.emplace_back(x.get(i, j), i, j);
    std::stable_sort(edges.begin(), edges.end(),
                     [](const auto& a, const auto& b) { return a < b; });
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    std::vector<Pair> tree;
    T cost{};
    for (const auto& [w, i, j] : edges) {
        int a = find(i), b = find(j);
        if (a == b) continue;
        parent[static_cast<std::size_t>(a)] = b;
        tree.emplace_back(i, j);
        cost += w;
        if (static_cast<int>(tree.size()) == n - 1) break;
    }
    return {tree, cost};
}

/// The h-cover projection LP: min sum h_i s.t. h_i + h_j >= x_ij, h >= 0.
/// Its dual is the fractional 2-matching LP scaled by 1/2.
template <typename T>
struct HCoverResult {
    T value{};
    std::vector<T> h;              // by node, 1-based position v-1
    std::map<Pair, T> matching;    // dual weights y_ij >= 0 on the support
    T dual_value{};
};

template <typename T>
HCoverResult<T> min_h_cover(const CostVector<T>& x) {
    int n = x.n();
    lp::Model<T> m;
    for (NodeId v = 1; v <= n; ++v) m.add_variable("h_" + std::to_string(v));
    std::vector<Pair> row_pair;
    for (const auto& [p, v] : x.entries()) {
        m.add_row("cover_" + std::to_string(p.first) + "_" + std::to_string(p.second),
                  {{p.first - 1, scalar_traits<T>::from_int(1)},
                   {p.second - 1, scalar_traits<T>::from_int(1)}},
                  lp::RowSense::GE, v);
        row_pair.push_back(p);
    }
    std::vector<std::pair<int, T>> obj;
    for (NodeId v = 1; v <= n; ++v) obj.emplace_back(v - 1, scalar_traits<T>::from_int(1));
    m.set_objective(lp::ObjSense::Minimize, std::move(obj));
    m.seal();
    auto sol = lp::solve(m);
    require(sol.status == lp::SolveStatus::Optimal, Errc::internal_consistency,
            "h-cover LP must be feasible and bounded");
    HCoverResult<T> out;
    out.value = sol.objective;
    out.h = sol.primal;
    for (std::size_t k = 0; k < row_pair.size(); ++k) {
        out.matching[row_pair[k]] = sol.dual[k];
        out.dual_value += sol.dual[k] * x.get(row_pair[k].first, row_pair[k].second);
    }
    return out;
}

}  // namespace cutpoly
