#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cutpoly/errors.hpp"
#include "cutpoly/rational.hpp"

namespace cutpoly {

/// Nodes are labeled 1..n throughout.
using NodeId = int;
using Pair = std::pair<NodeId, NodeId>;  // normalized i < j

inline Pair make_pair_key(NodeId i, NodeId j) {
    require(i != j, Errc::parameter, "self-loop pair");
    return i < j ? Pair{i, j} : Pair{j, i};
}

/// Symmetric nonnegative weights on unordered node pairs; absent pairs are 0.
/// Doubles as LP objective, LP x-solution and TSP point.
template <typename T>
class CostVector {
public:
    CostVector() = default;
    explicit CostVector(int n) : n_(n) { require(n >= 1, Errc::parameter, "n must be >= 1"); }

    int n() const { return n_; }

    const T& get(NodeId i, NodeId j) const {
        static const T zero{};
        auto it = w_.find(make_pair_key(i, j));
        return it == w_.end() ? zero : it->second;
    }

    void set(NodeId i, NodeId j, T v) {
        check_node(i);
        check_node(j);
        require(!scalar_traits<T>::is_neg(v), Errc::negativity, "negative edge weight");
        auto key = make_pair_key(i, j);
        if (scalar_traits<T>::is_zero(v))
            w_.erase(key);
        else
            w_[key] = std::move(v);
    }

    void add(NodeId i, NodeId j, const T& dv) { set(i, j, get(i, j) + dv); }

    bool has(NodeId i, NodeId j) const { return w_.count(make_pair_key(i, j)) > 0; }

    /// Support size m: pairs with positive weight.
    std::size_t support_size() const { return w_.size(); }

    /// Deterministic (lexicographic) iteration over the support.
    const std::map<Pair, T>& entries() const { return w_; }

    T degree(NodeId v) const {
        check_node(v);
        T d{};
        for (const auto& [p, w] : w_)
            if (p.first == v || p.second == v) d += w;
        return d;
    }

    T total_weight() const {
        T t{};
        for (const auto& [p, w] : w_) t += w;
        return t;
    }

    CostVector scaled(const T& f) const {
        CostVector out(n_);
        for (const auto& [p, w] : w_) out.set(p.first, p.second, w * f);
        return out;
    }

    bool operator==(const CostVector& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    void check_node(NodeId v) const {
        require(v >= 1 && v <= n_, Errc::parameter, "node out of range");
    }

    int n_ = 0;
    std::map<Pair, T> w_;
};

template <typename T>
T dot(const CostVector<T>& a, const CostVector<T>& b) {
    // iterate the sparser side
    const auto& lhs = a.support_size() <= b.support_size() ? a : b;
    const auto& rhs = a.support_size() <= b.support_size() ? b : a;
    T s{};
    for (const auto& [p, w] : lhs.entries()) s += w * rhs.get(p.first, p.second);
    return s;
}

template <typename T>
CostVector<T> convert_cost(const CostVector<Rat>& c) {
    CostVector<T> out(c.n());
    for (const auto& [p, w] : c.entries()) out.set(p.first, p.second, from_rat<T>(w));
    return out;
}

/// Nontrivial bipartition, stored as the member list of one side.
struct CutSet {
    int n = 0;
    std::vector<NodeId> members;  // sorted, nonempty, proper subset

    CutSet() = default;
    CutSet(int n_, std::vector<NodeId> m) : n(n_), members(std::move(m)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        require(!members.empty() && static_cast<int>(members.size()) < n, Errc::parameter,
                "cut side must be a nonempty proper subset");
        for (NodeId v : members)
            require(v >= 1 && v <= n, Errc::parameter, "cut member out of range");
    }

    bool contains(NodeId v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
    bool crosses(NodeId i, NodeId j) const { return contains(i) != contains(j); }
    std::size_t size() const { return members.size(); }
};

/// Incidence vector delta(S) of a cut (optionally scaled).
template <typename T>
using CutVector = CostVector<T>;

template <typename T>
CutVector<T> cut_incidence(const CutSet& s, const T& scale = scalar_traits<T>::from_int(1)) {
    CutVector<T> x(s.n);
    for (NodeId i = 1; i <= s.n; ++i)
        for (NodeId j = i + 1; j <= s.n; ++j)
            if (s.crosses(i, j)) x.set(i, j, scale);
    return x;
}

/// Weight of the cut delta(S) under c.
template <typename T>
T cut_weight(const CostVector<T>& c, const CutSet& s) {
    T w{};
    for (const auto& [p, v] : c.entries())
        if (s.crosses(p.first, p.second)) w += v;
    return w;
}

/// Hamilton cycle as a cyclic permutation of 1..n.
struct HamCycle {
    std::vector<NodeId> order;

    explicit HamCycle(std::vector<NodeId> ord) : order(std::move(ord)) {
        int n = static_cast<int>(order.size());
        require(n >= 3, Errc::malformed_cycle, "cycle needs at least 3 nodes");
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (NodeId v : order) {
            require(v >= 1 && v <= n, Errc::malformed_cycle, "cycle node out of range");
            require(!seen[static_cast<std::size_t>(v)], Errc::malformed_cycle,
                    "duplicate node in cycle order");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    int n() const { return static_cast<int>(order.size()); }

    static HamCycle canonical(int n) {
        std::vector<NodeId> ord(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ord[static_cast<std::size_t>(i)] = i + 1;
        return HamCycle(std::move(ord));
    }
};

template <typename T>
CostVector<T> incidence_of_cycle(const HamCycle& cycle) {
    CostVector<T> c(cycle.n());
    int n = cycle.n();
    for (int i = 0; i < n; ++i) {
        NodeId a = cycle.order[static_cast<std::size_t>(i)];
        NodeId b = cycle.order[static_cast<std::size_t>((i + 1) % n)];
        c.set(a, b, scalar_traits<T>::from_int(1));
    }
    return c;
}

/// Distance on the canonical cycle 1..n.
inline int cycle_distance(int n, NodeId i, NodeId j) {
    require(i != j, Errc::zero_distance, "cycle_distance needs i != j");
    require(i >= 1 && i <= n && j >= 1 && j <= n, Errc::parameter, "node out of range");
    int d = std::abs(i - j);
    return std::min(d, n - d);
}

}  // namespace cutpoly
