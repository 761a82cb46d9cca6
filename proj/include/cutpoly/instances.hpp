#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cutpoly/graph_io.hpp"
#include "cutpoly/oracles.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

/// Seeded generator wrapper; all sampling goes through here so reports are
/// reproducible byte-for-byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool bernoulli(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

    std::vector<NodeId> permutation(int n) {
        std::vector<NodeId> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
        for (int i = n - 1; i > 0; --i)
            std::swap(p[static_cast<std::size_t>(i)],
                      p[static_cast<std::size_t>(uniform_int(0, i))]);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

/// Erdos-Renyi support with the given density, weights uniform on {1..10}.
inline CostVector<Rat> random_cost_vector(int n, double density, Rng& rng) {
    CostVector<Rat> c(n);
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j)
            if (rng.bernoulli(density)) c.set(i, j, Rat(rng.uniform_int(1, 10)));
    return c;
}

/// Samples until the support is connected enough to have a positive min cut;
/// returns the instance and how many draws were discarded.
inline std::pair<CostVector<Rat>, int> random_positive_mincut(int n, double density, Rng& rng) {
    int resamples = 0;
    while (true) {
        auto c = random_cost_vector(n, density, rng);
        if (c.support_size() > 0 && sgn(global_min_cut(c).first) > 0) return {c, resamples};
        ++resamples;
        require(resamples < 10000, Errc::parameter,
                "density too low: cannot sample a connected instance");
    }
}

struct Normalized {
    CostVector<Rat> c;
    Rat original_mincut;
    Rat scale;
};

/// Scales c so the global min cut is exactly 2.
inline Normalized normalize_to_mincut_two(const CostVector<Rat>& c) {
    auto [g, s] = global_min_cut(c);
    require(sgn(g) > 0, Errc::parameter, "min cut is 0; cannot normalize");
    Rat f = Rat(2) / g;
    f.canonicalize();
    return {c.scaled(f), g, f};
}

/// Random metric point: shortest-path closure of a connected weighted sample,
/// scaled so its MST cost equals the given target.
inline CostVector<Rat> random_metric_with_mst_cost(int n, double density, const Rat& target,
                                                   Rng& rng) {
    require(sgn(target) > 0, Errc::parameter, "target MST cost must be positive");
    while (true) {
        auto c = random_cost_vector(n, density, rng);
        // Floyd-Warshall closure; absent pairs are non-edges here
        const Rat inf(1000000);
        std::vector<std::vector<Rat>> d(static_cast<std::size_t>(n) + 1,
                                        std::vector<Rat>(static_cast<std::size_t>(n) + 1, inf));
        for (NodeId v = 1; v <= n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
        for (const auto& [p, w] : c.entries()) {
            d[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)] = w;
            d[static_cast<std::size_t>(p.second)][static_cast<std::size_t>(p.first)] = w;
        }
        for (NodeId k = 1; k <= n; ++k)
            for (NodeId i = 1; i <= n; ++i)
                for (NodeId j = 1; j <= n; ++j) {
                    Rat via = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                              d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                    if (via < d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
                }
        bool connected = true;
        CostVector<Rat> x(n);
        for (NodeId i = 1; i <= n && connected; ++i)
            for (NodeId j = i + 1; j <= n; ++j) {
                if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= inf) {
                    connected = false;
                    break;
                }
                x.set(i, j, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
        if (!connected) continue;
        auto [tree, cost] = mst(x);
        if (sgn(cost) == 0) continue;
        Rat f = target / cost;
        f.canonicalize();
        return x.scaled(f);
    }
}

/// FNV-1a digest of the canonical serialization, for instance identity in
/// reports.
inline std::string digest(const CostVector<Rat>& c) {
    std::ostringstream os;
    write_cost_vector(os, c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cutpoly
