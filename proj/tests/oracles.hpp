// Slow reference implementations the tests compare against.  Everything here
// favors being obviously correct over being fast.
#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sinrperc/bounds.hpp"
#include "sinrperc/model.hpp"
#include "sinrperc/rng.hpp"
#include "sinrperc/sampling.hpp"

namespace oracle {

// total received power at each node, all pairs, no grid tricks
inline std::vector<double> shot_noise(const sinrperc::Configuration& c,
                                      const sinrperc::AttenuationModel& atten) {
    std::size_t n = c.size();
    std::vector<double> tot(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            double d = std::sqrt(c.region.dist2(c.positions[k], c.positions[j]));
            tot[j] += c.marks[k] * atten.eval(d);
        }
    return tot;
}

// n x n adjacency by evaluating the link predicate directly
inline std::vector<std::vector<bool>> adjacency(const sinrperc::Configuration& c,
                                                const sinrperc::ModelSet& model) {
    std::size_t n = c.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    const auto& p = model.params;
    std::vector<double> tot;
    if (p.gamma > 0.0) tot = shot_noise(c, *model.atten);
    std::vector<double> radius = sinrperc::radii_of(c, model);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = std::sqrt(c.region.dist2(c.positions[i], c.positions[j]));
            if (d > radius[i]) continue;
            if (p.gamma == 0.0) {
                adj[i][j] = true;
                continue;
            }
            double sig = c.marks[i] * model.atten->eval(d);
            double interference = tot[j] - sig;
            adj[i][j] = sig / (p.n0 + p.gamma * interference) >= p.beta;
        }
    return adj;
}

// reflexive-transitive closure, Floyd-Warshall on booleans
inline std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> adj) {
    std::size_t n = adj.size();
    for (std::size_t i = 0; i < n; ++i) adj[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!adj[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (adj[k][j]) adj[i][j] = true;
        }
    return adj;
}

// component member lists for a root straight from the closure matrix
struct RootSets {
    std::vector<std::uint32_t> in, out, weak, strong;
};

inline RootSets root_sets(const std::vector<std::vector<bool>>& reach, std::uint32_t root) {
    RootSets s;
    std::size_t n = reach.size();
    for (std::uint32_t v = 0; v < n; ++v) {
        bool fwd = reach[root][v], bwd = reach[v][root];
        if (fwd) s.out.push_back(v);
        if (bwd) s.in.push_back(v);
        if (fwd || bwd) s.weak.push_back(v);
        if (fwd && bwd) s.strong.push_back(v);
    }
    return s;
}

// Monte Carlo estimate of C3': hub at the origin, each satellite uniform in
// the disc where it links to the hub (radius max(r_hub, r_sat)), hit when the
// satellites link to each other.
struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
};

inline McEstimate mc_cluster_coeff(const sinrperc::RadiusDistribution& dist,
                                   std::size_t samples, std::uint64_t seed) {
    sinrperc::StreamRng rng(seed, 17);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        double rh = dist.quantile(rng.next_double());
        double r1 = dist.quantile(rng.next_double());
        double r2 = dist.quantile(rng.next_double());
        auto sat = [&](double r) {
            double rad = std::max(rh, r) * std::sqrt(rng.next_double());
            double ang = 2.0 * M_PI * rng.next_double();
            return std::pair<double, double>{rad * std::cos(ang), rad * std::sin(ang)};
        };
        auto [x1, y1] = sat(r1);
        auto [x2, y2] = sat(r2);
        double d = std::hypot(x1 - x2, y1 - y2);
        if (d <= std::max(r1, r2)) ++hits;
    }
    double p = double(hits) / double(samples);
    return {p, std::sqrt(p * (1.0 - p) / double(samples))};
}

// pool-adjacent-violators: least squares nondecreasing fit
inline std::vector<double> isotonic(const std::vector<double>& y) {
    std::size_t n = y.size();
    std::vector<double> level(n), weight(n);
    std::vector<std::size_t> len(n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        level[m] = y[i];
        weight[m] = 1.0;
        len[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] > level[m - 1]) {
            double w = weight[m - 2] + weight[m - 1];
            level[m - 2] = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) / w;
            weight[m - 2] = w;
            len[m - 2] += len[m - 1];
            --m;
        }
    }
    std::vector<double> fit;
    fit.reserve(n);
    for (std::size_t b = 0; b < m; ++b)
        fit.insert(fit.end(), len[b], level[b]);
    return fit;
}

}  // namespace oracle
