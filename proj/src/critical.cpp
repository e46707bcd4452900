#include "sinrperc/critical.hpp"
#include "sinrperc/graph.hpp"
#include "sinrperc/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sinrperc {

namespace {

int thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// deterministic parallel map over [0, count): results land by index
template <class F>
void parallel_for(int count, int threads, F&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::uint64_t value_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

// one replicate: sample, build, measure the four giant fractions
std::array<double, 4> replicate_fractions(const SweepSpec& spec, double value,
                                          std::uint64_t seed) {
    double lambda = spec.swept == SweptParam::density ? value : spec.density;
    ModelSet model = spec.model;
    if (spec.swept == SweptParam::gamma) model.params.gamma = value;

    Region region = square_region_for(spec.n, lambda, spec.boundary);
    CountMode mode = spec.count_kind == CountMode::Kind::poisson
                         ? CountMode::poisson()
                         : CountMode::fixed(spec.n);
    Configuration config = sample_configuration(lambda, region, model.law, mode, seed);
    SinrGraph g = build_directed(config, model);
    GiantStats stats = giant_stats(g);
    return stats.fraction;
}

}  // namespace

std::pair<double, double> wilson_interval(int k, int n) {
    if (n <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    double p = double(k) / n;
    double z2n = z * z / n;
    double denom = 1.0 + z2n;
    double center = (p + 0.5 * z2n) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("run_sweep: empty grid");
    if (spec.replications < 1) throw std::invalid_argument("run_sweep: replications < 1");
    SweepResult out;
    out.spec = spec;
    int threads = thread_count(spec.threads);
    for (double value : spec.grid) {
        SweepPoint pt;
        pt.value = value;
        pt.reps = spec.replications;
        std::vector<std::array<double, 4>> fracs(spec.replications);
        parallel_for(spec.replications, threads, [&](int r) {
            std::uint64_t seed = derive(spec.base_seed, value_bits(value), std::uint64_t(r));
            fracs[r] = replicate_fractions(spec, value, seed);
        });
        std::array<int, 4> hits{};
        for (const auto& f : fracs)
            for (int t = 0; t < 4; ++t) {
                pt.mean_fraction[t] += f[t] / spec.replications;
                if (f[t] >= spec.criterion.frac_threshold) ++hits[t];
            }
        for (int t = 0; t < 4; ++t) {
            pt.freq[t] = double(hits[t]) / spec.replications;
            pt.ci_half[t] = 1.959963984540054 *
                            std::sqrt(pt.freq[t] * (1.0 - pt.freq[t]) / spec.replications);
        }
        out.points.push_back(pt);
    }
    return out;
}

void GraphProbe::eval(double value, int rep_begin, int rep_end,
                      std::vector<std::uint8_t>& out_masks) {
    int count = rep_end - rep_begin;
    if (count <= 0) return;
    std::vector<std::uint8_t> masks(count, 0);
    int threads = thread_count(spec_.threads);
    parallel_for(count, threads, [&](int i) {
        int r = rep_begin + i;
        std::uint64_t seed = derive(spec_.base_seed, value_bits(value), std::uint64_t(r));
        auto f = replicate_fractions(spec_, value, seed);
        std::uint8_t m = 0;
        for (int t = 0; t < 4; ++t)
            if (f[t] >= spec_.criterion.frac_threshold) m |= std::uint8_t(1u << t);
        masks[i] = m;
    });
    graphs_ += count;
    out_masks.insert(out_masks.end(), masks.begin(), masks.end());
}

namespace {

struct PointRead {
    double freq = 0.0;
    int reps = 0;
    int side = 0;   // -1 below target, +1 above, 0 unresolved
};

// grow replicates until the Wilson interval excludes the target (or cap out)
PointRead read_point(PercolationProbe& probe, ComponentType type,
                     const PercolationCriterion& crit, const EstimateSpec& est,
                     ProbeCache& cache, double value, long long& evals) {
    auto& masks = cache[value];
    int want = est.reps;
    PointRead out;
    while (true) {
        if (int(masks.size()) < want) {
            int have = int(masks.size());
            probe.eval(value, have, want, masks);
            evals += want - have;
        }
        int n = int(masks.size());
        int k = 0;
        std::uint8_t bit = std::uint8_t(1u << int(type));
        for (auto m : masks)
            if (m & bit) ++k;
        auto [lo, hi] = wilson_interval(k, n);
        out.freq = double(k) / n;
        out.reps = n;
        if (lo > crit.target_freq) { out.side = 1; return out; }
        if (hi < crit.target_freq) { out.side = -1; return out; }
        if (want >= est.max_reps_per_point || evals >= est.max_evals) {
            out.side = 0;
            return out;
        }
        want = std::min(est.max_reps_per_point, want * 2);
    }
}

}  // namespace

CriticalEstimate estimate_crossing(PercolationProbe& probe, ComponentType type,
                                   const PercolationCriterion& criterion,
                                   const EstimateSpec& est, ProbeCache& cache) {
    CriticalEstimate out;
    out.type = type;
    if (!(est.bracket_hi > est.bracket_lo))
        throw std::invalid_argument("estimate_crossing: empty bracket");

    // orient so frequency rises from lo to hi
    auto oriented_side = [&](const PointRead& r) {
        return est.increasing ? r.side : -r.side;
    };

    PointRead plo = read_point(probe, type, criterion, est, cache, est.bracket_lo, out.evals);
    PointRead phi = read_point(probe, type, criterion, est, cache, est.bracket_hi, out.evals);
    if (plo.side == 0) ++out.unresolved_points;
    if (phi.side == 0) ++out.unresolved_points;
    bool lo_ok = oriented_side(plo) < 0 || (plo.side == 0 && plo.freq < criterion.target_freq);
    bool hi_ok = oriented_side(phi) > 0 || (phi.side == 0 && phi.freq > criterion.target_freq);
    if (!lo_ok || !hi_ok) {
        out.status = EstimateStatus::no_transition;
        out.lo = est.bracket_lo;
        out.hi = est.bracket_hi;
        out.estimate = std::numeric_limits<double>::quiet_NaN();
        out.note = "no transition in bracket: endpoint frequencies on the same side of target";
        return out;
    }

    double lo = est.bracket_lo, hi = est.bracket_hi;
    while (hi - lo > est.resolution) {
        if (out.evals >= est.max_evals) {
            out.status = EstimateStatus::budget_exhausted;
            out.note = "replicate budget exhausted before requested resolution";
            break;
        }
        double mid = 0.5 * (lo + hi);
        PointRead pm = read_point(probe, type, criterion, est, cache, mid, out.evals);
        if (pm.side == 0) ++out.unresolved_points;
        int side = pm.side != 0 ? oriented_side(pm)
                                : (pm.freq > criterion.target_freq ? 1 : -1) *
                                      (est.increasing ? 1 : -1);
        if (side > 0) hi = mid;
        else lo = mid;
    }
    out.lo = lo;
    out.hi = hi;
    out.estimate = 0.5 * (lo + hi);
    return out;
}

namespace {
CriticalEstimate estimate_impl(const SweepSpec& spec, ComponentType type,
                               const EstimateSpec& est_in, bool increasing) {
    SweepSpec s = spec;
    s.swept = increasing ? SweptParam::density : SweptParam::gamma;
    EstimateSpec est = est_in;
    est.increasing = increasing;
    GraphProbe probe(s);
    ProbeCache cache;
    return estimate_crossing(probe, type, s.criterion, est, cache);
}
}  // namespace

CriticalEstimate estimate_critical_density(const SweepSpec& spec, ComponentType type,
                                           const EstimateSpec& est) {
    return estimate_impl(spec, type, est, true);
}

CriticalEstimate estimate_critical_gamma(const SweepSpec& spec, ComponentType type,
                                         const EstimateSpec& est) {
    return estimate_impl(spec, type, est, false);
}

CoincidenceResult coincidence_check(const SweepSpec& spec, const EstimateSpec& est_in) {
    SweepSpec s = spec;
    EstimateSpec est = est_in;
    est.increasing = s.swept == SweptParam::density;
    GraphProbe probe(s);
    ProbeCache cache;   // shared: all four estimates reuse the same replicates
    CoincidenceResult out;
    out.all_ok = true;
    for (auto t : all_component_types) {
        auto& e = out.estimates[std::size_t(t)] =
            estimate_crossing(probe, t, s.criterion, est, cache);
        out.all_ok = out.all_ok && e.status == EstimateStatus::ok;
    }
    double mn = 1e300, mx = -1e300;
    for (const auto& e : out.estimates) {
        mn = std::min(mn, e.estimate);
        mx = std::max(mx, e.estimate);
        out.mean_estimate += e.estimate / 4.0;
    }
    out.max_gap = mx - mn;
    out.intervals_overlap = true;
    for (const auto& a : out.estimates)
        for (const auto& b : out.estimates)
            if (a.lo > b.hi || b.lo > a.hi) out.intervals_overlap = false;
    return out;
}

TwoSizeRefinement refine_two_sizes(const SweepSpec& spec, ComponentType type,
                                   const EstimateSpec& est, int scale) {
    TwoSizeRefinement out;
    CriticalEstimate base = estimate_critical_density(spec, type, est);
    out.base_estimate = base.estimate;
    if (base.status == EstimateStatus::no_transition) {
        out.note = "no transition at base size";
        return out;
    }
    // frequency curves around the base estimate at two sizes; the crossing of
    // their linear fits sharpens the finite-size estimate
    auto curve = [&](std::size_t n) {
        SweepSpec s = spec;
        s.n = n;
        s.grid.clear();
        for (int i = -2; i <= 2; ++i)
            s.grid.push_back(base.estimate + i * est.resolution);
        return run_sweep(s);
    };
    SweepResult small = curve(spec.n), big = curve(spec.n * std::size_t(scale));
    // least-squares slope/intercept of freq difference; root = refined estimate
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = int(small.points.size());
    for (int i = 0; i < m; ++i) {
        double x = small.points[i].value;
        double y = big.points[i].freq[std::size_t(type)] -
                   small.points[i].freq[std::size_t(type)];
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    double icept = (sy - slope * sx) / m;
    if (std::fabs(slope) < 1e-12) {
        out.note = "difference curve flat; keeping base estimate";
        out.refined = base.estimate;
        out.ok = base.status == EstimateStatus::ok;
        return out;
    }
    double root = -icept / slope;
    double lo = small.points.front().value, hi = small.points.back().value;
    out.refined = std::min(hi, std::max(lo, root));
    out.ok = base.status == EstimateStatus::ok;
    return out;
}

}  // namespace sinrperc
