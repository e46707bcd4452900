#include "doctest.h"

#include <bit>
#include <cmath>

#include "oracles.hpp"
#include "sinrperc/critical.hpp"
#include "sinrperc/graph.hpp"
#include "sinrperc/rng.hpp"

using namespace sinrperc;

namespace {

ModelSet binary_radius_model() {
    ModelSet m;
    m.params = {0.25, 0.1, 0.0};
    m.law = PowerDistribution::binary_radius(1.0, 2.0, 0.5);
    return m;
}

ModelSet interference_model(double gamma) {
    ModelSet m;
    m.params = {0.25, 0.1, gamma};
    m.law = PowerDistribution::uniform_power(1.0, 2.0);
    m.atten = AttenuationModel::shifted_matched(3.0, 0.25, 0.1);
    return m;
}

SweepSpec small_spec(std::size_t n = 400) {
    SweepSpec s;
    s.model = binary_radius_model();
    s.n = n;
    s.replications = 24;
    s.base_seed = 11;
    s.threads = 1;
    return s;
}

// percolates deterministically once the value passes a per-type threshold
struct SharpProbe : PercolationProbe {
    std::array<double, 4> cut;
    void eval(double value, int rep_begin, int rep_end,
              std::vector<std::uint8_t>& out) override {
        for (int r = rep_begin; r < rep_end; ++r) {
            std::uint8_t m = 0;
            for (int t = 0; t < 4; ++t)
                if (value >= cut[t]) m |= std::uint8_t(1u << t);
            out.push_back(m);
        }
    }
};

// Bernoulli draws from a logistic curve, reproducible per (value, replicate)
struct NoisyProbe : PercolationProbe {
    double center = 0.5, width = 0.05;
    bool rising = true;
    void eval(double value, int rep_begin, int rep_end,
              std::vector<std::uint8_t>& out) override {
        double p = 1.0 / (1.0 + std::exp(-(value - center) / width));
        if (!rising) p = 1.0 - p;
        for (int r = rep_begin; r < rep_end; ++r) {
            StreamRng rng(std::bit_cast<std::uint64_t>(value), std::uint64_t(r));
            std::uint8_t m = rng.next_double() < p ? 0x0f : 0x00;
            out.push_back(m);
        }
    }
};

}  // namespace

TEST_CASE("wilson interval basics") {
    auto [lo, hi] = wilson_interval(20, 40);
    CHECK(lo == doctest::Approx(1.0 - hi).epsilon(1e-12));
    CHECK(lo < 0.5);
    CHECK(hi > 0.5);
    CHECK(wilson_interval(0, 40).first == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(wilson_interval(40, 40).second == doctest::Approx(1.0).epsilon(1e-15));
    // interval always contains the point estimate and shrinks with n
    for (int n : {10, 40, 160})
        for (int k = 0; k <= n; k += n / 5) {
            auto [a, b] = wilson_interval(k, n);
            double p = double(k) / n;
            CHECK(a <= p + 1e-12);
            CHECK(b >= p - 1e-12);
            CHECK(a >= 0.0);
            CHECK(b <= 1.0);
        }
    double w40 = wilson_interval(20, 40).second - wilson_interval(20, 40).first;
    double w160 = wilson_interval(80, 160).second - wilson_interval(80, 160).first;
    CHECK(w160 < w40);
    CHECK(wilson_interval(3, 0) == std::pair{0.0, 1.0});
}

TEST_CASE("sweep echoes its grid and orders the component types") {
    SweepSpec s = small_spec(300);
    s.grid = {0.4, 0.7, 1.0};
    SweepResult res = run_sweep(s);
    REQUIRE(res.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const SweepPoint& pt = res.points[i];
        CHECK(pt.value == s.grid[i]);
        CHECK(pt.reps == 24);
        auto idx = [](ComponentType t) { return std::size_t(t); };
        // weak contains in/out contains strong, replicate by replicate
        CHECK(pt.freq[idx(ComponentType::weak)] >= pt.freq[idx(ComponentType::in_)]);
        CHECK(pt.freq[idx(ComponentType::weak)] >= pt.freq[idx(ComponentType::out_)]);
        CHECK(pt.freq[idx(ComponentType::in_)] >= pt.freq[idx(ComponentType::strong)]);
        CHECK(pt.freq[idx(ComponentType::out_)] >= pt.freq[idx(ComponentType::strong)]);
        CHECK(pt.mean_fraction[idx(ComponentType::weak)] >=
              pt.mean_fraction[idx(ComponentType::strong)]);
        for (int t = 0; t < 4; ++t) {
            CHECK(pt.freq[t] >= 0.0);
            CHECK(pt.freq[t] <= 1.0);
            double expect = 1.959963984540054 *
                            std::sqrt(pt.freq[t] * (1.0 - pt.freq[t]) / pt.reps);
            CHECK(pt.ci_half[t] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    CHECK_THROWS(run_sweep(SweepSpec{}));   // empty grid
}

TEST_CASE("sweep results do not depend on the thread count") {
    SweepSpec s = small_spec(200);
    s.grid = {0.5, 0.9};
    s.threads = 1;
    SweepResult one = run_sweep(s);
    s.threads = 2;
    SweepResult two = run_sweep(s);
    for (std::size_t i = 0; i < one.points.size(); ++i)
        for (int t = 0; t < 4; ++t) {
            CHECK(one.points[i].mean_fraction[t] == two.points[i].mean_fraction[t]);
            CHECK(one.points[i].freq[t] == two.points[i].freq[t]);
        }
}

TEST_CASE("sharp synthetic thresholds are recovered to the requested resolution") {
    SharpProbe probe;
    probe.cut = {0.42, 0.45, 0.30, 0.61};   // in, out, weak, strong
    PercolationCriterion crit;
    EstimateSpec est;
    est.bracket_lo = 0.0;
    est.bracket_hi = 1.0;
    est.resolution = 1.0 / 128.0;
    ProbeCache cache;
    for (auto t : all_component_types) {
        CriticalEstimate e = estimate_crossing(probe, t, crit, est, cache);
        CHECK(e.status == EstimateStatus::ok);
        double cut = probe.cut[std::size_t(t)];
        CHECK(e.lo <= cut);
        CHECK(e.hi >= cut - est.resolution);   // cut sits at or above the bracket
        CHECK(e.hi - e.lo <= est.resolution + 1e-12);
        CHECK(std::fabs(e.estimate - cut) <= est.resolution);
        CHECK(e.unresolved_points == 0);
    }
    CHECK_THROWS(estimate_crossing(probe, ComponentType::weak, crit,
                                   EstimateSpec{1.0, 0.5}, cache));
}

TEST_CASE("noisy logistic crossing, both orientations") {
    PercolationCriterion crit;
    EstimateSpec est;
    est.bracket_lo = 0.0;
    est.bracket_hi = 1.0;
    est.resolution = 0.02;
    est.reps = 40;
    est.max_reps_per_point = 320;

    NoisyProbe up;
    up.center = 0.37;
    ProbeCache c1;
    CriticalEstimate e1 = estimate_crossing(up, ComponentType::weak, crit, est, c1);
    CHECK(e1.status == EstimateStatus::ok);
    CHECK(std::fabs(e1.estimate - 0.37) < 0.06);

    NoisyProbe down;
    down.center = 0.58;
    down.rising = false;
    est.increasing = false;
    ProbeCache c2;
    CriticalEstimate e2 = estimate_crossing(down, ComponentType::weak, crit, est, c2);
    CHECK(e2.status == EstimateStatus::ok);
    CHECK(std::fabs(e2.estimate - 0.58) < 0.06);
}

TEST_CASE("flat curves report no transition, tight budgets stop early") {
    PercolationCriterion crit;
    EstimateSpec est;
    est.bracket_lo = 0.0;
    est.bracket_hi = 1.0;
    est.resolution = 0.01;

    SharpProbe always;
    always.cut = {-1.0, -1.0, -1.0, -1.0};   // percolates everywhere
    ProbeCache c1;
    CriticalEstimate e1 = estimate_crossing(always, ComponentType::in_, crit, est, c1);
    CHECK(e1.status == EstimateStatus::no_transition);
    CHECK(std::isnan(e1.estimate));

    SharpProbe never;
    never.cut = {2.0, 2.0, 2.0, 2.0};
    ProbeCache c2;
    CriticalEstimate e2 = estimate_crossing(never, ComponentType::in_, crit, est, c2);
    CHECK(e2.status == EstimateStatus::no_transition);

    NoisyProbe noisy;
    noisy.center = 0.5;
    noisy.width = 0.02;
    est.resolution = 1e-6;
    est.max_evals = 100;   // endpoints cost 80, first midpoint crosses the cap
    ProbeCache c3;
    CriticalEstimate e3 = estimate_crossing(noisy, ComponentType::weak, crit, est, c3);
    CHECK(e3.status == EstimateStatus::budget_exhausted);
    CHECK(e3.evals >= 100);
    CHECK(e3.hi - e3.lo > est.resolution);
}

TEST_CASE("critical density of the binary-radius model at small scale") {
    SweepSpec s = small_spec(400);
    EstimateSpec est;
    est.bracket_lo = 0.2;
    est.bracket_hi = 1.2;
    est.resolution = 0.05;
    est.reps = 24;
    est.max_reps_per_point = 96;

    CriticalEstimate e = estimate_critical_density(s, ComponentType::strong, est);
    CHECK(e.status == EstimateStatus::ok);
    CHECK(e.estimate > 0.25);
    CHECK(e.estimate < 1.1);

    // byte-for-byte reproducible
    CriticalEstimate f = estimate_critical_density(s, ComponentType::strong, est);
    CHECK(f.estimate == e.estimate);
    CHECK(f.lo == e.lo);
    CHECK(f.hi == e.hi);
    CHECK(f.evals == e.evals);
}

TEST_CASE("four type estimates stay close under shared replicates") {
    SweepSpec s = small_spec(300);
    s.replications = 20;
    EstimateSpec est;
    est.bracket_lo = 0.2;
    est.bracket_hi = 1.2;
    est.resolution = 0.1;
    est.reps = 20;
    est.max_reps_per_point = 80;

    CoincidenceResult r = coincidence_check(s, est);
    CHECK(r.all_ok);
    CHECK(r.intervals_overlap);
    CHECK(r.max_gap < 0.35);
    auto at = [&](ComponentType t) { return r.estimates[std::size_t(t)].estimate; };
    // containment forces the ordering, up to one bisection cell
    CHECK(at(ComponentType::weak) <= at(ComponentType::strong) + est.resolution + 1e-12);
    CHECK(at(ComponentType::weak) <= at(ComponentType::in_) + est.resolution + 1e-12);
    CHECK(at(ComponentType::weak) <= at(ComponentType::out_) + est.resolution + 1e-12);
}

TEST_CASE("gamma direction: interference kills percolation at a positive threshold") {
    SweepSpec s;
    s.model = interference_model(0.0);
    s.density = 4.0;
    s.n = 300;
    s.replications = 16;
    s.base_seed = 3;
    s.threads = 1;
    s.boundary = Region::Boundary::torus;
    EstimateSpec est;
    est.bracket_lo = 0.001;
    est.bracket_hi = 0.05;
    est.resolution = 0.005;
    est.reps = 16;
    est.max_reps_per_point = 64;

    CriticalEstimate e = estimate_critical_gamma(s, ComponentType::strong, est);
    CHECK(e.status == EstimateStatus::ok);
    CHECK(e.estimate > 0.001);
    CHECK(e.estimate < 0.05);
}

TEST_CASE("sweep frequencies are near-monotone in density") {
    SweepSpec s = small_spec(300);
    s.replications = 20;
    for (double v = 0.3; v <= 1.35; v += 0.2) s.grid.push_back(v);
    SweepResult res = run_sweep(s);
    std::vector<double> freq;
    for (const auto& pt : res.points) freq.push_back(pt.freq[std::size_t(ComponentType::strong)]);
    std::vector<double> fit = oracle::isotonic(freq);
    for (std::size_t i = 0; i < freq.size(); ++i)
        CHECK(std::fabs(fit[i] - freq[i]) < 0.3);
    CHECK(freq.front() < 0.5);
    CHECK(freq.back() > 0.5);
}

TEST_CASE("two size refinement stays inside its probe window") {
    SweepSpec s = small_spec(150);
    EstimateSpec est;
    est.bracket_lo = 0.2;
    est.bracket_hi = 1.2;
    est.resolution = 0.05;
    est.reps = 20;
    est.max_reps_per_point = 80;
    TwoSizeRefinement r = refine_two_sizes(s, ComponentType::strong, est, 4);
    CHECK(r.ok);
    CHECK(r.refined >= r.base_estimate - 2.0 * est.resolution - 1e-12);
    CHECK(r.refined <= r.base_estimate + 2.0 * est.resolution + 1e-12);
}
