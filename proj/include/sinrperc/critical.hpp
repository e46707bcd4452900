#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sinrperc/components.hpp"
#include "sinrperc/model.hpp"
#include "sinrperc/sampling.hpp"

namespace sinrperc {

enum class SweptParam { density, gamma };

// a replicate "percolates" when the largest component holds at least
// frac_threshold of the nodes; the critical point is where the replicate
// frequency of that event crosses target_freq
struct PercolationCriterion {
    double frac_threshold = 0.1;
    double target_freq = 0.5;
};

struct SweepSpec {
    SweptParam swept = SweptParam::density;
    std::vector<double> grid;
    ModelSet model;             // gamma read from model.params for density sweeps
    double density = 1.0;       // fixed density for gamma sweeps
    std::size_t n = 4000;
    CountMode::Kind count_kind = CountMode::Kind::fixed_n;
    Region::Boundary boundary = Region::Boundary::hard_box;
    int replications = 40;
    std::uint64_t base_seed = 1;
    PercolationCriterion criterion;
    int threads = 0;            // 0 = machine parallelism
};

struct SweepPoint {
    double value = 0.0;
    int reps = 0;
    std::array<double, 4> mean_fraction{};   // indexed by ComponentType
    std::array<double, 4> freq{};            // percolation frequency
    std::array<double, 4> ci_half{};         // binomial 95% half-width
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;
};

SweepResult run_sweep(const SweepSpec& spec);

// 95% Wilson score interval for k successes in n trials
std::pair<double, double> wilson_interval(int k, int n);

// Per-replicate percolation indicators at a parameter value, one bit per
// component type.  Production probes build SINR graphs; tests may inject
// synthetic curves.
class PercolationProbe {
public:
    virtual ~PercolationProbe() = default;
    virtual void eval(double value, int rep_begin, int rep_end,
                      std::vector<std::uint8_t>& out_masks) = 0;
};

// probe backed by sampled configurations and giant component statistics;
// replicate seeds derive from (base_seed, value bits, replicate index)
class GraphProbe : public PercolationProbe {
public:
    explicit GraphProbe(const SweepSpec& spec) : spec_(spec) {}
    void eval(double value, int rep_begin, int rep_end,
              std::vector<std::uint8_t>& out_masks) override;
    long long graphs_built() const { return graphs_; }

private:
    SweepSpec spec_;
    long long graphs_ = 0;
};

enum class EstimateStatus { ok, no_transition, budget_exhausted };

struct EstimateSpec {
    double bracket_lo = 0.0, bracket_hi = 1.0;
    double resolution = 0.01;        // stop when bracket width <= resolution
    int reps = 40;                   // replicates per probe point
    int max_reps_per_point = 160;    // doubled until the interval excludes the target
    long long max_evals = 2'000'000; // replicate budget
    bool increasing = true;          // frequency rises with the parameter (density)
};

struct CriticalEstimate {
    ComponentType type = ComponentType::strong;
    EstimateStatus status = EstimateStatus::ok;
    double estimate = 0.0;
    double lo = 0.0, hi = 0.0;       // final bracket
    long long evals = 0;             // replicate evaluations consumed
    int unresolved_points = 0;       // probes that never excluded the target
    std::string note;
};

// shared cache so several estimates reuse replicate indicators per value
using ProbeCache = std::map<double, std::vector<std::uint8_t>>;

CriticalEstimate estimate_crossing(PercolationProbe& probe, ComponentType type,
                                   const PercolationCriterion& criterion,
                                   const EstimateSpec& est, ProbeCache& cache);

CriticalEstimate estimate_critical_density(const SweepSpec& spec, ComponentType type,
                                           const EstimateSpec& est);
CriticalEstimate estimate_critical_gamma(const SweepSpec& spec, ComponentType type,
                                         const EstimateSpec& est);

struct CoincidenceResult {
    std::array<CriticalEstimate, 4> estimates;   // indexed by ComponentType
    double max_gap = 0.0;          // widest pairwise estimate gap
    double mean_estimate = 0.0;
    bool intervals_overlap = false;  // every pair of final brackets intersects
    bool all_ok = false;
};

CoincidenceResult coincidence_check(const SweepSpec& spec, const EstimateSpec& est);

// crossing of the frequency curves for sizes n and scale*n near a first
// estimate; the intersection refines the critical point
struct TwoSizeRefinement {
    double base_estimate = 0.0;
    double refined = 0.0;
    bool ok = false;
    std::string note;
};

TwoSizeRefinement refine_two_sizes(const SweepSpec& spec, ComponentType type,
                                   const EstimateSpec& est, int scale = 4);

}  // namespace sinrperc
