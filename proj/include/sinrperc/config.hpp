#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinrperc/critical.hpp"
#include "sinrperc/model.hpp"

namespace sinrperc {

// thrown for malformed config text / unknown keys (CLI exit 2)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// thrown when a structurally valid config fails semantic checks (CLI exit 3)
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { snapshot, sweep, critical, coincidence, bounds, gamma_bound };
const char* experiment_kind_name(ExperimentKind k);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::snapshot;
    ModelSet model;
    std::string atten_table_path;   // when the attenuation came from a CSV table

    // run section
    std::size_t n = 1000;
    int replications = 20;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_dir = "out";
    double max_seconds = 0.0;       // 0 = no wall clock budget
    SweptParam param = SweptParam::density;
    double density = 1.0;           // fixed density for gamma experiments
    std::vector<double> grid;       // sweep values
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double resolution = 0.01;
    int max_reps_per_point = 160;
    long long max_evals = 2'000'000;
    ComponentType component = ComponentType::strong;
    PercolationCriterion criterion;
    CountMode::Kind count_mode = CountMode::Kind::fixed_n;
    Region::Boundary boundary = Region::Boundary::hard_box;
    long long root = -1;            // snapshot root, -1 = seed-derived
    std::vector<double> b_grid;     // bounds table mode
    double lambda_prime_c = 0.0;    // gamma_bound
    double cell_scale = 0.0;        // gamma_bound d, 0 = minimize
    int path_m = 0;                 // optional path bound in bounds report
    double path_p_o = 0.0;

    std::map<std::string, std::string> raw;   // normalized key=value echo

    // sorted key=value lines, minus execution envelope keys (out_dir,
    // threads, max_seconds); config_hash derives from this
    std::string canonical_text() const;
};

// flat key = value with [section] headers, '#' comments
std::map<std::string, std::string> parse_config_text(const std::string& text);
ExperimentConfig config_from_map(std::map<std::string, std::string> kv);
ExperimentConfig parse_config_file(const std::string& path);

// loads file-backed attenuation tables into the config, then runs semantic
// checks beyond parsing; throws ValidationError
void validate_config(ExperimentConfig& cfg);

// sweep spec materialized from a config
SweepSpec sweep_spec_of(const ExperimentConfig& cfg);
EstimateSpec estimate_spec_of(const ExperimentConfig& cfg);

}  // namespace sinrperc
