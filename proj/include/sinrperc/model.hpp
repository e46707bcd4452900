#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sinrperc {

// SINR link model: node i reaches node j iff
//   P_i L(d_ij) / (N0 + gamma * I_j^(i))  >=  beta
// where I_j^(i) sums P_k L(d_kj) over every node k other than i and j.

struct SinrParams {
    double beta = 0.25;    // SINR threshold
    double n0 = 0.1;       // background noise
    double gamma = 0.0;    // inverse processing gain (0 = no interference)
};

// Node marks.  Either transmit powers (radius follows from the attenuation
// model) or transmission radii given directly (geometric shortcut, gamma=0 only).
struct PowerDistribution {
    enum class Kind { constant, binary, uniform, power_law };

    Kind kind = Kind::constant;
    bool radius_direct = false;   // values are radii, not powers
    double value_a = 1.0;         // constant value, or smaller atom
    double value_b = 1.0;         // larger atom (binary)
    double weight_a = 0.5;        // P{value_a} for binary
    double lo = 1.0, hi = 2.0;    // support for uniform / power_law
    double exponent = 3.0;        // density ~ r^-exponent (power_law, radius only)

    static PowerDistribution constant_power(double p);
    static PowerDistribution binary_power(double pa, double pb, double wa);
    static PowerDistribution uniform_power(double lo, double hi);
    static PowerDistribution constant_radius(double r);
    static PowerDistribution binary_radius(double ra, double rb, double wa);
    static PowerDistribution power_law_radius(double exponent, double lo, double hi);

    double min_value() const;
    double max_value() const;
};

// Attenuation L(d): strictly decreasing, continuous on [0, inf).
struct AttenuationModel {
    enum class Kind { shifted_power_law, table };

    Kind kind = Kind::shifted_power_law;
    double exponent = 3.0;   // L(d) = (d + shift)^-exponent
    double shift = 1.0;
    std::vector<double> xs;  // table knots, xs[0] must be 0, strictly increasing
    std::vector<double> ys;  // gains, strictly decreasing, positive

    static AttenuationModel shifted(double exponent, double shift);
    // shift matched so that L(0) = 2 beta n0 (the reference model)
    static AttenuationModel shifted_matched(double exponent, double beta, double n0);
    static AttenuationModel from_table(std::vector<double> xs, std::vector<double> ys);

    double eval(double d) const;        // throws std::domain_error for d < 0
    double inverse(double gain) const;  // d with L(d) = gain, abs tol 1e-12
    double derivative(double d) const;  // dL/dd
    double l0() const { return eval(0.0); }
};

double attenuation_eval(const AttenuationModel& m, double d);
double attenuation_inverse(const AttenuationModel& m, double gain);

struct ModelSet {
    SinrParams params;
    PowerDistribution law;
    std::optional<AttenuationModel> atten;   // may be absent for radius_direct laws
};

// transmission radius of a node with power p
double radius_of(double power, const SinrParams& params, const AttenuationModel& m);

// (r_min, r_max) over the law's support
std::pair<double, double> radius_bounds(const ModelSet& model);

struct ModelCheck {
    std::string name;
    bool pass = false;
    double witness = 0.0;
    std::string note;
};

struct ModelValidationReport {
    std::vector<ModelCheck> checks;
    bool ok = true;
    const ModelCheck* find(const std::string& name) const;
};

ModelValidationReport validate_model(const ModelSet& model);

}  // namespace sinrperc
