#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sinrperc/model.hpp"

namespace sinrperc {

// cluster coefficient of the constant-radius model, 1 - 3*sqrt(3)/(4*pi)
double cluster_coeff_constant();

// Distribution of transmission radii, either discrete atoms or a continuous
// density on [lo, hi].
struct RadiusDistribution {
    std::vector<std::pair<double, double>> atoms;   // (radius, weight), sorted by radius
    double lo = 1.0, hi = 1.0;
    std::function<double(double)> pdf, cdf;         // continuous case only

    static RadiusDistribution constant(double r);
    static RadiusDistribution binary(double a, double b, double wa);
    static RadiusDistribution power_law(double exponent, double lo, double hi);
    static RadiusDistribution from_model(const ModelSet& model);

    bool discrete() const { return !atoms.empty(); }
    double cdf_at(double r) const;
    double quantile(double u) const;   // inverse cdf, for sampling oracles
};

// intersection area of discs with radii r1, r2 whose centers are h apart
double lens_area(double h, double r1, double r2);
// fraction of the larger disc covered by the smaller disc centered h away
double lens_fraction(double h, double r_small, double r_big);
// int_0^X lens_area(h; a, b) h dh
double lens_integral(double X, double a, double b);

// P{two satellites of a hub are adjacent | both adjacent to the hub}
// for one specific radius triple
double cluster_coeff_trio(double r_hub, double r_sat1, double r_sat2);

// C3' for a radius law: exact enumeration for atoms, nested quadrature otherwise
double cluster_coeff_c3(const RadiusDistribution& dist, double tol = 1e-8);

struct BinaryClusterCoeff {
    double value = 0.0;          // geometric value (matches Monte Carlo)
    double printed_form = 0.0;   // the published combined formula, kept for comparison
    double case_hub_large = 0.0; // hub radius b, both satellites a
    double case_hub_small = 0.0; // hub radius a, one satellite b
    bool forms_agree = false;    // |value - printed_form| within quadrature noise
};

BinaryClusterCoeff cluster_coeff_binary(double a, double b, double wa);

// mean coverage factor g(r) = r^2 + 2 int_r^hi r' (1 - F(r')) dr'
double coverage_g(const RadiusDistribution& dist, double r);
double mean_coverage_g(const RadiusDistribution& dist);

// critical density bounds
double lambda_lower_bound(const RadiusDistribution& dist, double cluster_coeff);

struct UpperBoundResult {
    double value = 0.0;
    double flower_area = 0.0;   // overlap-free area forced per occupied petal disc
};
UpperBoundResult lambda_upper_bound(double r_min);

// interference tolerance bound
struct GammaBoundResult {
    bool available = false;
    std::string blocked_on;     // violated precondition when unavailable
    double gamma2 = 0.0;        // gamma upper bound
    double theta = 0.0;
    double c2 = 0.0, c2_prime = 0.0;
    double d = 0.0;             // hex cell scale used
    double mean_cell_count = 0.0;
    long long n_prime = 0;      // isolation count threshold at gamma2
};

GammaBoundResult gamma_upper_bound(double lambda, const SinrParams& params, double p_min,
                                   double p_max, const AttenuationModel& atten,
                                   double lambda_prime_c, double d = 0.0 /* <=0: minimize */);

long long isolation_count_threshold(const SinrParams& params, double p_min, double p_max,
                                    const AttenuationModel& atten, double gamma, double d);

// survival probability bound for an m-hop path, (6/5)(5 p_o)^m capped at 1
double path_survival_bound(int m, double p_o);

}  // namespace sinrperc
