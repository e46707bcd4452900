#include "sinrperc/bounds.hpp"
#include "sinrperc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinrperc {

namespace {
constexpr double PI = std::numbers::pi;

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }
}  // namespace

double cluster_coeff_constant() { return 1.0 - 3.0 * std::sqrt(3.0) / (4.0 * PI); }

RadiusDistribution RadiusDistribution::constant(double r) {
    RadiusDistribution d;
    d.atoms = {{r, 1.0}};
    d.lo = d.hi = r;
    return d;
}

RadiusDistribution RadiusDistribution::binary(double a, double b, double wa) {
    if (a > b) { std::swap(a, b); wa = 1.0 - wa; }
    RadiusDistribution d;
    d.atoms = {{a, wa}, {b, 1.0 - wa}};
    d.lo = a;
    d.hi = b;
    return d;
}

RadiusDistribution RadiusDistribution::power_law(double exponent, double lo, double hi) {
    RadiusDistribution d;
    d.lo = lo;
    d.hi = hi;
    double e = 1.0 - exponent;
    if (std::fabs(e) < 1e-12) {
        double norm = std::log(hi / lo);
        d.pdf = [=](double r) { return 1.0 / (r * norm); };
        d.cdf = [=](double r) { return std::log(r / lo) / norm; };
    } else {
        double norm = (std::pow(hi, e) - std::pow(lo, e)) / e;
        d.pdf = [=](double r) { return std::pow(r, -exponent) / norm; };
        d.cdf = [=](double r) { return (std::pow(r, e) - std::pow(lo, e)) / (e * norm); };
    }
    return d;
}

RadiusDistribution RadiusDistribution::from_model(const ModelSet& model) {
    const auto& law = model.law;
    using Kind = PowerDistribution::Kind;
    if (law.radius_direct) {
        switch (law.kind) {
            case Kind::constant: return constant(law.value_a);
            case Kind::binary: return binary(law.value_a, law.value_b, law.weight_a);
            case Kind::power_law: return power_law(law.exponent, law.lo, law.hi);
            default: throw std::invalid_argument("from_model: unsupported radius law");
        }
    }
    if (!model.atten) throw std::invalid_argument("from_model: power law needs attenuation");
    const AttenuationModel at = *model.atten;   // copy into the closures
    const SinrParams p = model.params;
    switch (law.kind) {
        case Kind::constant:
            return constant(radius_of(law.value_a, p, at));
        case Kind::binary:
            return binary(radius_of(law.value_a, p, at), radius_of(law.value_b, p, at),
                          law.weight_a);
        case Kind::uniform: {
            RadiusDistribution d;
            d.lo = radius_of(law.lo, p, at);
            d.hi = radius_of(law.hi, p, at);
            double span = law.hi - law.lo;
            double nb = p.n0 * p.beta;
            d.cdf = [=](double r) {
                double power = nb / at.eval(r);
                return std::min(1.0, std::max(0.0, (power - law.lo) / span));
            };
            d.pdf = [=](double r) {
                double l = at.eval(r);
                return -nb * at.derivative(r) / (l * l) / span;
            };
            return d;
        }
        default:
            throw std::invalid_argument("from_model: unsupported power law kind");
    }
}

double RadiusDistribution::cdf_at(double r) const {
    if (discrete()) {
        double acc = 0.0;
        for (const auto& [x, w] : atoms)
            if (x <= r) acc += w;
        return acc;
    }
    if (r <= lo) return 0.0;
    if (r >= hi) return 1.0;
    return cdf(r);
}

double RadiusDistribution::quantile(double u) const {
    if (discrete()) {
        double acc = 0.0;
        for (const auto& [x, w] : atoms) {
            acc += w;
            if (u <= acc) return x;
        }
        return atoms.back().first;
    }
    double a = lo, b = hi;
    for (int k = 0; k < 200 && b - a > 1e-13; ++k) {
        double m = 0.5 * (a + b);
        (cdf(m) < u ? a : b) = m;
    }
    return 0.5 * (a + b);
}

double lens_area(double h, double r1, double r2) {
    if (h < 0.0 || r1 < 0.0 || r2 < 0.0)
        throw std::domain_error("lens_area: negative argument");
    double a = std::min(r1, r2), b = std::max(r1, r2);
    if (a == 0.0 || h >= a + b) return 0.0;
    if (h <= b - a) return PI * a * a;
    double pa = std::acos(clamp_unit((h * h + a * a - b * b) / (2.0 * h * a)));
    double pb = std::acos(clamp_unit((h * h + b * b - a * a) / (2.0 * h * b)));
    double sq = (-h + a + b) * (h + a - b) * (h - a + b) * (h + a + b);
    return a * a * pa + b * b * pb - 0.5 * std::sqrt(std::max(0.0, sq));
}

double lens_fraction(double h, double r_small, double r_big) {
    double b = std::max(r_small, r_big);
    if (b == 0.0) return 0.0;
    return lens_area(h, r_small, r_big) / (PI * b * b);
}

double lens_integral(double X, double a, double b) {
    if (a > b) std::swap(a, b);
    if (X <= 0.0 || a == 0.0) return 0.0;
    double kink = b - a;
    double flat = std::min(X, kink);
    double val = flat > 0 ? PI * a * a * flat * flat * 0.5 : 0.0;
    double hi = std::min(X, a + b);
    if (hi > kink)
        val += integrate([&](double h) { return lens_area(h, a, b) * h; }, kink, hi, 1e-12).value;
    return val;
}

namespace {
// hub at least as large as both satellites: both live in the hub disc,
// adjacency reach is the larger satellite radius
double coeff_hub_large(double sat_big, double r_hub) {
    double r4 = r_hub * r_hub * r_hub * r_hub;
    return 2.0 / (PI * r4) * lens_integral(r_hub, sat_big, r_hub);
}

// remaining case: discs of the middle and largest radii of the triple,
// adjacency reach equals the largest radius
double coeff_mid(double mid, double big) {
    return 2.0 / (PI * mid * mid * big * big) * lens_integral(big, mid, big);
}
}  // namespace

double cluster_coeff_trio(double r_hub, double r_sat1, double r_sat2) {
    double ss = std::min(r_sat1, r_sat2), bs = std::max(r_sat1, r_sat2);
    if (r_hub >= bs) return coeff_hub_large(bs, r_hub);
    return coeff_mid(std::max(r_hub, ss), bs);
}

double cluster_coeff_c3(const RadiusDistribution& dist, double tol) {
    if (dist.discrete()) {
        double acc = 0.0;
        for (const auto& [rh, wh] : dist.atoms)
            for (const auto& [r1, w1] : dist.atoms)
                for (const auto& [r2, w2] : dist.atoms)
                    acc += wh * w1 * w2 * cluster_coeff_trio(rh, r1, r2);
        return acc;
    }
    // ordered by the largest radius of the triple; inner weights use the cdf
    auto inner_I = [&](double rk) {
        return integrate([&](double rj) {
                   return dist.pdf(rj) * dist.cdf_at(rj) * coeff_hub_large(rj, rk);
               }, dist.lo, rk, tol * 0.1).value;
    };
    auto inner_mid = [&](double rj) {
        return integrate([&](double rm) {
                   return dist.pdf(rm) * dist.cdf_at(rm) * coeff_mid(rm, rj);
               }, dist.lo, rj, tol * 0.1).value;
    };
    QuadResult tI = integrate([&](double rk) { return dist.pdf(rk) * inner_I(rk); },
                              dist.lo, dist.hi, tol);
    QuadResult tM = integrate([&](double rj) { return dist.pdf(rj) * inner_mid(rj); },
                              dist.lo, dist.hi, tol);
    if (!tI.converged || !tM.converged)
        throw std::runtime_error("cluster_coeff_c3: quadrature did not reach tolerance, residual " +
                                 std::to_string(tI.abs_error + tM.abs_error));
    return 2.0 * (tI.value + 2.0 * tM.value);
}

BinaryClusterCoeff cluster_coeff_binary(double a, double b, double wa) {
    if (a > b) { std::swap(a, b); wa = 1.0 - wa; }
    BinaryClusterCoeff out;
    double pa = wa, pb = 1.0 - wa;
    double C = cluster_coeff_constant();
    out.case_hub_large = coeff_hub_large(a, b);   // hub b, satellites a,a
    out.case_hub_small = coeff_mid(a, b);         // hub a, satellites a,b
    double w_equal = pb * pb * pb + pa * pa * pa + 3.0 * pb * pb * pa;
    out.value = w_equal * C + pb * pa * pa * out.case_hub_large +
                2.0 * pa * pa * pb * out.case_hub_small;

    // published combined integral, reproduced verbatim for comparison
    auto integrand = [&](double h) {
        double phi1 = std::acos(clamp_unit((h * h + a * a - b * b) / (2.0 * a * h)));
        double th1 = std::acos(clamp_unit((h * h + b * b - a * a) / (2.0 * b * h)));
        return ((phi1 + th1) * (a * a + b * b) + h * std::sin(th1) * (a + b)) * h;
    };
    double integ = integrate(integrand, 0.0, b, 1e-10).value;
    out.printed_form = w_equal * C + pb * pa * pa * (2.0 / (PI * b * b * b * b)) * integ;
    out.forms_agree = std::fabs(out.printed_form - out.value) < 1e-6;
    return out;
}

double coverage_g(const RadiusDistribution& dist, double r) {
    double tail = 0.0;
    if (dist.discrete()) {
        // 1 - F is a step function; integrate r' (1-F) across atom intervals
        double prev = r;
        double mass_above = 0.0;
        for (const auto& [x, w] : dist.atoms)
            if (x > r) mass_above += w;
        for (const auto& [x, w] : dist.atoms) {
            if (x <= prev) continue;
            tail += mass_above * 0.5 * (x * x - prev * prev);
            mass_above -= w;
            prev = x;
        }
    } else if (r < dist.hi) {
        if (r < dist.lo) tail += 0.5 * (dist.lo * dist.lo - r * r);
        tail += integrate([&](double rp) { return rp * (1.0 - dist.cdf_at(rp)); },
                          std::max(r, dist.lo), dist.hi, 1e-11).value;
    }
    return r * r + 2.0 * tail;
}

double mean_coverage_g(const RadiusDistribution& dist) {
    if (dist.discrete()) {
        double acc = 0.0;
        for (const auto& [x, w] : dist.atoms) acc += w * coverage_g(dist, x);
        return acc;
    }
    return integrate([&](double r) { return dist.pdf(r) * coverage_g(dist, r); },
                     dist.lo, dist.hi, 1e-9).value;
}

double lambda_lower_bound(const RadiusDistribution& dist, double cluster_coeff) {
    if (!(cluster_coeff < 1.0))
        throw std::domain_error("lambda_lower_bound: cluster coefficient must be < 1");
    if (dist.atoms.size() == 2) {
        double b = dist.atoms.back().first;   // two-atom case: reach of the larger disc
        return 1.0 / (PI * (1.0 - cluster_coeff) * b * b);
    }
    return 1.0 / ((1.0 - cluster_coeff) * PI * mean_coverage_g(dist));
}

UpperBoundResult lambda_upper_bound(double r_min) {
    if (!(r_min > 0.0)) throw std::domain_error("lambda_upper_bound: r_min must be positive");
    UpperBoundResult out;
    double coeff = PI - 6.0 * std::asin(0.25) -
                   3.0 * std::sqrt(3.0) * (std::sqrt(5.0) - 1.0) / 8.0;
    out.flower_area = 0.25 * coeff * r_min * r_min;
    out.value = std::log(2.0) / out.flower_area;
    return out;
}

long long isolation_count_threshold(const SinrParams& params, double p_min, double p_max,
                                    const AttenuationModel& atten, double gamma, double d) {
    if (!(gamma > 0.0) || !(d > 0.0))
        throw std::domain_error("isolation_count_threshold: gamma and d must be positive");
    double arg = (p_max - params.beta * params.n0) /
                 (gamma * params.beta * p_min * atten.eval(2.0 * d));
    if (arg > 9e18) return (long long)9e18;
    return (long long)std::ceil(arg) + 2;
}

GammaBoundResult gamma_upper_bound(double lambda, const SinrParams& params, double p_min,
                                   double p_max, const AttenuationModel& atten,
                                   double lambda_prime_c, double d) {
    GammaBoundResult out;
    if (!(lambda_prime_c > 0.0)) {
        out.blocked_on = "lambda_prime_c must be positive";
        return out;
    }
    if (!(lambda > lambda_prime_c)) {
        out.blocked_on = "lambda must exceed lambda_prime_c";
        return out;
    }
    if (!(p_max > params.beta * params.n0)) {
        out.blocked_on = "p_max must exceed beta*n0";
        return out;
    }

    const double sqrt3 = std::sqrt(3.0);
    auto eval_at = [&](double dd, GammaBoundResult& r) {
        r.theta = std::sqrt(10.0) / (dd * std::pow(27.0, 0.25) * std::sqrt(lambda_prime_c));
        r.mean_cell_count = lambda * (3.0 * sqrt3 / 2.0) * dd * dd;
        double denom_count = (1.0 - r.theta) * r.mean_cell_count - 3.0;
        if (!(r.theta < 1.0) || !(denom_count > 0.0)) return false;
        double l2d = atten.eval(2.0 * dd);
        r.gamma2 = (p_max - params.beta * params.n0) /
                   (params.beta * p_min * l2d * denom_count);
        r.c2 = 2.0 * sqrt3 * (p_max - params.beta * params.n0) /
               (9.0 * (1.0 - r.theta) * params.beta * p_min * l2d * dd * dd);
        r.c2_prime = 2.0 * sqrt3 / (3.0 * (1.0 - r.theta) * dd * dd);
        r.d = dd;
        return true;
    };

    if (d > 0.0) {
        if (!eval_at(d, out)) {
            out.blocked_on = "cell scale too small: need theta < 1 and (1-theta)E[N] > 3";
            return out;
        }
    } else {
        // feasible d minimizing gamma2: log grid then local refinement
        double d_lo = std::sqrt(10.0) / (std::pow(27.0, 0.25) * std::sqrt(lambda_prime_c));
        bool any = false;
        GammaBoundResult best, cur;
        for (int i = 0; i <= 400; ++i) {
            double dd = d_lo * std::pow(200.0, i / 400.0) * 1.0000001;
            if (eval_at(dd, cur) && (!any || cur.gamma2 < best.gamma2)) {
                best = cur;
                any = true;
            }
        }
        if (!any) {
            out.blocked_on = "no feasible cell scale";
            return out;
        }
        for (double step = best.d * 0.01; step > best.d * 1e-8; step *= 0.5) {
            for (double dd : {best.d - step, best.d + step})
                if (eval_at(dd, cur) && cur.gamma2 < best.gamma2) best = cur;
        }
        out = best;
    }
    out.available = true;
    out.n_prime = isolation_count_threshold(params, p_min, p_max, atten, out.gamma2, out.d);
    return out;
}

double path_survival_bound(int m, double p_o) {
    if (m < 0 || p_o < 0.0) throw std::domain_error("path_survival_bound: bad arguments");
    return std::min(1.0, 1.2 * std::pow(5.0 * p_o, m));
}

}  // namespace sinrperc
