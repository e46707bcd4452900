#include "sinrperc/model.hpp"
#include "sinrperc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrperc {

PowerDistribution PowerDistribution::constant_power(double p) {
    PowerDistribution d;
    d.kind = Kind::constant;
    d.value_a = d.value_b = p;
    return d;
}

PowerDistribution PowerDistribution::binary_power(double pa, double pb, double wa) {
    PowerDistribution d;
    d.kind = Kind::binary;
    d.value_a = pa;
    d.value_b = pb;
    d.weight_a = wa;
    return d;
}

PowerDistribution PowerDistribution::uniform_power(double lo, double hi) {
    PowerDistribution d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

PowerDistribution PowerDistribution::constant_radius(double r) {
    PowerDistribution d = constant_power(r);
    d.radius_direct = true;
    return d;
}

PowerDistribution PowerDistribution::binary_radius(double ra, double rb, double wa) {
    PowerDistribution d = binary_power(ra, rb, wa);
    d.radius_direct = true;
    return d;
}

PowerDistribution PowerDistribution::power_law_radius(double exponent, double lo, double hi) {
    PowerDistribution d;
    d.kind = Kind::power_law;
    d.radius_direct = true;
    d.exponent = exponent;
    d.lo = lo;
    d.hi = hi;
    return d;
}

double PowerDistribution::min_value() const {
    switch (kind) {
        case Kind::constant: return value_a;
        case Kind::binary: return std::min(value_a, value_b);
        default: return lo;
    }
}

double PowerDistribution::max_value() const {
    switch (kind) {
        case Kind::constant: return value_a;
        case Kind::binary: return std::max(value_a, value_b);
        default: return hi;
    }
}

AttenuationModel AttenuationModel::shifted(double exponent, double shift) {
    AttenuationModel m;
    m.kind = Kind::shifted_power_law;
    m.exponent = exponent;
    m.shift = shift;
    return m;
}

AttenuationModel AttenuationModel::shifted_matched(double exponent, double beta, double n0) {
    // shift = (2 n0 beta)^(-1/exponent) so that L(0) = 2 n0 beta
    return shifted(exponent, std::pow(2.0 * n0 * beta, -1.0 / exponent));
}

AttenuationModel AttenuationModel::from_table(std::vector<double> xs, std::vector<double> ys) {
    AttenuationModel m;
    m.kind = Kind::table;
    m.xs = std::move(xs);
    m.ys = std::move(ys);
    if (m.xs.size() != m.ys.size() || m.xs.size() < 3)
        throw std::invalid_argument("attenuation table needs >= 3 rows of (distance, gain)");
    if (m.xs.front() != 0.0)
        throw std::invalid_argument("attenuation table must start at distance 0");
    for (size_t i = 1; i < m.xs.size(); ++i)
        if (!(m.xs[i] > m.xs[i - 1]))
            throw std::invalid_argument("attenuation table distances must be strictly increasing");
    for (size_t i = 0; i < m.ys.size(); ++i)
        if (!(m.ys[i] > 0.0) || (i > 0 && !(m.ys[i] < m.ys[i - 1])))
            throw std::invalid_argument("attenuation table gains must be positive and strictly decreasing");
    return m;
}

double AttenuationModel::eval(double d) const {
    if (d < 0.0) throw std::domain_error("attenuation_eval: negative distance");
    if (kind == Kind::shifted_power_law) return std::pow(d + shift, -exponent);
    if (d <= xs.back()) {
        auto it = std::upper_bound(xs.begin(), xs.end(), d);
        size_t i = size_t(it - xs.begin());
        if (i == 0) return ys.front();
        if (i == xs.size()) return ys.back();
        double t = (d - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    }
    // past the last knot: power-law continuation through the last two rows
    size_t n = xs.size();
    double p = std::log(ys[n - 2] / ys[n - 1]) / std::log(xs[n - 1] / xs[n - 2]);
    return ys[n - 1] * std::pow(xs[n - 1] / d, p);
}

double AttenuationModel::inverse(double gain) const {
    if (!(gain > 0.0)) throw std::domain_error("attenuation_inverse: gain must be positive");
    if (gain > l0()) throw std::domain_error("attenuation_inverse: gain exceeds L(0)");
    if (kind == Kind::shifted_power_law)
        return std::max(0.0, std::pow(gain, -1.0 / exponent) - shift);
    // bracket then bisect to 1e-12 absolute
    double lo = 0.0, hi = xs.back() > 0 ? xs.back() : 1.0;
    while (eval(hi) > gain) hi *= 2.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (eval(mid) >= gain ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double AttenuationModel::derivative(double d) const {
    if (kind == Kind::shifted_power_law)
        return -exponent * std::pow(d + shift, -exponent - 1.0);
    double h = 1e-6 * std::max(1.0, d);
    double lo = std::max(0.0, d - h);
    return (eval(d + h) - eval(lo)) / (d + h - lo);
}

double attenuation_eval(const AttenuationModel& m, double d) { return m.eval(d); }
double attenuation_inverse(const AttenuationModel& m, double gain) { return m.inverse(gain); }

double radius_of(double power, const SinrParams& params, const AttenuationModel& m) {
    return m.inverse(params.n0 * params.beta / power);
}

std::pair<double, double> radius_bounds(const ModelSet& model) {
    if (model.law.radius_direct)
        return {model.law.min_value(), model.law.max_value()};
    if (!model.atten)
        throw std::invalid_argument("radius_bounds: power law without attenuation model");
    return {radius_of(model.law.min_value(), model.params, *model.atten),
            radius_of(model.law.max_value(), model.params, *model.atten)};
}

const ModelCheck* ModelValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {
void push(ModelValidationReport& r, std::string name, bool pass, double witness,
          std::string note = {}) {
    r.checks.push_back({std::move(name), pass, witness, std::move(note)});
    r.ok = r.ok && pass;
}
}  // namespace

ModelValidationReport validate_model(const ModelSet& model) {
    ModelValidationReport rep;
    const auto& p = model.params;
    const auto& law = model.law;

    push(rep, "params.positive", p.beta > 0.0 && p.n0 > 0.0 && p.gamma >= 0.0,
         std::min({p.beta, p.n0, p.gamma}), "beta>0, n0>0, gamma>=0");

    bool support_ok = law.min_value() > 0.0 && law.min_value() <= law.max_value();
    if (law.kind == PowerDistribution::Kind::binary)
        support_ok = support_ok && law.weight_a >= 0.0 && law.weight_a <= 1.0;
    if (law.kind == PowerDistribution::Kind::power_law)
        support_ok = support_ok && law.lo < law.hi;
    push(rep, "law.support", support_ok, law.min_value(),
         "marks positive with nonempty support");

    if (law.radius_direct) {
        push(rep, "law.radius_with_interference", p.gamma == 0.0, p.gamma,
             p.gamma == 0.0 ? "radius-direct law, no interference"
                            : "radius-direct law cannot model gamma > 0");
    }
    if (law.kind == PowerDistribution::Kind::power_law && !law.radius_direct) {
        push(rep, "law.power_law_is_radius", false, 0.0,
             "power_law marks are radii by definition");
    }

    if (!model.atten) {
        bool tolerable = law.radius_direct && p.gamma == 0.0;
        push(rep, "atten.present", tolerable, 0.0,
             tolerable ? "skipped: geometric model without attenuation"
                       : "attenuation model required");
        return rep;
    }

    const auto& at = *model.atten;
    double l0 = 0.0;
    bool eval_ok = true;
    try {
        l0 = at.l0();
    } catch (const std::exception&) {
        eval_ok = false;
    }
    push(rep, "atten.evaluable", eval_ok && std::isfinite(l0) && l0 > 0.0, l0);
    if (!rep.ok) return rep;

    // L strictly decreasing and continuous implies sup_{x>0} L = L(0),
    // so L(x) < 1 for all x > 0 is exactly L(0) <= 1.
    push(rep, "atten.below_one", l0 <= 1.0, l0, "L(x) < 1 for x > 0");

    // strict monotonicity spot check on a log-spaced grid
    double scale = 1.0;
    if (!law.radius_direct && p.n0 * p.beta / law.max_value() <= l0)
        scale = std::max(1.0, radius_of(law.max_value(), p, at));
    bool mono = true;
    double worst = 0.0, prev = l0, prev_x = 0.0;
    for (int i = 0; i <= 64; ++i) {
        double x = scale * std::pow(10.0, -6.0 + 8.0 * i / 64.0);
        double y = at.eval(x);
        if (!(y < prev)) { mono = false; worst = prev_x; }
        prev = y;
        prev_x = x;
    }
    push(rep, "atten.strictly_decreasing", mono, worst,
         mono ? "" : "not decreasing near witness distance");

    if (!law.radius_direct) {
        double need = p.beta * p.n0 / law.min_value();
        push(rep, "atten.noise_gap_at_zero", l0 > need, l0 - need,
             "L(0) > beta*n0/p_min");
        push(rep, "law.min_above_noise", law.min_value() >= p.beta * p.n0,
             law.min_value() - p.beta * p.n0, "p_min >= beta*n0");
    } else {
        push(rep, "atten.noise_gap_at_zero", true, 0.0, "skipped: radius-direct law");
    }

    // finite interference mass: integral of L(x) x over a tail must converge
    if (rep.ok) {
        double y = scale;
        auto tail = integrate_tail([&](double x) { return at.eval(x) * x; }, y, 1e-10, 40);
        push(rep, "atten.tail_integrable", tail.converged, tail.last_increment,
             tail.converged ? "" : "tail integral still growing after 40 doublings");
    }
    return rep;
}

}  // namespace sinrperc
