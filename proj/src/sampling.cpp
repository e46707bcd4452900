#include "sinrperc/sampling.hpp"
#include "sinrperc/rng.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sinrperc {

double Region::dist2(const Vec2& a, const Vec2& b) const {
    double dx = std::fabs(a.x - b.x);
    double dy = std::fabs(a.y - b.y);
    if (boundary == Boundary::torus) {
        if (dx > 0.5 * width) dx = width - dx;
        if (dy > 0.5 * height) dy = height - dy;
    }
    return dx * dx + dy * dy;
}

Region square_region_for(std::size_t n, double lambda, Region::Boundary b) {
    if (!(lambda > 0.0)) throw std::invalid_argument("square_region_for: lambda must be positive");
    double side = std::sqrt(double(n) / lambda);
    return {side, side, b};
}

namespace {
double draw_mark(const PowerDistribution& law, StreamRng& rng) {
    using Kind = PowerDistribution::Kind;
    switch (law.kind) {
        case Kind::constant:
            return law.value_a;
        case Kind::binary:
            return rng.next_double() < law.weight_a ? law.value_a : law.value_b;
        case Kind::uniform:
            return rng.uniform(law.lo, law.hi);
        case Kind::power_law: {
            // inverse cdf of density ~ r^-exponent on [lo, hi]
            double u = rng.next_double();
            double e = 1.0 - law.exponent;
            if (std::fabs(e) < 1e-12)
                return law.lo * std::pow(law.hi / law.lo, u);
            double t = std::pow(law.lo, e) + u * (std::pow(law.hi, e) - std::pow(law.lo, e));
            return std::pow(t, 1.0 / e);
        }
    }
    return law.value_a;
}
}  // namespace

Configuration sample_configuration(double lambda, const Region& region,
                                   const PowerDistribution& law, const CountMode& mode,
                                   std::uint64_t seed) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("sample_configuration: negative density");
    Configuration c;
    c.region = region;
    c.density = lambda;
    c.seed = seed;
    c.count_kind = mode.kind;

    std::size_t n = mode.n;
    if (mode.kind == CountMode::Kind::poisson) {
        StreamRng count_rng(seed, streams::count);
        n = std::size_t(count_rng.poisson(lambda * region.area()));
    }

    StreamRng pos(seed, streams::positions);
    StreamRng mark(seed, streams::powers);
    c.positions.resize(n);
    c.marks.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.positions[i].x = pos.next_double() * region.width;
        c.positions[i].y = pos.next_double() * region.height;
        c.marks[i] = draw_mark(law, mark);
    }
    return c;
}

std::vector<double> radii_of(const Configuration& config, const ModelSet& model) {
    std::vector<double> r(config.size());
    if (model.law.radius_direct) {
        r = config.marks;
        return r;
    }
    if (!model.atten)
        throw std::invalid_argument("radii_of: power marks need an attenuation model");
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = radius_of(config.marks[i], model.params, *model.atten);
    return r;
}

void save_configuration(const std::string& path, const Configuration& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_configuration: cannot open " + path);
    char buf[160];
    std::snprintf(buf, sizeof buf, "# region_width %.17g\n# region_height %.17g\n",
                  config.region.width, config.region.height);
    out << buf;
    out << "# boundary " << (config.region.boundary == Region::Boundary::torus ? "torus" : "hard_box") << "\n";
    std::snprintf(buf, sizeof buf, "# density %.17g\n# seed %llu\n# count_mode %s\n",
                  config.density, (unsigned long long)config.seed,
                  config.count_kind == CountMode::Kind::poisson ? "poisson" : "fixed_n");
    out << buf << "x,y,mark\n";
    for (std::size_t i = 0; i < config.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", config.positions[i].x,
                      config.positions[i].y, config.marks[i]);
        out << buf;
    }
}

Configuration load_configuration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_configuration: cannot open " + path);
    Configuration c;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            ss >> key;
            if (key == "region_width") ss >> c.region.width;
            else if (key == "region_height") ss >> c.region.height;
            else if (key == "density") ss >> c.density;
            else if (key == "seed") ss >> c.seed;
            else if (key == "boundary") {
                std::string v;
                ss >> v;
                c.region.boundary = v == "torus" ? Region::Boundary::torus : Region::Boundary::hard_box;
            } else if (key == "count_mode") {
                std::string v;
                ss >> v;
                c.count_kind = v == "poisson" ? CountMode::Kind::poisson : CountMode::Kind::fixed_n;
            }
            continue;
        }
        if (line.rfind("x,y,", 0) == 0) continue;
        double x, y, m;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &y, &m) != 3)
            throw std::runtime_error("load_configuration: bad row: " + line);
        c.positions.push_back({x, y});
        c.marks.push_back(m);
    }
    return c;
}

}  // namespace sinrperc
