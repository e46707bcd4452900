#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sinrperc/model.hpp"

namespace sinrperc {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Region {
    enum class Boundary { hard_box, torus };
    double width = 1.0, height = 1.0;
    Boundary boundary = Boundary::hard_box;

    double area() const { return width * height; }
    double dist2(const Vec2& a, const Vec2& b) const;
};

// square region sized so that n points give density lambda
Region square_region_for(std::size_t n, double lambda,
                         Region::Boundary b = Region::Boundary::hard_box);

struct CountMode {
    enum class Kind { fixed_n, poisson };
    Kind kind = Kind::fixed_n;
    std::size_t n = 0;   // fixed_n only; poisson draws N ~ Poisson(lambda * area)

    static CountMode fixed(std::size_t n) { return {Kind::fixed_n, n}; }
    static CountMode poisson() { return {Kind::poisson, 0}; }
};

struct Configuration {
    Region region;
    double density = 0.0;
    std::uint64_t seed = 0;
    CountMode::Kind count_kind = CountMode::Kind::fixed_n;
    std::vector<Vec2> positions;
    std::vector<double> marks;   // transmit powers, or radii for radius-direct laws

    std::size_t size() const { return positions.size(); }
};

Configuration sample_configuration(double lambda, const Region& region,
                                   const PowerDistribution& law, const CountMode& mode,
                                   std::uint64_t seed);

// per-node transmission radii (identity for radius-direct laws)
std::vector<double> radii_of(const Configuration& config, const ModelSet& model);

void save_configuration(const std::string& path, const Configuration& config);
Configuration load_configuration(const std::string& path);

}  // namespace sinrperc
