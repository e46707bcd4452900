#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "sinrperc/graph.hpp"

namespace sinrperc {

// Four component notions around a root u:
//   out(u)    nodes reachable from u
//   in(u)     nodes that reach u
//   strong(u) in & out (the strongly connected component of u)
//   weak(u)   in | out
// Membership is reflexive: u belongs to all four of its own components.
enum class ComponentType { in_ = 0, out_ = 1, weak = 2, strong = 3 };
inline constexpr std::array<ComponentType, 4> all_component_types{
    ComponentType::in_, ComponentType::out_, ComponentType::weak, ComponentType::strong};
const char* component_type_name(ComponentType t);

struct SccInfo {
    std::vector<std::uint32_t> comp;    // node -> scc id (reverse topological order)
    std::vector<std::uint32_t> sizes;   // scc id -> node count
    std::uint32_t count = 0;
};

SccInfo scc_decompose(const SinrGraph& g);

std::vector<std::uint32_t> out_component(const SinrGraph& g, std::uint32_t root);
std::vector<std::uint32_t> in_component(const SinrGraph& g, std::uint32_t root);

struct ComponentReport {
    std::uint32_t root = 0;
    std::array<std::vector<std::uint32_t>, 4> members;   // indexed by ComponentType
    std::array<double, 4> fraction{};                    // size / n

    const std::vector<std::uint32_t>& of(ComponentType t) const {
        return members[std::size_t(t)];
    }
    double frac(ComponentType t) const { return fraction[std::size_t(t)]; }
};

ComponentReport component_report(const SinrGraph& g, std::uint32_t root);

// node labels relative to a root: 0 unrelated, 1 strong, 2 in-only, 3 out-only
std::vector<std::uint8_t> labels_for_root(const SinrGraph& g, std::uint32_t root);

struct GiantStats {
    std::array<std::uint32_t, 4> size{};      // largest component of each type
    std::array<double, 4> fraction{};
    std::array<std::uint32_t, 4> best_root{}; // a root attaining the maximum
    bool exact = true;                        // false when root sampling was used

    std::uint32_t size_of(ComponentType t) const { return size[std::size_t(t)]; }
    double frac(ComponentType t) const { return fraction[std::size_t(t)]; }
};

GiantStats giant_stats(const SinrGraph& g);

// connectivity of an undirected coupling (diagnostic)
struct UndirectedComponents {
    std::vector<std::uint32_t> label;
    std::uint32_t count = 0;
    std::uint32_t largest = 0;
};

UndirectedComponents connected_components(const UndirectedView& v);

}  // namespace sinrperc
