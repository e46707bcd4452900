#pragma once
#include <cstdint>
#include <vector>

#include "sinrperc/model.hpp"
#include "sinrperc/sampling.hpp"

namespace sinrperc {

// Directed graph in CSR form, arcs i -> j when i's signal clears the SINR
// threshold at j.  Neighbor lists are sorted.
struct SinrGraph {
    std::size_t n = 0;
    SinrParams params;
    std::vector<std::uint32_t> out_offsets, out_nbrs;
    std::vector<std::uint32_t> in_offsets, in_nbrs;
    std::vector<double> receiver_totals;   // S_j = sum_k P_k L(d_kj); filled when gamma > 0
    std::size_t arc_count = 0;

    bool has_arc(std::uint32_t i, std::uint32_t j) const;
};

// exact O(n^2) aggregate interference at each node
std::vector<double> shot_noise_totals(const Configuration& config,
                                      const AttenuationModel& atten);

SinrGraph build_directed(const Configuration& config, const ModelSet& model);

// Undirected couplings: keep an edge when both arcs exist (min rule, lower
// coupling) or when either arc exists (max rule, upper coupling).
struct UndirectedView {
    enum class Rule { min_rule, max_rule };
    std::size_t n = 0;
    Rule rule = Rule::min_rule;
    std::vector<std::uint32_t> offsets, nbrs;
    std::size_t edge_count = 0;   // unordered edges

    bool has_edge(std::uint32_t i, std::uint32_t j) const;
};

UndirectedView derive_undirected(const SinrGraph& g, UndirectedView::Rule rule);

}  // namespace sinrperc
