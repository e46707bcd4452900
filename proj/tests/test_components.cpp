#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sinrperc/components.hpp"

using namespace sinrperc;

namespace {

// hand-built directed graph on n nodes from an arc list
SinrGraph graph_of(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs) {
    SinrGraph g;
    g.n = n;
    g.arc_count = arcs.size();
    std::sort(arcs.begin(), arcs.end());
    g.out_offsets.assign(n + 1, 0);
    for (auto [i, j] : arcs) { (void)j; ++g.out_offsets[i + 1]; }
    for (std::size_t i = 0; i < n; ++i) g.out_offsets[i + 1] += g.out_offsets[i];
    for (auto [i, j] : arcs) { (void)i; g.out_nbrs.push_back(j); }
    // reverse
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rev;
    for (auto [i, j] : arcs) rev.emplace_back(j, i);
    std::sort(rev.begin(), rev.end());
    g.in_offsets.assign(n + 1, 0);
    for (auto [j, i] : rev) { (void)i; ++g.in_offsets[j + 1]; }
    for (std::size_t j = 0; j < n; ++j) g.in_offsets[j + 1] += g.in_offsets[j];
    for (auto [j, i] : rev) { (void)j; g.in_nbrs.push_back(i); }
    return g;
}

ModelSet radius_model(double r_lo, double r_hi) {
    ModelSet m;
    m.params = {0.25, 0.1, 0.0};
    m.law = PowerDistribution::binary_radius(r_lo, r_hi, 0.5);
    return m;
}

SinrGraph sample_graph(std::size_t n, double lambda, std::uint64_t seed, ModelSet& m) {
    Region r = square_region_for(n, lambda);
    Configuration c = sample_configuration(lambda, r, m.law, CountMode::fixed(n), seed);
    return build_directed(c, m);
}

}  // namespace

TEST_CASE("chain and cycle components by hand") {
    // 0 -> 1 -> 2 -> 3, plus 3 -> 1 closing a cycle {1,2,3}; 4 isolated
    SinrGraph g = graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}});

    SccInfo scc = scc_decompose(g);
    CHECK(scc.count == 3);
    CHECK(scc.comp[1] == scc.comp[2]);
    CHECK(scc.comp[2] == scc.comp[3]);
    CHECK(scc.comp[0] != scc.comp[1]);
    CHECK(scc.comp[4] != scc.comp[1]);
    CHECK(scc.sizes[scc.comp[1]] == 3);

    ComponentReport at0 = component_report(g, 0);
    CHECK(at0.of(ComponentType::out_) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(at0.of(ComponentType::in_) == std::vector<std::uint32_t>{0});
    CHECK(at0.of(ComponentType::weak) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(at0.of(ComponentType::strong) == std::vector<std::uint32_t>{0});
    CHECK(at0.frac(ComponentType::out_) == doctest::Approx(0.8));

    ComponentReport at2 = component_report(g, 2);
    CHECK(at2.of(ComponentType::in_) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(at2.of(ComponentType::strong) == std::vector<std::uint32_t>{1, 2, 3});

    GiantStats giant = giant_stats(g);
    CHECK(giant.size_of(ComponentType::out_) == 4);
    CHECK(giant.size_of(ComponentType::in_) == 4);
    CHECK(giant.size_of(ComponentType::weak) == 4);
    CHECK(giant.size_of(ComponentType::strong) == 3);
    CHECK(giant.best_root[std::size_t(ComponentType::out_)] == 0);
    CHECK(giant.exact);

    auto lab = labels_for_root(g, 2);
    CHECK(lab == std::vector<std::uint8_t>{2, 1, 1, 1, 0});

    // a single node is all four of its own components
    ComponentReport at4 = component_report(g, 4);
    for (auto t : all_component_types)
        CHECK(at4.of(t) == std::vector<std::uint32_t>{4});
}

TEST_CASE("components match the transitive closure on random graphs") {
    ModelSet m = radius_model(0.8, 1.6);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        std::size_t n = 10 + 2 * seed;
        Region r = square_region_for(n, 1.2);
        Configuration c = sample_configuration(1.2, r, m.law, CountMode::fixed(n), seed);
        SinrGraph g = build_directed(c, m);
        auto reach = oracle::closure(oracle::adjacency(c, m));
        for (std::uint32_t root = 0; root < n; ++root) {
            oracle::RootSets want = oracle::root_sets(reach, root);
            ComponentReport got = component_report(g, root);
            CHECK(got.of(ComponentType::in_) == want.in);
            CHECK(got.of(ComponentType::out_) == want.out);
            CHECK(got.of(ComponentType::weak) == want.weak);
            CHECK(got.of(ComponentType::strong) == want.strong);
        }
    }
}

TEST_CASE("giant statistics agree with per-root enumeration") {
    ModelSet m = radius_model(0.7, 1.5);
    for (std::uint64_t seed : {3, 4, 5}) {
        SinrGraph g = sample_graph(200, 1.5, seed, m);
        GiantStats giant = giant_stats(g);
        std::array<std::uint32_t, 4> best{};
        for (std::uint32_t root = 0; root < g.n; ++root) {
            ComponentReport rep = component_report(g, root);
            for (auto t : all_component_types)
                best[std::size_t(t)] =
                    std::max(best[std::size_t(t)], std::uint32_t(rep.of(t).size()));
        }
        for (auto t : all_component_types) {
            CHECK(giant.size_of(t) == best[std::size_t(t)]);
            ComponentReport at_best = component_report(g, giant.best_root[std::size_t(t)]);
            CHECK(std::uint32_t(at_best.of(t).size()) == best[std::size_t(t)]);
        }
        CHECK(giant.exact);
    }
}

TEST_CASE("set identities among the four component types") {
    ModelSet m = radius_model(0.6, 1.8);
    SinrGraph g = sample_graph(300, 1.0, 21, m);
    for (std::uint32_t root = 0; root < 50; ++root) {
        ComponentReport rep = component_report(g, root);
        const auto& in = rep.of(ComponentType::in_);
        const auto& out = rep.of(ComponentType::out_);
        const auto& weak = rep.of(ComponentType::weak);
        const auto& strong = rep.of(ComponentType::strong);

        std::vector<std::uint32_t> tmp;
        std::set_intersection(in.begin(), in.end(), out.begin(), out.end(),
                              std::back_inserter(tmp));
        CHECK(tmp == strong);
        tmp.clear();
        std::set_union(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(tmp));
        CHECK(tmp == weak);
        CHECK(std::binary_search(strong.begin(), strong.end(), root));
        CHECK(in.size() + out.size() == weak.size() + strong.size());
        CHECK(std::includes(weak.begin(), weak.end(), in.begin(), in.end()));
        CHECK(std::includes(weak.begin(), weak.end(), out.begin(), out.end()));

        auto lab = labels_for_root(g, root);
        for (std::uint32_t v = 0; v < g.n; ++v) {
            bool is_in = std::binary_search(in.begin(), in.end(), v);
            bool is_out = std::binary_search(out.begin(), out.end(), v);
            std::uint8_t want = is_in && is_out ? 1 : is_in ? 2 : is_out ? 3 : 0;
            CHECK(lab[v] == want);
        }
    }
}

TEST_CASE("on a symmetric graph all four component types coincide") {
    ModelSet m = radius_model(1.1, 1.1);   // equal radii make every arc mutual
    SinrGraph g = sample_graph(250, 1.3, 8, m);
    GiantStats giant = giant_stats(g);
    for (auto t : all_component_types)
        CHECK(giant.size_of(t) == giant.size_of(ComponentType::strong));
    for (std::uint32_t root = 0; root < 25; ++root) {
        ComponentReport rep = component_report(g, root);
        CHECK(rep.of(ComponentType::in_) == rep.of(ComponentType::out_));
        CHECK(rep.of(ComponentType::weak) == rep.of(ComponentType::strong));
    }

    // and they equal the undirected components of either coupling
    UndirectedView lower = derive_undirected(g, UndirectedView::Rule::min_rule);
    UndirectedView upper = derive_undirected(g, UndirectedView::Rule::max_rule);
    CHECK(lower.edge_count == upper.edge_count);
    UndirectedComponents uc = connected_components(lower);
    CHECK(uc.largest == giant.size_of(ComponentType::strong));
    for (std::uint32_t root = 0; root < 25; ++root) {
        ComponentReport rep = component_report(g, root);
        std::size_t same = 0;
        for (std::uint32_t v = 0; v < g.n; ++v)
            same += uc.label[v] == uc.label[root];
        CHECK(same == rep.of(ComponentType::strong).size());
    }
}

TEST_CASE("empty and singleton graphs") {
    SinrGraph g0 = graph_of(0, {});
    GiantStats s0 = giant_stats(g0);
    for (auto t : all_component_types) CHECK(s0.size_of(t) == 0);

    SinrGraph g1 = graph_of(1, {});
    GiantStats s1 = giant_stats(g1);
    for (auto t : all_component_types) {
        CHECK(s1.size_of(t) == 1);
        CHECK(s1.frac(t) == 1.0);
    }
    CHECK(scc_decompose(g1).count == 1);
}
