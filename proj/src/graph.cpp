#include "sinrperc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrperc {

namespace {

// attenuation evaluator with the pow() specialized away for small integer exponents
struct FastAtten {
    const AttenuationModel* m = nullptr;
    bool shifted = true;
    double shift = 1.0, exponent = 1.0;
    int iexp = 1;

    FastAtten() = default;   // placeholder, only for paths that never evaluate it
    explicit FastAtten(const AttenuationModel& a) : m(&a) {
        shifted = a.kind == AttenuationModel::Kind::shifted_power_law;
        shift = a.shift;
        exponent = a.exponent;
        double r = std::round(exponent);
        if (shifted && r == exponent && r >= 1.0 && r <= 8.0) iexp = int(r);
    }

    double operator()(double d) const {
        if (!shifted) return m->eval(d);
        if (iexp) {
            double inv = 1.0 / (d + shift), acc = inv;
            for (int k = 1; k < iexp; ++k) acc *= inv;
            return acc;
        }
        return std::pow(d + shift, -exponent);
    }
};

// fixed-radius neighbor search; cell size = max radius so candidates live in
// the 3x3 block around a node's cell
struct CellGrid {
    const Configuration* cfg = nullptr;
    double cell = 1.0;
    int ncx = 1, ncy = 1;
    bool torus = false;
    std::vector<std::uint32_t> starts, items;
    bool all_pairs = false;   // degenerate region: brute force instead

    CellGrid(const Configuration& c, double radius_max) : cfg(&c) {
        torus = c.region.boundary == Region::Boundary::torus;
        cell = std::max(radius_max, 1e-12);
        ncx = std::max(1, int(c.region.width / cell));
        ncy = std::max(1, int(c.region.height / cell));
        all_pairs = ncx < 4 || ncy < 4 || c.size() < 64;
        if (all_pairs) return;
        std::vector<std::uint32_t> count(std::size_t(ncx) * ncy + 1, 0);
        auto cell_of = [&](const Vec2& p) {
            int cx = std::min(ncx - 1, int(p.x / c.region.width * ncx));
            int cy = std::min(ncy - 1, int(p.y / c.region.height * ncy));
            return std::size_t(cy) * ncx + cx;
        };
        for (std::size_t i = 0; i < c.size(); ++i) ++count[cell_of(c.positions[i]) + 1];
        for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
        starts = count;
        items.resize(c.size());
        std::vector<std::uint32_t> cursor(starts.begin(), starts.end() - 1);
        for (std::size_t i = 0; i < c.size(); ++i)
            items[cursor[cell_of(c.positions[i])]++] = std::uint32_t(i);
    }

    template <class F>
    void for_candidates(std::uint32_t i, F&& fn) const {
        const auto& c = *cfg;
        if (all_pairs) {
            for (std::uint32_t j = 0; j < c.size(); ++j)
                if (j != i) fn(j);
            return;
        }
        const Vec2& p = c.positions[i];
        int cx = std::min(ncx - 1, int(p.x / c.region.width * ncx));
        int cy = std::min(ncy - 1, int(p.y / c.region.height * ncy));
        for (int dy = -1; dy <= 1; ++dy) {
            int yy = cy + dy;
            if (torus) yy = (yy + ncy) % ncy;
            else if (yy < 0 || yy >= ncy) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                int xx = cx + dx;
                if (torus) xx = (xx + ncx) % ncx;
                else if (xx < 0 || xx >= ncx) continue;
                std::size_t cidx = std::size_t(yy) * ncx + xx;
                for (std::uint32_t s = starts[cidx]; s < starts[cidx + 1]; ++s)
                    if (items[s] != i) fn(items[s]);
            }
        }
    }
};

}  // namespace

bool SinrGraph::has_arc(std::uint32_t i, std::uint32_t j) const {
    auto b = out_nbrs.begin() + out_offsets[i], e = out_nbrs.begin() + out_offsets[i + 1];
    return std::binary_search(b, e, j);
}

bool UndirectedView::has_edge(std::uint32_t i, std::uint32_t j) const {
    auto b = nbrs.begin() + offsets[i], e = nbrs.begin() + offsets[i + 1];
    return std::binary_search(b, e, j);
}

std::vector<double> shot_noise_totals(const Configuration& config,
                                      const AttenuationModel& atten) {
    FastAtten L(atten);
    std::size_t n = config.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const Vec2& pj = config.positions[j];
        for (std::size_t k = 0; k < j; ++k) {
            double l = L(std::sqrt(config.region.dist2(pj, config.positions[k])));
            s[j] += config.marks[k] * l;
            s[k] += config.marks[j] * l;
        }
    }
    return s;
}

SinrGraph build_directed(const Configuration& config, const ModelSet& model) {
    SinrGraph g;
    g.n = config.size();
    g.params = model.params;
    const double gamma = model.params.gamma;
    const double beta = model.params.beta;
    const double n0 = model.params.n0;

    if (gamma > 0.0 && (model.law.radius_direct || !model.atten))
        throw std::invalid_argument("build_directed: interference needs powers and attenuation");

    std::vector<double> radii = radii_of(config, model);
    double r_max = 0.0;
    for (double r : radii) r_max = std::max(r_max, r);

    if (gamma > 0.0) g.receiver_totals = shot_noise_totals(config, *model.atten);

    FastAtten L = model.atten ? FastAtten(*model.atten) : FastAtten();
    CellGrid grid(config, r_max);

    std::vector<std::vector<std::uint32_t>> out(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        double ri2 = radii[i] * radii[i];
        grid.for_candidates(i, [&](std::uint32_t j) {
            double d2 = config.region.dist2(config.positions[i], config.positions[j]);
            if (d2 > ri2) return;   // signal below noise floor alone
            if (gamma > 0.0) {
                double sig = config.marks[i] * L(std::sqrt(d2));
                double interference = g.receiver_totals[j] - sig;
                if (sig / (n0 + gamma * interference) < beta) return;
            }
            out[i].push_back(j);
        });
        std::sort(out[i].begin(), out[i].end());
    }

    g.out_offsets.assign(g.n + 1, 0);
    for (std::uint32_t i = 0; i < g.n; ++i)
        g.out_offsets[i + 1] = g.out_offsets[i] + std::uint32_t(out[i].size());
    g.arc_count = g.out_offsets[g.n];
    g.out_nbrs.reserve(g.arc_count);
    for (auto& v : out)
        g.out_nbrs.insert(g.out_nbrs.end(), v.begin(), v.end());

    // reverse CSR
    g.in_offsets.assign(g.n + 1, 0);
    for (std::uint32_t j : g.out_nbrs) ++g.in_offsets[j + 1];
    for (std::size_t i = 1; i <= g.n; ++i) g.in_offsets[i] += g.in_offsets[i - 1];
    g.in_nbrs.resize(g.arc_count);
    std::vector<std::uint32_t> cursor(g.in_offsets.begin(), g.in_offsets.end() - 1);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t s = g.out_offsets[i]; s < g.out_offsets[i + 1]; ++s)
            g.in_nbrs[cursor[g.out_nbrs[s]]++] = i;
    // in_nbrs come out sorted because sources are visited in increasing order
    return g;
}

UndirectedView derive_undirected(const SinrGraph& g, UndirectedView::Rule rule) {
    UndirectedView v;
    v.n = g.n;
    v.rule = rule;
    std::vector<std::vector<std::uint32_t>> adj(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        auto ob = g.out_nbrs.begin() + g.out_offsets[i], oe = g.out_nbrs.begin() + g.out_offsets[i + 1];
        auto ib = g.in_nbrs.begin() + g.in_offsets[i], ie = g.in_nbrs.begin() + g.in_offsets[i + 1];
        auto& a = adj[i];
        if (rule == UndirectedView::Rule::min_rule)
            std::set_intersection(ob, oe, ib, ie, std::back_inserter(a));
        else
            std::set_union(ob, oe, ib, ie, std::back_inserter(a));
    }
    v.offsets.assign(g.n + 1, 0);
    for (std::uint32_t i = 0; i < g.n; ++i)
        v.offsets[i + 1] = v.offsets[i] + std::uint32_t(adj[i].size());
    v.nbrs.reserve(v.offsets[g.n]);
    for (auto& a : adj) v.nbrs.insert(v.nbrs.end(), a.begin(), a.end());
    v.edge_count = v.offsets[g.n] / 2;
    return v;
}

}  // namespace sinrperc
