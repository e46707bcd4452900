#include "sinrperc/components.hpp"
#include "sinrperc/rng.hpp"

#include <algorithm>

namespace sinrperc {

const char* component_type_name(ComponentType t) {
    switch (t) {
        case ComponentType::in_: return "in";
        case ComponentType::out_: return "out";
        case ComponentType::weak: return "weak";
        case ComponentType::strong: return "strong";
    }
    return "?";
}

SccInfo scc_decompose(const SinrGraph& g) {
    // Tarjan with an explicit stack
    const std::uint32_t n = std::uint32_t(g.n);
    const std::uint32_t NONE = 0xffffffffu;
    SccInfo info;
    info.comp.assign(n, NONE);
    std::vector<std::uint32_t> index(n, NONE), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call;   // (node, next edge slot)
    std::uint32_t next_index = 0;
    stack.reserve(n);

    for (std::uint32_t s = 0; s < n; ++s) {
        if (index[s] != NONE) continue;
        call.emplace_back(s, g.out_offsets[s]);
        index[s] = low[s] = next_index++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            auto& [v, slot] = call.back();
            if (slot < g.out_offsets[v + 1]) {
                std::uint32_t w = g.out_nbrs[slot++];
                if (index[w] == NONE) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, g.out_offsets[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::uint32_t sz = 0;
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        info.comp[w] = info.count;
                        ++sz;
                        if (w == v) break;
                    }
                    info.sizes.push_back(sz);
                    ++info.count;
                }
                std::uint32_t done = v;
                call.pop_back();
                if (!call.empty()) {
                    std::uint32_t parent = call.back().first;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }
    return info;
}

namespace {
std::vector<std::uint32_t> bfs(std::size_t n, const std::vector<std::uint32_t>& offsets,
                               const std::vector<std::uint32_t>& nbrs, std::uint32_t root) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> queue{root}, members;
    seen[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t v = queue[head];
        for (std::uint32_t s = offsets[v]; s < offsets[v + 1]; ++s) {
            std::uint32_t w = nbrs[s];
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    members = std::move(queue);
    std::sort(members.begin(), members.end());
    return members;
}
}  // namespace

std::vector<std::uint32_t> out_component(const SinrGraph& g, std::uint32_t root) {
    return bfs(g.n, g.out_offsets, g.out_nbrs, root);
}

std::vector<std::uint32_t> in_component(const SinrGraph& g, std::uint32_t root) {
    return bfs(g.n, g.in_offsets, g.in_nbrs, root);
}

ComponentReport component_report(const SinrGraph& g, std::uint32_t root) {
    ComponentReport r;
    r.root = root;
    auto& in = r.members[std::size_t(ComponentType::in_)];
    auto& out = r.members[std::size_t(ComponentType::out_)];
    auto& weak = r.members[std::size_t(ComponentType::weak)];
    auto& strong = r.members[std::size_t(ComponentType::strong)];
    in = in_component(g, root);
    out = out_component(g, root);
    std::set_union(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(weak));
    std::set_intersection(in.begin(), in.end(), out.begin(), out.end(),
                          std::back_inserter(strong));
    if (g.n)
        for (auto t : all_component_types)
            r.fraction[std::size_t(t)] = double(r.members[std::size_t(t)].size()) / double(g.n);
    return r;
}

std::vector<std::uint8_t> labels_for_root(const SinrGraph& g, std::uint32_t root) {
    std::vector<std::uint8_t> lab(g.n, 0);
    ComponentReport r = component_report(g, root);
    for (auto v : r.of(ComponentType::in_)) lab[v] = 2;
    for (auto v : r.of(ComponentType::out_)) lab[v] = lab[v] == 2 ? 1 : 3;
    return lab;
}

GiantStats giant_stats(const SinrGraph& g) {
    GiantStats out;
    if (g.n == 0) return out;
    SccInfo scc = scc_decompose(g);
    const std::uint32_t C = scc.count;

    if (C > (1u << 16)) {
        // too many supernodes for the dense closure: sample roots instead
        out.exact = false;
        StreamRng rng(0x5eedu ^ g.n, streams::root_pick);
        std::uint32_t strong_best = 0;
        for (std::uint32_t c = 0; c < C; ++c)
            if (scc.sizes[c] > scc.sizes[strong_best]) strong_best = c;
        std::vector<std::uint32_t> roots;
        for (int k = 0; k < 4096; ++k)
            roots.push_back(std::uint32_t(rng.next_u64() % g.n));
        for (std::uint32_t v = 0; v < g.n; ++v)
            if (scc.comp[v] == strong_best) { roots.push_back(v); break; }
        for (std::uint32_t root : roots) {
            ComponentReport r = component_report(g, root);
            for (auto t : all_component_types) {
                auto i = std::size_t(t);
                if (r.members[i].size() > out.size[i]) {
                    out.size[i] = std::uint32_t(r.members[i].size());
                    out.best_root[i] = root;
                }
            }
        }
        for (auto t : all_component_types)
            out.fraction[std::size_t(t)] = double(out.size[std::size_t(t)]) / double(g.n);
        return out;
    }

    // condensation, comp ids in reverse topological order (arcs go high -> low)
    std::vector<std::vector<std::uint32_t>> cond(C);
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (std::uint32_t s = g.out_offsets[v]; s < g.out_offsets[v + 1]; ++s) {
            std::uint32_t a = scc.comp[v], b = scc.comp[g.out_nbrs[s]];
            if (a != b) cond[a].push_back(b);
        }
    for (auto& v : cond) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    // descendants-of-c bitsets, filled in topological order (increasing id)
    const std::uint32_t W = (C + 63) / 64;
    std::vector<std::uint64_t> desc(std::size_t(C) * W, 0);
    std::vector<double> out_weight(C, 0.0), in_weight(C, 0.0);
    for (std::uint32_t c = 0; c < C; ++c) {
        std::uint64_t* row = desc.data() + std::size_t(c) * W;
        row[c >> 6] |= 1ull << (c & 63);
        for (std::uint32_t child : cond[c]) {
            const std::uint64_t* crow = desc.data() + std::size_t(child) * W;
            for (std::uint32_t w = 0; w < W; ++w) row[w] |= crow[w];
        }
        double ow = 0.0;
        for (std::uint32_t w = 0; w < W; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                std::uint32_t b = std::uint32_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                std::uint32_t d = (w << 6) | b;
                ow += scc.sizes[d];
                in_weight[d] += scc.sizes[c];
            }
        }
        out_weight[c] = ow;
    }

    std::array<double, 4> best{};
    std::array<std::uint32_t, 4> best_comp{};
    for (std::uint32_t c = 0; c < C; ++c) {
        double weights[4] = {in_weight[c], out_weight[c],
                             in_weight[c] + out_weight[c] - scc.sizes[c],
                             double(scc.sizes[c])};
        for (int t = 0; t < 4; ++t)
            if (weights[t] > best[t]) { best[t] = weights[t]; best_comp[t] = c; }
    }
    std::array<std::uint32_t, 4> root{};
    std::array<char, 4> found{};
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (int t = 0; t < 4; ++t)
            if (!found[t] && scc.comp[v] == best_comp[t]) { root[t] = v; found[t] = 1; }
    for (int t = 0; t < 4; ++t) {
        out.size[t] = std::uint32_t(best[t] + 0.5);
        out.fraction[t] = best[t] / double(g.n);
        out.best_root[t] = root[t];
    }
    return out;
}

UndirectedComponents connected_components(const UndirectedView& v) {
    UndirectedComponents out;
    out.label.assign(v.n, 0xffffffffu);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < v.n; ++s) {
        if (out.label[s] != 0xffffffffu) continue;
        std::uint32_t sz = 0;
        queue.assign(1, s);
        out.label[s] = out.count;
        while (!queue.empty()) {
            std::uint32_t x = queue.back();
            queue.pop_back();
            ++sz;
            for (std::uint32_t k = v.offsets[x]; k < v.offsets[x + 1]; ++k) {
                std::uint32_t w = v.nbrs[k];
                if (out.label[w] == 0xffffffffu) {
                    out.label[w] = out.count;
                    queue.push_back(w);
                }
            }
        }
        out.largest = std::max(out.largest, sz);
        ++out.count;
    }
    return out;
}

}  // namespace sinrperc
