#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "hct/grid.hpp"
#include "hct/model.hpp"

namespace hct {

// Undirected intersection graph of the grains: edge iff interiors overlap.
struct ContactGraph {
    std::vector<std::vector<int>> adj;  // sorted neighbor lists, no self-loops

    int size() const { return static_cast<int>(adj.size()); }
    const std::vector<int>& neighbors(int id) const {
        if (id < 0 || id >= size()) throw UnknownGrainId(id);
        return adj[static_cast<std::size_t>(id)];
    }
    bool has_edge(int i, int j) const {
        const auto& n = neighbors(i);
        return std::binary_search(n.begin(), n.end(), j);
    }
};

inline ContactGraph build_contact_graph(const Configuration& config) {
    ContactGraph g;
    g.adj.assign(static_cast<std::size_t>(config.size()), {});
    if (config.size() == 0) return g;
    SpatialGrid grid(config);
    for (int i = 0; i < config.size(); ++i) {
        const Grain& gi = config.grain(i);
        grid.for_overlap_candidates(gi.center, [&](int j) {
            if (j <= i) return;
            if (interiors_overlap(gi, config.grain(j), config.window)) {
                g.adj[static_cast<std::size_t>(i)].push_back(j);
                g.adj[static_cast<std::size_t>(j)].push_back(i);
            }
        });
    }
    for (auto& n : g.adj) std::sort(n.begin(), n.end());
    return g;
}

// Maximal connected vertex sets, members sorted, components ordered by
// smallest member. Union-find keeps this independent of the BFS oracle
// used in tests.
inline std::vector<std::vector<int>> connected_components(const ContactGraph& graph) {
    int n = graph.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);

    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j : graph.adj[static_cast<std::size_t>(i)]) {
            int a = find(i), b = find(j);
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }

    std::vector<std::vector<int>> by_root(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(i);
    std::vector<std::vector<int>> components;
    for (auto& c : by_root)
        if (!c.empty()) components.push_back(std::move(c));
    return components;  // roots are minima, so order is by smallest member
}

// Directed version: edge from the smaller to the strictly larger radius.
struct DirectedGraph {
    std::vector<std::vector<int>> out;  // sorted target lists

    int size() const { return static_cast<int>(out.size()); }
    const std::vector<int>& targets(int id) const {
        if (id < 0 || id >= size()) throw UnknownGrainId(id);
        return out[static_cast<std::size_t>(id)];
    }
};

inline DirectedGraph build_directed_graph(const Configuration& config) {
    DirectedGraph g;
    g.out.assign(static_cast<std::size_t>(config.size()), {});
    if (config.size() == 0) return g;
    SpatialGrid grid(config);
    for (int i = 0; i < config.size(); ++i) {
        const Grain& gi = config.grain(i);
        grid.for_overlap_candidates(gi.center, [&](int j) {
            if (j == i) return;
            const Grain& gj = config.grain(j);
            if (gi.radius < gj.radius && interiors_overlap(gi, gj, config.window))
                g.out[static_cast<std::size_t>(i)].push_back(j);
        });
    }
    for (auto& t : g.out) std::sort(t.begin(), t.end());
    return g;
}

// Directed reachability set of k, including k itself.
inline std::vector<int> cluster(int k, const DirectedGraph& g) {
    if (k < 0 || k >= g.size()) throw UnknownGrainId(k);
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::vector<int> stack{k}, out;
    seen[static_cast<std::size_t>(k)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int w : g.targets(v))
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Kahn topological sort; nullopt iff the graph has a directed cycle
// (possible only under radius ties).
inline std::optional<std::vector<int>> topological_order(const DirectedGraph& g) {
    int n = g.size();
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.targets(v)) ++indeg[static_cast<std::size_t>(w)];
    std::vector<int> queue, order;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        order.push_back(v);
        for (int w : g.targets(v))
            if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

}  // namespace hct
