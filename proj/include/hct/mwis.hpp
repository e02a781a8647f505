#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "hct/graph.hpp"
#include "hct/grid.hpp"
#include "hct/model.hpp"

namespace hct {

struct MwisResult {
    std::vector<int> chosen;  // sorted grain ids
    long double total_weight = 0.0L;
    bool optimal = true;
};

namespace detail {

// Deterministic stand-in for a translation-invariant tie rule: among
// co-optimal sets, prefer the one whose sorted center sequence (then
// radius) is lexicographically smallest.
using TieKey = std::vector<std::array<double, 4>>;

inline TieKey tie_key(const std::vector<int>& ids, const Configuration& config) {
    TieKey key;
    key.reserve(ids.size());
    for (int id : ids) {
        const Grain& g = config.grain(id);
        key.push_back({g.center[0], g.center[1], g.center[2], g.radius});
    }
    std::sort(key.begin(), key.end());
    return key;
}

inline bool tie_less(const TieKey& a, const TieKey& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void check_weight_range(std::span<const int> ids, const Configuration& config,
                               const WeightSpec& h) {
    if (h.kind != WeightSpec::Kind::ExpRadius) return;
    double max_r = 0.0;
    for (int id : ids) max_r = std::max(max_r, config.grain(id).radius);
    if (h.a * max_r > 11000.0)
        throw WeightRangeError("exp-radius exponent too large for direct sums; a*r_max = " +
                               std::to_string(h.a * max_r));
}

// Induced adjacency on a subset of grains, as sorted local index lists.
inline std::vector<std::vector<int>> induced_adjacency(const std::vector<int>& ids,
                                                       const Configuration& config) {
    std::vector<std::vector<int>> adj(ids.size());
    if (ids.empty()) return adj;
    std::vector<int> local_of(static_cast<std::size_t>(config.size()), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) local_of[static_cast<std::size_t>(ids[i])] = static_cast<int>(i);
    SpatialGrid grid(config, ids);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const Grain& gi = config.grain(ids[i]);
        grid.for_overlap_candidates(gi.center, [&](int jid) {
            int j = local_of[static_cast<std::size_t>(jid)];
            if (j <= static_cast<int>(i)) return;
            if (interiors_overlap(gi, config.grain(jid), config.window)) {
                adj[i].push_back(j);
                adj[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
            }
        });
    }
    for (auto& n : adj) std::sort(n.begin(), n.end());
    return adj;
}

// Branch and bound on one connected component of <= 64 vertices, bitmask
// based. Branches on the vertex of maximal residual degree; prunes with a
// greedy clique-cover bound. Ties resolved by the center-lexicographic key.
class ComponentSolver {
  public:
    ComponentSolver(const std::vector<int>& ids, const std::vector<std::uint64_t>& adj,
                    const std::vector<long double>& w, const Configuration& config)
        : ids_(ids), adj_(adj), w_(w), config_(config) {
        n_ = static_cast<int>(ids.size());
        order_.resize(static_cast<std::size_t>(n_));
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            return w_[static_cast<std::size_t>(a)] > w_[static_cast<std::size_t>(b)];
        });
    }

    MwisResult solve() {
        best_weight_ = -1.0L;
        recurse(n_ == 64 ? ~0ull : ((1ull << n_) - 1), 0.0L, 0ull);
        MwisResult result;
        for (int v = 0; v < n_; ++v)
            if (best_mask_ >> v & 1) result.chosen.push_back(ids_[static_cast<std::size_t>(v)]);
        std::sort(result.chosen.begin(), result.chosen.end());
        result.total_weight = best_weight_;
        return result;
    }

  private:
    long double clique_cover_bound(std::uint64_t pending) const {
        // Partition `pending` greedily into cliques (heaviest vertex first);
        // an independent set takes at most the max weight from each clique.
        std::uint64_t clique_mask[64];
        int cliques = 0;
        long double bound = 0.0L;
        for (int v : order_) {
            if (!(pending >> v & 1)) continue;
            bool placed = false;
            for (int c = 0; c < cliques; ++c) {
                if ((clique_mask[c] & ~adj_[static_cast<std::size_t>(v)]) == 0) {
                    clique_mask[c] |= 1ull << v;
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                clique_mask[cliques] = 1ull << v;
                bound += w_[static_cast<std::size_t>(v)];  // heaviest joins first
                ++cliques;
            }
        }
        return bound;
    }

    void offer(long double weight, std::uint64_t mask) {
        if (weight > best_weight_) {
            best_weight_ = weight;
            best_mask_ = mask;
        } else if (weight == best_weight_) {
            auto key = mask_key(mask);
            if (detail::tie_less(key, mask_key(best_mask_))) best_mask_ = mask;
        }
    }

    TieKey mask_key(std::uint64_t mask) const {
        std::vector<int> ids;
        for (int v = 0; v < n_; ++v)
            if (mask >> v & 1) ids.push_back(ids_[static_cast<std::size_t>(v)]);
        return tie_key(ids, config_);
    }

    void recurse(std::uint64_t pending, long double weight, std::uint64_t chosen) {
        if (pending == 0) {
            offer(weight, chosen);
            return;
        }
        if (weight + clique_cover_bound(pending) < best_weight_) return;

        int pick = -1, pick_deg = -1;
        for (std::uint64_t m = pending; m;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            int deg = std::popcount(adj_[static_cast<std::size_t>(v)] & pending);
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        // Include first: better incumbents earlier.
        recurse(pending & ~adj_[static_cast<std::size_t>(pick)] & ~(1ull << pick),
                weight + w_[static_cast<std::size_t>(pick)], chosen | (1ull << pick));
        recurse(pending & ~(1ull << pick), weight, chosen);
    }

    const std::vector<int>& ids_;
    const std::vector<std::uint64_t>& adj_;
    const std::vector<long double>& w_;
    const Configuration& config_;
    int n_ = 0;
    std::vector<int> order_;
    long double best_weight_ = -1.0L;
    std::uint64_t best_mask_ = 0;
};

}  // namespace detail

// Exact maximum-weight independent set over the induced contact graph of
// `ids`. Every connected component must have at most `cap` vertices
// (ComponentTooLarge otherwise); components are solved independently.
inline MwisResult solve_exact(std::span<const int> ids, const Configuration& config,
                              const WeightSpec& h, int cap = 40) {
    if (cap < 1 || cap > 64) throw std::invalid_argument("cap must be in [1, 64]");
    std::vector<int> sorted_ids(ids.begin(), ids.end());
    std::sort(sorted_ids.begin(), sorted_ids.end());
    sorted_ids.erase(std::unique(sorted_ids.begin(), sorted_ids.end()), sorted_ids.end());
    for (int id : sorted_ids) config.grain(id);  // validates
    detail::check_weight_range(sorted_ids, config, h);

    auto adj = detail::induced_adjacency(sorted_ids, config);

    // Split into connected components (local indices).
    int n = static_cast<int>(sorted_ids.size());
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> components;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        int c = static_cast<int>(components.size());
        components.push_back({});
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            components[static_cast<std::size_t>(c)].push_back(v);
            for (int u : adj[static_cast<std::size_t>(v)])
                if (comp[static_cast<std::size_t>(u)] < 0) {
                    comp[static_cast<std::size_t>(u)] = c;
                    stack.push_back(u);
                }
        }
    }
    for (const auto& c : components)
        if (static_cast<int>(c.size()) > cap) throw ComponentTooLarge(static_cast<int>(c.size()));

    MwisResult result;
    for (auto cmp : components) {
        std::sort(cmp.begin(), cmp.end());
        std::vector<int> comp_ids;
        std::vector<std::uint64_t> comp_adj(cmp.size(), 0);
        std::vector<long double> comp_w;
        std::vector<int> local_of(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < cmp.size(); ++i) local_of[static_cast<std::size_t>(cmp[i])] = static_cast<int>(i);
        for (std::size_t i = 0; i < cmp.size(); ++i) {
            comp_ids.push_back(sorted_ids[static_cast<std::size_t>(cmp[i])]);
            comp_w.push_back(h.value_l(config.grain(comp_ids.back()), config.window.dim));
            for (int u : adj[static_cast<std::size_t>(cmp[i])])
                comp_adj[i] |= 1ull << local_of[static_cast<std::size_t>(u)];
        }
        detail::ComponentSolver solver(comp_ids, comp_adj, comp_w, config);
        MwisResult part = solver.solve();
        result.chosen.insert(result.chosen.end(), part.chosen.begin(), part.chosen.end());
        result.total_weight += part.total_weight;
    }
    std::sort(result.chosen.begin(), result.chosen.end());
    result.optimal = true;
    return result;
}

// Exhaustive oracle: enumerates every subset of `ids` (at most 20).
// Deliberately avoids the branch-and-bound path.
inline MwisResult brute_force(std::span<const int> ids, const Configuration& config,
                              const WeightSpec& h) {
    if (ids.size() > 20) throw TooManyGrains(ids.size());
    std::vector<int> v(ids.begin(), ids.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    detail::check_weight_range(v, config, h);

    int n = static_cast<int>(v.size());
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    std::vector<long double> w(static_cast<std::size_t>(n), 0.0L);
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = h.value_l(config.grain(v[static_cast<std::size_t>(i)]), config.window.dim);
        for (int j = i + 1; j < n; ++j)
            if (interiors_overlap(config.grain(v[static_cast<std::size_t>(i)]),
                                  config.grain(v[static_cast<std::size_t>(j)]), config.window)) {
                adj[static_cast<std::size_t>(i)] |= 1ull << j;
                adj[static_cast<std::size_t>(j)] |= 1ull << i;
            }
    }

    long double best_w = -1.0L;
    std::uint64_t best_mask = 0;
    detail::TieKey best_key;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        bool independent = true;
        long double total = 0.0L;
        for (std::uint64_t m = mask; m;) {
            int i = std::countr_zero(m);
            m &= m - 1;
            if (adj[static_cast<std::size_t>(i)] & mask) {
                independent = false;
                break;
            }
            total += w[static_cast<std::size_t>(i)];
        }
        if (!independent) continue;
        if (total > best_w) {
            best_w = total;
            best_mask = mask;
            best_key.clear();
        } else if (total == best_w) {
            std::vector<int> cand;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) cand.push_back(v[static_cast<std::size_t>(i)]);
            auto key = detail::tie_key(cand, config);
            if (best_key.empty()) {
                std::vector<int> cur;
                for (int i = 0; i < n; ++i)
                    if (best_mask >> i & 1) cur.push_back(v[static_cast<std::size_t>(i)]);
                best_key = detail::tie_key(cur, config);
            }
            if (detail::tie_less(key, best_key)) {
                best_mask = mask;
                best_key = key;
            }
        }
    }

    MwisResult result;
    for (int i = 0; i < n; ++i)
        if (best_mask >> i & 1) result.chosen.push_back(v[static_cast<std::size_t>(i)]);
    result.total_weight = best_w < 0 ? 0.0L : best_w;
    return result;
}

}  // namespace hct
