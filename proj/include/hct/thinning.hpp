#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hct/graph.hpp"
#include "hct/mwis.hpp"
#include "hct/tessellation.hpp"

namespace hct {

// A realizationwise subset of a configuration's grains. `hard_core` states
// whether the kept interiors are actually pairwise disjoint; only the
// cell-center construction (thin_plus) may legitimately report false.
struct Thinning {
    std::vector<int> kept;  // sorted grain ids
    std::string source;
    bool hard_core = true;

    bool contains(int id) const { return std::binary_search(kept.begin(), kept.end(), id); }
};

// Independent O(k^2) overlap scan, deliberately bypassing the spatial index
// and the contact graph.
inline bool verify_hard_core(const Configuration& config, const std::vector<int>& kept) {
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = i + 1; j < kept.size(); ++j)
            if (interiors_overlap(config.grain(kept[i]), config.grain(kept[j]), config.window))
                return false;
    return true;
}

inline long double thinning_weight_sum(const std::vector<int>& kept, const Configuration& config,
                                       const WeightSpec& h) {
    long double s = 0.0L;
    for (int id : kept) s += h.value_l(config.grain(id), config.window.dim);
    return s;
}

// Matern I: keep exactly the grains that overlap nothing.
inline Thinning matern_one(const Configuration& config) {
    ContactGraph g = build_contact_graph(config);
    Thinning t{{}, "matern_one", true};
    for (int i = 0; i < config.size(); ++i)
        if (g.adj[static_cast<std::size_t>(i)].empty()) t.kept.push_back(i);
    return t;
}

// Phi_max: the exact h-maximal hard-core subset, solved per connected
// component of the union of grains.
inline Thinning component_max(const Configuration& config, const WeightSpec& h, int cap = 40) {
    ContactGraph g = build_contact_graph(config);
    Thinning t{{}, "component_max", true};
    for (const auto& comp : connected_components(g)) {
        MwisResult r = solve_exact(comp, config, h, cap);
        t.kept.insert(t.kept.end(), r.chosen.begin(), r.chosen.end());
    }
    std::sort(t.kept.begin(), t.kept.end());
    t.hard_core = verify_hard_core(config, t.kept);
    return t;
}

// Phi^-_{Xi,max}: optimize only over grains entirely contained in their
// Voronoi cell; the union over cells stays hard-core.
inline Thinning thin_minus(const Configuration& config, const Tessellation& tess,
                           const WeightSpec& h, int cap = 40) {
    std::vector<std::vector<int>> per_cell(static_cast<std::size_t>(tess.cell_count()));
    for (int i = 0; i < config.size(); ++i) {
        const Grain& g = config.grain(i);
        int cell = tess.cell_of(g.center);
        if (tess.ball_in_cell(g.center, g.radius, cell))
            per_cell[static_cast<std::size_t>(cell)].push_back(i);
    }
    Thinning t{{}, "thin_minus", true};
    for (const auto& ids : per_cell) {
        if (ids.empty()) continue;
        MwisResult r = solve_exact(ids, config, h, cap);
        t.kept.insert(t.kept.end(), r.chosen.begin(), r.chosen.end());
    }
    std::sort(t.kept.begin(), t.kept.end());
    t.hard_core = verify_hard_core(config, t.kept);
    return t;
}

// Phi^+_{Xi,max}: optimize over grains with center in the cell; overlaps
// across cell boundaries are permitted, so the result need not be hard-core.
inline Thinning thin_plus(const Configuration& config, const Tessellation& tess,
                          const WeightSpec& h, int cap = 40) {
    std::vector<std::vector<int>> per_cell(static_cast<std::size_t>(tess.cell_count()));
    for (int i = 0; i < config.size(); ++i)
        per_cell[static_cast<std::size_t>(tess.cell_of(config.grain(i).center))].push_back(i);
    Thinning t{{}, "thin_plus", true};
    for (const auto& ids : per_cell) {
        if (ids.empty()) continue;
        MwisResult r = solve_exact(ids, config, h, cap);
        t.kept.insert(t.kept.end(), r.chosen.begin(), r.chosen.end());
    }
    std::sort(t.kept.begin(), t.kept.end());
    t.hard_core = verify_hard_core(config, t.kept);
    return t;
}

// Greedy maximal independent set in seeded random order; used as an
// arbitrary hard-core starting point for local improvement.
inline Thinning random_maximal_independent_set(const Configuration& config, std::uint64_t seed) {
    ContactGraph g = build_contact_graph(config);
    std::vector<int> order(static_cast<std::size_t>(config.size()));
    for (int i = 0; i < config.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(mix_seed(seed, "random-mis", 0));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);

    std::vector<char> taken(static_cast<std::size_t>(config.size()), 0);
    std::vector<char> blocked(static_cast<std::size_t>(config.size()), 0);
    Thinning t{{}, "random_mis", true};
    for (int id : order) {
        if (blocked[static_cast<std::size_t>(id)]) continue;
        taken[static_cast<std::size_t>(id)] = 1;
        t.kept.push_back(id);
        for (int nb : g.adj[static_cast<std::size_t>(id)]) blocked[static_cast<std::size_t>(nb)] = 1;
    }
    std::sort(t.kept.begin(), t.kept.end());
    return t;
}

// Per-cell surface bound: the excess of the center-rule optimum over the
// containment-rule optimum is at most the total weight of grains whose ball
// crosses their cell boundary. Evaluated exactly per realization.
struct CellBound {
    int cell = 0;
    long double plus_sum = 0.0L;
    long double minus_sum = 0.0L;
    long double boundary_sum = 0.0L;
    // minus_sum + boundary_sum - plus_sum, accumulated after cancelling
    // grains that appear on both sides, so exact-equality cells give 0.
    long double slack = 0.0L;
    int n_plus = 0, n_minus = 0, n_boundary = 0;
    bool satisfied = true;
};

struct WindowInequalityReport {
    std::vector<CellBound> cells;
    int violating_cells = 0;
    long double plus_total = 0.0L, minus_total = 0.0L;
    long double t_total = 0.0L;
    long double t_inside_sum = 0.0L;  // weight of t's grains fully inside their cell
    bool t_inside_le_plus = true;     // sandwich check for the supplied thinning
    double m = 0.0;
};

inline WindowInequalityReport window_inequality_check(const Configuration& config,
                                                      const Thinning& t, const Tessellation& tess,
                                                      const WeightSpec& h, double m, int cap = 40) {
    const int dim = config.window.dim;
    int n_cells = tess.cell_count();
    std::vector<std::vector<int>> center_in(static_cast<std::size_t>(n_cells));
    std::vector<std::vector<int>> contained_in(static_cast<std::size_t>(n_cells));
    std::vector<char> contained(static_cast<std::size_t>(config.size()), 0);
    for (int i = 0; i < config.size(); ++i) {
        const Grain& g = config.grain(i);
        int cell = tess.cell_of(g.center);
        center_in[static_cast<std::size_t>(cell)].push_back(i);
        if (tess.ball_in_cell(g.center, g.radius, cell)) {
            contained[static_cast<std::size_t>(i)] = 1;
            contained_in[static_cast<std::size_t>(cell)].push_back(i);
        }
    }

    WindowInequalityReport report;
    report.m = m;
    std::vector<int> sign(static_cast<std::size_t>(config.size()), 0);
    std::vector<int> plus_chosen_all;
    for (int cell = 0; cell < n_cells; ++cell) {
        CellBound row;
        row.cell = cell;
        const auto& plus_ids = center_in[static_cast<std::size_t>(cell)];
        const auto& minus_ids = contained_in[static_cast<std::size_t>(cell)];
        MwisResult plus, minus;
        if (!plus_ids.empty()) {
            plus = solve_exact(plus_ids, config, h, cap);
            row.plus_sum = plus.total_weight;
            row.n_plus = static_cast<int>(plus.chosen.size());
        }
        if (!minus_ids.empty()) {
            minus = solve_exact(minus_ids, config, h, cap);
            row.minus_sum = minus.total_weight;
            row.n_minus = static_cast<int>(minus.chosen.size());
        }
        std::vector<int> touched;
        for (int id : minus.chosen) {
            ++sign[static_cast<std::size_t>(id)];
            touched.push_back(id);
        }
        for (int id : plus_ids)
            if (!contained[static_cast<std::size_t>(id)]) {
                row.boundary_sum += h.value_l(config.grain(id), dim);
                ++row.n_boundary;
                ++sign[static_cast<std::size_t>(id)];
                touched.push_back(id);
            }
        for (int id : plus.chosen) {
            --sign[static_cast<std::size_t>(id)];
            touched.push_back(id);
            plus_chosen_all.push_back(id);
        }
        for (int id : touched) {
            int s = sign[static_cast<std::size_t>(id)];
            if (s != 0) row.slack += s * h.value_l(config.grain(id), dim);
            sign[static_cast<std::size_t>(id)] = 0;
        }
        row.satisfied = row.slack >= 0.0L;
        if (!row.satisfied) ++report.violating_cells;
        report.plus_total += row.plus_sum;
        report.minus_total += row.minus_sum;
        report.cells.push_back(row);
    }

    std::vector<int> t_inside;
    for (int id : t.kept) {
        long double w = h.value_l(config.grain(id), dim);
        report.t_total += w;
        if (contained[static_cast<std::size_t>(id)]) {
            report.t_inside_sum += w;
            t_inside.push_back(id);
        }
    }
    // plus_total - t_inside_sum with common grains cancelled by id
    long double margin = 0.0L;
    std::vector<int> touched;
    for (int id : plus_chosen_all) {
        ++sign[static_cast<std::size_t>(id)];
        touched.push_back(id);
    }
    for (int id : t_inside) {
        --sign[static_cast<std::size_t>(id)];
        touched.push_back(id);
    }
    for (int id : touched) {
        int s = sign[static_cast<std::size_t>(id)];
        if (s != 0) margin += s * h.value_l(config.grain(id), dim);
        sign[static_cast<std::size_t>(id)] = 0;
    }
    report.t_inside_le_plus = margin >= 0.0L;
    return report;
}

}  // namespace hct
