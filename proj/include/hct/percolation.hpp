#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hct/dispensable.hpp"
#include "hct/graph.hpp"
#include "hct/model.hpp"
#include "hct/rng.hpp"

namespace hct {

enum class GrainColor { Red, Green, Uncolored };

// The defining list counts intersecting grains "from the Poisson Boolean
// model"; the verbatim reading counts every grain regardless of color
// (AllGrains). The alternative parse restricts the radius-class counts to
// active grains (ActiveOnly). The witness must be active in both.
enum class SpecialDispensableParse { AllGrains, ActiveOnly };

struct ColoredConfiguration {
    Configuration base;
    std::vector<GrainColor> color;
    std::vector<char> special;  // special-dispensable among the active grains
    std::vector<double> activation_marks, green_marks;
    double p = 0.0, q = 0.0;
    SpecialDispensableParse parse = SpecialDispensableParse::AllGrains;

    bool uncolored(int id) const { return color[static_cast<std::size_t>(id)] == GrainColor::Uncolored; }
    bool active(int id) const { return color[static_cast<std::size_t>(id)] != GrainColor::Red; }
};

namespace detail {

// Marks are a pure function of (seed, grain count): activation marks first,
// then green marks, so one seed couples a whole (p, q) grid.
inline void draw_marks(std::uint64_t seed, int n, std::vector<double>& activation,
                       std::vector<double>& green) {
    Rng rng(mix_seed(seed, "color-marks", 0));
    activation.resize(static_cast<std::size_t>(n));
    green.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) activation[static_cast<std::size_t>(i)] = rng.uniform();
    for (int i = 0; i < n; ++i) green[static_cast<std::size_t>(i)] = rng.uniform();
}

inline bool special_dispensable_colored(int k, const Configuration& config,
                                        const ContactGraph& graph,
                                        const std::vector<char>& is_active,
                                        SpecialDispensableParse parse) {
    const bool active_only = (parse == SpecialDispensableParse::ActiveOnly);
    if (!(config.grain(k).radius < 1.05)) return false;
    int big = 0;
    for (int nb : graph.neighbors(k)) {
        if (active_only && !is_active[static_cast<std::size_t>(nb)]) continue;
        double r = config.grain(nb).radius;
        if (r < 1.05) return false;
        if (r > 1.05) ++big;
    }
    if (big > 3) return false;
    for (int nb : graph.neighbors(k)) {
        if (!is_active[static_cast<std::size_t>(nb)]) continue;  // witness must be active
        if (witness_condition(k, nb, graph)) return true;
    }
    return false;
}

}  // namespace detail

// Red with probability 1-p (activation mark >= p), then special-dispensable
// active grains turn green with probability 1-q (green mark >= q). Uncolored
// means active and not green.
inline ColoredConfiguration color(const Configuration& config, double p, double q,
                                  std::uint64_t seed,
                                  SpecialDispensableParse parse = SpecialDispensableParse::AllGrains) {
    if (config.window.kind != WindowKind::FreeBall)
        throw std::invalid_argument("coloring is defined on free-ball windows");
    if (!(p > 0.0) || p > 1.0 || !(q > 0.0) || q > 1.0)
        throw std::invalid_argument("p and q must lie in (0, 1]");
    for (const Grain& g : config.grains)
        if (g.radius < 1.0) throw RadiusLawMismatch("coloring requires radii in [1, m]");

    ColoredConfiguration out;
    out.base = config;
    out.p = p;
    out.q = q;
    out.parse = parse;
    detail::draw_marks(seed, config.size(), out.activation_marks, out.green_marks);

    int n = config.size();
    std::vector<char> is_active(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        is_active[static_cast<std::size_t>(i)] = out.activation_marks[static_cast<std::size_t>(i)] < p;

    ContactGraph graph = build_contact_graph(config);
    out.color.assign(static_cast<std::size_t>(n), GrainColor::Red);
    out.special.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!is_active[static_cast<std::size_t>(i)]) continue;
        bool special = detail::special_dispensable_colored(i, config, graph, is_active, parse);
        out.special[static_cast<std::size_t>(i)] = special ? 1 : 0;
        bool green = special && out.green_marks[static_cast<std::size_t>(i)] >= q;
        out.color[static_cast<std::size_t>(i)] = green ? GrainColor::Green : GrainColor::Uncolored;
    }
    return out;
}

// Uncolored chain from a grain centered in B_1(o) to one centered in the
// outermost unit annulus of B_n(o).
inline bool crossing(const ColoredConfiguration& colored, double n) {
    const Configuration& config = colored.base;
    if (config.window.kind != WindowKind::FreeBall || n > config.window.extent + 1e-9)
        throw std::invalid_argument("crossing requires the free-ball window B_n");

    auto center_norm = [&](int id) {
        double s = 0.0;
        for (int c = 0; c < config.window.dim; ++c)
            s += config.grain(id).center[c] * config.grain(id).center[c];
        return std::sqrt(s);
    };

    ContactGraph graph = build_contact_graph(config);
    std::vector<char> seen(static_cast<std::size_t>(config.size()), 0);
    std::vector<int> stack;
    for (int i = 0; i < config.size(); ++i)
        if (colored.uncolored(i) && center_norm(i) <= 1.0) {
            seen[static_cast<std::size_t>(i)] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        double norm = center_norm(v);
        if (norm > n - 1.0 && norm <= n) return true;
        for (int u : graph.neighbors(v))
            if (colored.uncolored(u) && !seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
    }
    return false;
}

struct ThetaEstimate {
    double estimate = 0.0;
    double ci_half_width = 0.0;  // 1.96 * sqrt(est*(1-est)/replicates)
    int replicates = 0;
};

struct ThetaGrid {
    std::vector<double> p_values, q_values;
    // indicators[rep][pi * q_count + qi], shared marks within a replicate
    std::vector<std::vector<char>> indicators;
    std::vector<ThetaEstimate> estimates;  // same layout as indicators rows

    const ThetaEstimate& at(std::size_t pi, std::size_t qi) const {
        return estimates[pi * q_values.size() + qi];
    }
};

namespace detail {

inline ThetaEstimate summarize(double hits, int replicates) {
    ThetaEstimate e;
    e.replicates = replicates;
    e.estimate = hits / replicates;
    e.ci_half_width = 1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / replicates);
    return e;
}

}  // namespace detail

// Coupled evaluation of a (p, q) grid: every grid point of one replicate
// sees the same configuration and the same marks.
inline ThetaGrid estimate_theta_grid(double n, double intensity, const RadiusLaw& law,
                                     std::vector<double> p_values, std::vector<double> q_values,
                                     int replicates, std::uint64_t seed,
                                     SpecialDispensableParse parse = SpecialDispensableParse::AllGrains) {
    if (replicates < 100) throw std::invalid_argument("need at least 100 replicates");
    Window window = Window::free_ball(2, n);
    ThetaGrid grid;
    grid.p_values = std::move(p_values);
    grid.q_values = std::move(q_values);
    std::vector<double> hits(grid.p_values.size() * grid.q_values.size(), 0.0);
    for (int rep = 0; rep < replicates; ++rep) {
        Configuration config = sample_poisson(
            intensity, law, window, mix_seed(seed, "theta-config", static_cast<std::uint64_t>(rep)));
        std::uint64_t marks_seed = mix_seed(seed, "theta-marks", static_cast<std::uint64_t>(rep));
        std::vector<char> row;
        for (double p : grid.p_values)
            for (double q : grid.q_values) {
                ColoredConfiguration colored = color(config, p, q, marks_seed, parse);
                row.push_back(crossing(colored, n) ? 1 : 0);
            }
        for (std::size_t i = 0; i < row.size(); ++i) hits[i] += row[i];
        grid.indicators.push_back(std::move(row));
    }
    for (double h : hits) grid.estimates.push_back(detail::summarize(h, replicates));
    return grid;
}

inline ThetaEstimate estimate_theta(double n, double intensity, const RadiusLaw& law, double p,
                                    double q, int replicates, std::uint64_t seed,
                                    SpecialDispensableParse parse = SpecialDispensableParse::AllGrains) {
    ThetaGrid grid = estimate_theta_grid(n, intensity, law, {p}, {q}, replicates, seed, parse);
    return grid.estimates.front();
}

// Independent estimation path for the q = 1 cross-check: activation-only
// thinning, no dispensability machinery anywhere.
inline ThetaEstimate estimate_theta_plain(double n, double intensity, const RadiusLaw& law,
                                          double p, int replicates, std::uint64_t seed) {
    if (replicates < 100) throw std::invalid_argument("need at least 100 replicates");
    Window window = Window::free_ball(2, n);
    double hits = 0.0;
    for (int rep = 0; rep < replicates; ++rep) {
        Configuration config = sample_poisson(
            intensity, law, window, mix_seed(seed, "theta-config", static_cast<std::uint64_t>(rep)));
        std::vector<double> activation, green_unused;
        detail::draw_marks(mix_seed(seed, "theta-marks", static_cast<std::uint64_t>(rep)),
                           config.size(), activation, green_unused);

        auto norm = [&](int id) {
            double s = 0.0;
            for (int c = 0; c < config.window.dim; ++c)
                s += config.grain(id).center[c] * config.grain(id).center[c];
            return std::sqrt(s);
        };
        auto active = [&](int id) { return activation[static_cast<std::size_t>(id)] < p; };

        // direct breadth-first search over active grains
        std::vector<char> seen(static_cast<std::size_t>(config.size()), 0);
        std::vector<int> queue;
        for (int i = 0; i < config.size(); ++i)
            if (active(i) && norm(i) <= 1.0) {
                seen[static_cast<std::size_t>(i)] = 1;
                queue.push_back(i);
            }
        bool crossed = false;
        for (std::size_t head = 0; head < queue.size() && !crossed; ++head) {
            int v = queue[head];
            double d = norm(v);
            if (d > n - 1.0 && d <= n) {
                crossed = true;
                break;
            }
            for (int u = 0; u < config.size(); ++u) {
                if (seen[static_cast<std::size_t>(u)] || !active(u)) continue;
                if (interiors_overlap(config.grain(v), config.grain(u), config.window)) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    queue.push_back(u);
                }
            }
        }
        if (crossed) hits += 1.0;
    }
    return detail::summarize(hits, replicates);
}

}  // namespace hct
