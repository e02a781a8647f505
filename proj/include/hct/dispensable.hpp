#pragma once

#include <optional>
#include <vector>

#include "hct/graph.hpp"
#include "hct/model.hpp"

namespace hct {

// Dispensability of a grain K: some overlapping, strictly heavier K' exists
// whose every other neighbor also overlaps K. Such a grain can always be
// swapped out for K', so it never survives a locally maximal thinning.
//
// `special` is the radius/degree-constrained variant used by the coloring
// machinery. Its defining list omits the weight comparison, so under an
// arbitrary h it is not literally a sub-case of `dispensable`; the flag is
// reported as defined rather than silently strengthened.
struct DispensabilityReport {
    int grain = 0;
    bool dispensable = false;
    std::optional<int> witness;  // the h-largest qualifying K'
    bool special = false;
    // Free-ball windows only: grains outside the window could overlap the
    // witness without being observed, so condition (3) may hold spuriously.
    bool boundary_affected = false;
};

namespace detail {

// neighbors(witness) \ {k} contained in neighbors(k)?
inline bool witness_condition(int k, int witness, const ContactGraph& graph) {
    const auto& nk = graph.neighbors(k);
    for (int nb : graph.neighbors(witness)) {
        if (nb == k) continue;
        if (!std::binary_search(nk.begin(), nk.end(), nb)) return false;
    }
    return true;
}

inline bool witness_near_boundary(int witness, const Configuration& config) {
    if (config.window.kind != WindowKind::FreeBall) return false;
    const Grain& g = config.grain(witness);
    double norm = 0.0;
    for (int c = 0; c < config.window.dim; ++c) norm += g.center[c] * g.center[c];
    norm = std::sqrt(norm);
    return norm + g.radius + 2.0 * config.max_radius() > config.window.extent;
}

inline bool special_conditions(int k, const Configuration& config, const ContactGraph& graph) {
    const Grain& g = config.grain(k);
    if (!(g.radius < 1.05)) return false;
    int big_neighbors = 0;
    for (int nb : graph.neighbors(k)) {
        double r = config.grain(nb).radius;
        if (r < 1.05) return false;
        if (r > 1.05) ++big_neighbors;
    }
    if (big_neighbors > 3) return false;
    for (int nb : graph.neighbors(k))
        if (witness_condition(k, nb, graph)) return true;
    return false;
}

}  // namespace detail

inline DispensabilityReport is_dispensable(int k, const Configuration& config, const WeightSpec& h,
                                           const ContactGraph& graph) {
    config.grain(k);
    DispensabilityReport report;
    report.grain = k;
    long double wk = h.value_l(config.grain(k), config.window.dim);
    long double best_w = 0.0L;
    for (int nb : graph.neighbors(k)) {
        long double wn = h.value_l(config.grain(nb), config.window.dim);
        if (!(wn > wk)) continue;
        if (!detail::witness_condition(k, nb, graph)) continue;
        if (!report.witness || wn > best_w) {
            report.witness = nb;
            best_w = wn;
        }
    }
    report.dispensable = report.witness.has_value();
    if (report.witness) report.boundary_affected = detail::witness_near_boundary(*report.witness, config);
    bool support_ok = true;
    for (const Grain& g : config.grains)
        if (g.radius < 1.0) support_ok = false;
    report.special = support_ok && detail::special_conditions(k, config, graph);
    return report;
}

inline DispensabilityReport is_dispensable(int k, const Configuration& config, const WeightSpec& h) {
    return is_dispensable(k, config, h, build_contact_graph(config));
}

// The four-condition list of the coloring construction: small radius, no
// small-radius contacts, at most three large contacts, and a witness whose
// neighborhood is trapped inside K's. Requires a radius law supported in
// [1, m].
inline bool is_special_dispensable(int k, const Configuration& config, const ContactGraph& graph) {
    config.grain(k);
    for (const Grain& g : config.grains)
        if (g.radius < 1.0)
            throw RadiusLawMismatch("special dispensability requires radii in [1, m]");
    return detail::special_conditions(k, config, graph);
}

inline bool is_special_dispensable(int k, const Configuration& config) {
    return is_special_dispensable(k, config, build_contact_graph(config));
}

struct FilteredConfiguration {
    Configuration config;
    std::vector<int> original_ids;  // original id of each surviving grain
};

// Single-pass filter: dispensability is evaluated against the original
// configuration, not iterated on the shrinking one.
inline FilteredConfiguration remove_dispensable(const Configuration& config, const WeightSpec& h) {
    ContactGraph graph = build_contact_graph(config);
    FilteredConfiguration out{{config.window, {}}, {}};
    for (int k = 0; k < config.size(); ++k) {
        if (is_dispensable(k, config, h, graph).dispensable) continue;
        Grain g = config.grain(k);
        g.id = static_cast<int>(out.config.grains.size());
        out.config.grains.push_back(g);
        out.original_ids.push_back(k);
    }
    return out;
}

}  // namespace hct
