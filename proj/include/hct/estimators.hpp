#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hct/grid.hpp"
#include "hct/model.hpp"
#include "hct/rng.hpp"
#include "hct/tessellation.hpp"
#include "hct/thinning.hpp"

namespace hct {

// Spatial average of h over the kept grains; unbiased only on the torus.
inline double h_intensity(const Thinning& t, const Configuration& config, const WeightSpec& h) {
    if (config.window.kind != WindowKind::Torus)
        throw std::invalid_argument("h_intensity needs a torus window (free balls are boundary-biased)");
    return static_cast<double>(thinning_weight_sum(t.kept, config, h)) / config.window.volume();
}

struct MonteCarloEstimate {
    double estimate = 0.0;
    double ci_half_width = 0.0;
    long samples = 0;
};

// Fraction of uniform sample points covered by a kept ball. For a
// hard-core thinning the kept balls are disjoint, so this estimates the
// same quantity as h_intensity with h = Volume.
inline MonteCarloEstimate volume_fraction(const Thinning& t, const Configuration& config,
                                          long samples, std::uint64_t seed) {
    if (config.window.kind != WindowKind::Torus)
        throw std::invalid_argument("volume_fraction needs a torus window");
    if (!t.hard_core) throw std::invalid_argument("volume_fraction expects a hard-core thinning");

    SpatialGrid grid(config, t.kept);
    Rng rng(mix_seed(seed, "volume-fraction", 0));
    const double L = config.window.extent;
    long covered = 0;
    for (long s = 0; s < samples; ++s) {
        Vec p{0, 0, 0};
        for (int c = 0; c < config.window.dim; ++c) p[c] = rng.uniform(0.0, L);
        bool hit = false;
        grid.for_overlap_candidates(p, [&](int id) {
            if (hit) return;
            const Grain& g = config.grain(id);
            if (config.window.distance_sq(p, g.center) < g.radius * g.radius) hit = true;
        });
        if (hit) ++covered;
    }
    MonteCarloEstimate out;
    out.samples = samples;
    out.estimate = static_cast<double>(covered) / static_cast<double>(samples);
    out.ci_half_width = 1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    return out;
}

struct IsoperimetricReport {
    // Fraction of the window within L-infinity distance m of the union of
    // cell boundaries (the quantity whose decay drives the approximation).
    double union_fraction = 0.0;
    // Upper bound on the per-cell sum of dilated-boundary volumes over the
    // window volume, from bisector-crossing multiplicity.
    double per_cell_sum_upper = 0.0;
    long samples = 0;
};

// Point-sampled dilated-boundary measure of a torus Voronoi tessellation.
// A sample point is near the skeleton iff its m-cube crosses the bisector
// between its own seed and some competitor image; the bisector crossing
// test is exact because the squared-distance difference is linear.
inline IsoperimetricReport isoperimetric_report(const Tessellation& tess, double m,
                                                const Window& window, long samples,
                                                std::uint64_t seed) {
    if (window.kind != WindowKind::Torus)
        throw std::invalid_argument("isoperimetric sampling is defined on the torus");
    const int dim = window.dim;
    const double L = window.extent;
    Rng rng(mix_seed(seed, "isoperimetric", 0));

    long near_boundary = 0;
    double multiplicity = 0.0;
    for (long s = 0; s < samples; ++s) {
        Vec p{0, 0, 0};
        for (int c = 0; c < dim; ++c) p[c] = rng.uniform(0.0, L);
        int own = tess.cell_of(p);

        Vec own_img = tess.seeds[static_cast<std::size_t>(own)];
        for (int c = 0; c < dim; ++c) {
            double d = own_img[c] - p[c];
            d -= L * std::round(d / L);
            own_img[c] = p[c] + d;
        }
        double own_sq = 0.0;
        for (int c = 0; c < dim; ++c) own_sq += (p[c] - own_img[c]) * (p[c] - own_img[c]);

        int crossing_count = 0;
        for (int j = 0; j < tess.cell_count(); ++j) {
            if (j == own) continue;
            bool crosses = false;
            int off[3] = {-1, -1, -1};
            for (;;) {
                Vec img = tess.seeds[static_cast<std::size_t>(j)];
                for (int c = 0; c < dim; ++c) img[c] += L * off[c];
                double dj_sq = 0.0, l1 = 0.0;
                for (int c = 0; c < dim; ++c) {
                    dj_sq += (p[c] - img[c]) * (p[c] - img[c]);
                    l1 += std::fabs(img[c] - own_img[c]);
                }
                // min over the cube p + [-m, m]^d of |x-img|^2 - |x-own|^2
                if (dj_sq - own_sq <= 2.0 * m * l1) {
                    crosses = true;
                    break;
                }
                int c = dim - 1;
                for (; c >= 0; --c) {
                    if (++off[c] <= 1) break;
                    off[c] = -1;
                }
                if (c < 0) break;
            }
            if (crosses) ++crossing_count;
        }
        if (crossing_count > 0) ++near_boundary;
        multiplicity += crossing_count > 0 ? 1.0 + crossing_count : 0.0;
    }

    IsoperimetricReport out;
    out.samples = samples;
    out.union_fraction = static_cast<double>(near_boundary) / static_cast<double>(samples);
    out.per_cell_sum_upper = multiplicity / static_cast<double>(samples);
    return out;
}

inline double isoperimetric_coefficient(const Tessellation& tess, double m, const Window& window,
                                        long samples = 20000, std::uint64_t seed = 1) {
    return isoperimetric_report(tess, m, window, samples, seed).union_fraction;
}

}  // namespace hct
