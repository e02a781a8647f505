#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hct/model.hpp"
#include "hct/rng.hpp"

namespace hct {

// Nearest-seed (Voronoi) tessellation of the window. Cell assignment uses
// the window metric; nearest-seed ties go to the lowest seed index.
struct Tessellation {
    Window window;
    std::vector<Vec> seeds;

    int cell_count() const { return static_cast<int>(seeds.size()); }

    int cell_of(const Vec& p) const {
        int best = 0;
        double best_d = window.distance_sq(p, seeds[0]);
        for (int i = 1; i < cell_count(); ++i) {
            double d = window.distance_sq(p, seeds[static_cast<std::size_t>(i)]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    // Whether the closed ball B_r(c) lies inside cell i: the signed distance
    // from c to every bisector separating seed i from another seed must be
    // at least r. On the torus the test runs against all periodic images of
    // the competing seeds, with the image of seed i nearest to c on this
    // side; own-seed images are not competitors (a single seed owns the
    // whole torus).
    bool ball_in_cell(const Vec& c, double r, int i) const {
        const int dim = window.dim;
        const bool wrap = (window.kind == WindowKind::Torus);
        const double L = window.extent;

        Vec si = seeds[static_cast<std::size_t>(i)];
        if (wrap) {  // nearest image of the own seed
            for (int k = 0; k < dim; ++k) {
                double d = si[k] - c[k];
                d -= L * std::round(d / L);
                si[k] = c[k] + d;
            }
        }
        double di_sq = 0.0;
        for (int k = 0; k < dim; ++k) di_sq += (c[k] - si[k]) * (c[k] - si[k]);

        for (int j = 0; j < cell_count(); ++j) {
            if (j == i) continue;
            const Vec& sj = seeds[static_cast<std::size_t>(j)];
            if (!wrap) {
                if (!half_plane_margin_ok(c, r, si, di_sq, sj)) return false;
            } else {
                int off[3] = {-1, -1, -1};
                for (;;) {
                    Vec img = sj;
                    for (int k = 0; k < dim; ++k) img[k] += L * off[k];
                    if (!half_plane_margin_ok(c, r, si, di_sq, img)) return false;
                    int k = dim - 1;
                    for (; k >= 0; --k) {
                        if (++off[k] <= 1) break;
                        off[k] = -1;
                    }
                    if (k < 0) break;
                }
            }
        }
        return true;
    }

  private:
    // Signed distance from c to the bisector between own seed si and
    // competitor sj, measured toward sj, must be >= r.
    bool half_plane_margin_ok(const Vec& c, double r, const Vec& si, double di_sq,
                              const Vec& sj) const {
        double dj_sq = 0.0, seed_sq = 0.0;
        for (int k = 0; k < window.dim; ++k) {
            dj_sq += (c[k] - sj[k]) * (c[k] - sj[k]);
            seed_sq += (sj[k] - si[k]) * (sj[k] - si[k]);
        }
        if (seed_sq == 0.0) return false;  // coincident seeds never contain a ball
        double margin = (dj_sq - di_sq) / (2.0 * std::sqrt(seed_sq));
        return margin >= r;
    }
};

// Poisson seed set, independent of any grain configuration. A realization
// with zero seeds is redrawn from the next deterministic substream.
inline Tessellation sample_voronoi(const Window& window, double seed_intensity,
                                   std::uint64_t seed) {
    if (!(seed_intensity > 0)) throw std::invalid_argument("seed intensity must be positive");
    Tessellation tess{window, {}};
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(mix_seed(seed, "voronoi-seeds", attempt));
        long count = rng.poisson(seed_intensity * window.volume());
        if (count == 0) continue;
        tess.seeds.reserve(static_cast<std::size_t>(count));
        for (long s = 0; s < count; ++s) {
            Vec p{0, 0, 0};
            if (window.kind == WindowKind::Torus) {
                for (int k = 0; k < window.dim; ++k) p[k] = rng.uniform(0.0, window.extent);
            } else {
                for (;;) {
                    double norm_sq = 0.0;
                    for (int k = 0; k < window.dim; ++k) {
                        p[k] = rng.uniform(-window.extent, window.extent);
                        norm_sq += p[k] * p[k];
                    }
                    if (norm_sq <= window.extent * window.extent) break;
                }
            }
            tess.seeds.push_back(p);
        }
        return tess;
    }
}

}  // namespace hct
