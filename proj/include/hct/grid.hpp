#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "hct/model.hpp"

namespace hct {

// Uniform bucket grid over grain centers with cell size >= 2 * max radius,
// so any overlapping pair sits in the same or an adjacent cell.
class SpatialGrid {
  public:
    explicit SpatialGrid(const Configuration& config) : SpatialGrid(config, all_ids(config)) {}

    SpatialGrid(const Configuration& config, std::vector<int> ids)
        : config_(&config), ids_(std::move(ids)) {
        const Window& w = config.window;
        dim_ = w.dim;
        wrap_ = (w.kind == WindowKind::Torus);
        origin_ = wrap_ ? 0.0 : -w.extent;
        span_ = wrap_ ? w.extent : 2.0 * w.extent;

        double max_r = 0.0;
        for (int id : ids_) max_r = std::max(max_r, config.grain(id).radius);
        double min_cell = std::max(2.0 * max_r, 1e-9);
        cells_per_axis_ = std::max(1, static_cast<int>(std::floor(span_ / min_cell)));
        cell_ = span_ / cells_per_axis_;

        int total = 1;
        for (int c = 0; c < dim_; ++c) total *= cells_per_axis_;
        buckets_.assign(static_cast<std::size_t>(total), {});
        for (int id : ids_) buckets_[bucket_of(config.grain(id).center)].push_back(id);
    }

    // Grains whose ball could overlap a ball of radius `radius` at `p`
    // (superset; caller does the exact check).
    template <typename Fn>
    void for_overlap_candidates(const Vec& p, Fn&& fn) const {
        visit_cells(p, 1, std::forward<Fn>(fn));
    }

    // Grains with center within wrapped L-infinity distance `half` of `p`.
    std::vector<int> centers_in_cube(const Vec& p, double half) const {
        std::vector<int> out;
        int radius_cells = static_cast<int>(std::floor(half / cell_)) + 1;
        visit_cells(p, radius_cells, [&](int id) {
            const Grain& g = config_->grain(id);
            bool inside = true;
            for (int c = 0; c < dim_; ++c)
                if (config_->window.coord_delta(p[c], g.center[c]) > half) {
                    inside = false;
                    break;
                }
            if (inside) out.push_back(id);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    static std::vector<int> all_ids(const Configuration& config) {
        std::vector<int> ids(static_cast<std::size_t>(config.size()));
        for (int i = 0; i < config.size(); ++i) ids[static_cast<std::size_t>(i)] = i;
        return ids;
    }

    int axis_cell(double x) const {
        int i = static_cast<int>(std::floor((x - origin_) / cell_));
        if (wrap_) {
            i %= cells_per_axis_;
            if (i < 0) i += cells_per_axis_;
        } else {
            i = std::clamp(i, 0, cells_per_axis_ - 1);
        }
        return i;
    }

    std::size_t bucket_of(const Vec& p) const {
        std::size_t idx = 0;
        for (int c = 0; c < dim_; ++c)
            idx = idx * static_cast<std::size_t>(cells_per_axis_) +
                  static_cast<std::size_t>(axis_cell(p[c]));
        return idx;
    }

    template <typename Fn>
    void visit_cells(const Vec& p, int radius_cells, Fn&& fn) const {
        int base[3] = {0, 0, 0};
        for (int c = 0; c < dim_; ++c) base[c] = axis_cell(p[c]);
        int lo = -radius_cells, hi = radius_cells;
        if (2 * radius_cells + 1 >= cells_per_axis_) {
            lo = 0;
            hi = cells_per_axis_ - 1;
        }

        int off[3] = {lo, lo, lo};
        for (;;) {
            std::size_t idx = 0;
            bool valid = true;
            for (int c = 0; c < dim_; ++c) {
                int i = (2 * radius_cells + 1 >= cells_per_axis_) ? off[c] : base[c] + off[c];
                if (wrap_) {
                    i %= cells_per_axis_;
                    if (i < 0) i += cells_per_axis_;
                } else if (i < 0 || i >= cells_per_axis_) {
                    valid = false;
                    break;
                }
                idx = idx * static_cast<std::size_t>(cells_per_axis_) + static_cast<std::size_t>(i);
            }
            if (valid)
                for (int id : buckets_[idx]) fn(id);

            int c = dim_ - 1;
            for (; c >= 0; --c) {
                if (++off[c] <= hi) break;
                off[c] = lo;
            }
            if (c < 0) break;
        }
    }

    const Configuration* config_;
    std::vector<int> ids_;
    int dim_ = 2;
    bool wrap_ = true;
    double origin_ = 0.0, span_ = 1.0, cell_ = 1.0;
    int cells_per_axis_ = 1;
    std::vector<std::vector<int>> buckets_;
};

}  // namespace hct
