#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "hct/errors.hpp"

namespace hct {

// Points live in at most three dimensions; unused coordinates stay zero.
using Vec = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

enum class WindowKind { Torus, FreeBall };

// Observation window: a flat torus [0,L)^d (stationary experiments) or a
// free Euclidean ball B_n(o) (percolation experiments).
struct Window {
    WindowKind kind = WindowKind::Torus;
    int dim = 2;
    double extent = 1.0;  // torus side L, or ball radius n

    static Window torus(int dim, double side) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
        if (!(side > 0)) throw std::invalid_argument("torus side must be positive");
        return Window{WindowKind::Torus, dim, side};
    }

    static Window free_ball(int dim, double radius) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
        if (!(radius >= 3)) throw WindowTooSmall("free ball radius must be at least 3");
        return Window{WindowKind::FreeBall, dim, radius};
    }

    double volume() const {
        if (kind == WindowKind::Torus) return std::pow(extent, dim);
        return unit_ball_volume(dim) * std::pow(extent, dim);
    }

    // Per-coordinate separation, wrapped on the torus.
    double coord_delta(double a, double b) const {
        double d = std::fabs(a - b);
        if (kind == WindowKind::Torus) {
            d = std::fmod(d, extent);
            if (d > extent * 0.5) d = extent - d;
        }
        return d;
    }

    double distance_sq(const Vec& a, const Vec& b) const {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) {
            double d = coord_delta(a[c], b[c]);
            s += d * d;
        }
        return s;
    }

    double distance(const Vec& a, const Vec& b) const { return std::sqrt(distance_sq(a, b)); }

    bool contains(const Vec& p) const {
        if (kind == WindowKind::Torus) {
            for (int c = 0; c < dim; ++c)
                if (p[c] < 0.0 || p[c] >= extent) return false;
            return true;
        }
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += p[c] * p[c];
        return s <= extent * extent;
    }

    // Canonical representative of a torus point in [0,L)^d.
    Vec canonical(Vec p) const {
        if (kind == WindowKind::Torus) {
            for (int c = 0; c < dim; ++c) {
                p[c] = std::fmod(p[c], extent);
                if (p[c] < 0.0) p[c] += extent;
            }
        }
        return p;
    }
};

}  // namespace hct
