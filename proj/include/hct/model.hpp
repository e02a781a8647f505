#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hct/errors.hpp"
#include "hct/geometry.hpp"
#include "hct/rng.hpp"

namespace hct {

// A spherical particle B_radius(center). Ids are dense 0..n-1 within a
// Configuration, in list order.
struct Grain {
    int id = 0;
    Vec center{0, 0, 0};
    double radius = 1.0;
};

struct RadiusLaw {
    enum class Kind { Fixed, Uniform };
    Kind kind = Kind::Fixed;
    double lo = 1.0;  // Fixed: the radius; Uniform: lower bound
    double hi = 1.0;  // Uniform: upper bound

    static RadiusLaw fixed(double r) {
        if (!(r > 0)) throw std::invalid_argument("fixed radius must be positive");
        return RadiusLaw{Kind::Fixed, r, r};
    }
    static RadiusLaw uniform(double lo, double hi) {
        if (!(lo >= 0) || !(hi > lo)) throw std::invalid_argument("uniform law needs 0 <= lo < hi");
        return RadiusLaw{Kind::Uniform, lo, hi};
    }

    double max_radius() const { return hi; }
    double min_radius() const { return lo; }

    double sample(Rng& rng) const {
        if (kind == Kind::Fixed) return lo;
        return rng.uniform(lo, hi);
    }
};

// Weight function h on grains: unit mass, Lebesgue volume, or the
// radius-exponential exp(a*r) with a >= 1.
struct WeightSpec {
    enum class Kind { Unit, Volume, ExpRadius };
    Kind kind = Kind::Unit;
    double a = 1.0;

    static WeightSpec unit() { return WeightSpec{Kind::Unit, 1.0}; }
    static WeightSpec volume() { return WeightSpec{Kind::Volume, 1.0}; }
    static WeightSpec exp_radius(double a) {
        if (!(a >= 1)) throw std::invalid_argument("exp-radius weight needs a >= 1");
        return WeightSpec{Kind::ExpRadius, a};
    }

    // Extended-precision value, used for all aggregate sums. Overflows only
    // past exp(~11350); guarded where exponential weights enter solvers.
    long double value_l(const Grain& g, int dim) const {
        switch (kind) {
            case Kind::Unit: return 1.0L;
            case Kind::Volume:
                return static_cast<long double>(unit_ball_volume(dim)) *
                       std::pow(static_cast<long double>(g.radius), dim);
            case Kind::ExpRadius:
                return std::exp(static_cast<long double>(a) * g.radius);
        }
        return 0.0L;
    }

    // Natural log of the weight, exact in the exponent for ExpRadius. Used
    // by the huge-grain predicates, which must survive arbitrary a.
    double log_value(const Grain& g, int dim) const {
        switch (kind) {
            case Kind::Unit: return 0.0;
            case Kind::Volume: return std::log(unit_ball_volume(dim)) + dim * std::log(g.radius);
            case Kind::ExpRadius: return a * g.radius;
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind) {
            case Kind::Unit: return "unit";
            case Kind::Volume: return "volume";
            case Kind::ExpRadius: return "exp_radius(" + std::to_string(a) + ")";
        }
        return "?";
    }
};

struct Configuration {
    Window window;
    std::vector<Grain> grains;

    int size() const { return static_cast<int>(grains.size()); }
    const Grain& grain(int id) const {
        if (id < 0 || id >= size()) throw UnknownGrainId(id);
        return grains[static_cast<std::size_t>(id)];
    }
    double max_radius() const {
        double m = 0.0;
        for (const Grain& g : grains) m = std::max(m, g.radius);
        return m;
    }
};

// h(K) as a plain double; may overflow to inf for extreme exponential
// weights, where callers should switch to log_value().
inline double weight(const Grain& g, const WeightSpec& h, int dim) {
    return static_cast<double>(h.value_l(g, dim));
}

// Strict interior overlap; tangent balls do not conflict. Uses the torus
// metric on periodic windows.
inline bool interiors_overlap(const Grain& a, const Grain& b, const Window& window) {
    double reach = a.radius + b.radius;
    return window.distance_sq(a.center, b.center) < reach * reach;
}

// Draws a Poisson Boolean model realization: Poisson(intensity*volume) many
// grains, centers uniform in the window, radii iid from the law.
inline Configuration sample_poisson(double intensity, const RadiusLaw& law, const Window& window,
                                    std::uint64_t seed) {
    if (!(intensity > 0)) throw std::invalid_argument("intensity must be positive");
    if (window.kind == WindowKind::Torus && !(window.extent > 4.0 * law.max_radius()))
        throw WindowTooSmall("torus side must exceed 4x the maximal radius of the law");

    Rng rng(seed);
    long count = rng.poisson(intensity * window.volume());

    Configuration config{window, {}};
    config.grains.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        Vec c{0, 0, 0};
        if (window.kind == WindowKind::Torus) {
            for (int k = 0; k < window.dim; ++k) c[k] = rng.uniform(0.0, window.extent);
        } else {
            // Rejection from the bounding cube keeps the draw exact.
            for (;;) {
                double s = 0.0;
                for (int k = 0; k < window.dim; ++k) {
                    c[k] = rng.uniform(-window.extent, window.extent);
                    s += c[k] * c[k];
                }
                if (s <= window.extent * window.extent) break;
            }
        }
        double r = law.sample(rng);
        config.grains.push_back(Grain{static_cast<int>(i), c, r});
    }
    return config;
}

}  // namespace hct
