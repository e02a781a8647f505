#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "hct/graph.hpp"
#include "hct/model.hpp"
#include "hct/thinning.hpp"

namespace hct {

namespace detail {

// exp(a*r0) > sum of exp(a*r) over strictly smaller overlapping grains,
// compared in log space so arbitrarily large exponents stay exact.
inline bool huge_in_log_space(int k, const Configuration& config, double a,
                              const ContactGraph& graph) {
    double r0 = config.grain(k).radius;
    double max_e = -1.0;
    std::vector<double> exps;
    for (int nb : graph.neighbors(k)) {
        double r = config.grain(nb).radius;
        if (r < r0) {
            exps.push_back(a * r);
            max_e = std::max(max_e, a * r);
        }
    }
    if (exps.empty()) return true;
    double sum = 0.0;
    for (double e : exps) sum += std::exp(e - max_e);
    return a * r0 > max_e + std::log(sum);
}

}  // namespace detail

// A grain dominates its strictly smaller overlap partners when its
// exp(a*r) weight exceeds their summed weights.
inline bool is_a_huge(int k, const Configuration& config, int a, const ContactGraph& graph) {
    if (a < 1) throw std::invalid_argument("a must be at least 1");
    config.grain(k);
    return detail::huge_in_log_space(k, config, static_cast<double>(a), graph);
}

inline bool is_a_huge(int k, const Configuration& config, int a) {
    return is_a_huge(k, config, a, build_contact_graph(config));
}

// Lattice of scale-a sites. Site z sits at position a*z; its small cube
// Q_a(az) has side a, the guard cube Q_{3a}(az) side 3a. A site is good
// when every grain centered in the guard cube is a^(2d)-huge and every
// grain centered in the small cube has its directed cluster trapped,
// ball-by-ball, inside the guard cube.
struct GoodSiteGrid {
    int a = 1;
    Window window;
    std::array<int, 3> sites_per_axis{1, 1, 1};
    int origin_offset = 0;   // free-ball lattices are centered on the origin
    std::vector<char> good;  // flattened lattice, row-major over dim axes

    int site_count() const {
        int n = 1;
        for (int c = 0; c < window.dim; ++c) n *= sites_per_axis[static_cast<std::size_t>(c)];
        return n;
    }

    int index_of(const std::array<int, 3>& z) const {
        int idx = 0;
        for (int c = 0; c < window.dim; ++c)
            idx = idx * sites_per_axis[static_cast<std::size_t>(c)] + z[static_cast<std::size_t>(c)];
        return idx;
    }

    std::array<int, 3> site_coords(int idx) const {
        std::array<int, 3> z{0, 0, 0};
        for (int c = window.dim - 1; c >= 0; --c) {
            z[static_cast<std::size_t>(c)] = idx % sites_per_axis[static_cast<std::size_t>(c)];
            idx /= sites_per_axis[static_cast<std::size_t>(c)];
        }
        return z;
    }

    bool good_at(int idx) const { return good[static_cast<std::size_t>(idx)] != 0; }

    double good_fraction() const {
        if (good.empty()) return 0.0;
        double s = 0.0;
        for (char g : good) s += g ? 1.0 : 0.0;
        return s / static_cast<double>(good.size());
    }

    // Nearest lattice site of a point (torus wraps the lattice).
    std::array<int, 3> site_of(const Vec& p) const {
        std::array<int, 3> z{0, 0, 0};
        for (int c = 0; c < window.dim; ++c) {
            int m = sites_per_axis[static_cast<std::size_t>(c)];
            long zi = std::lround(p[static_cast<std::size_t>(c)] / a);
            if (window.kind == WindowKind::Torus) {
                zi %= m;
                if (zi < 0) zi += m;
            } else {
                zi = std::clamp<long>(zi + origin_offset, 0, static_cast<long>(m) - 1);
            }
            z[static_cast<std::size_t>(c)] = static_cast<int>(zi);
        }
        return z;
    }
};

namespace detail {

inline bool ball_in_site_cube(const Window& window, const Vec& cube_center, const Grain& g,
                              double side) {
    for (int c = 0; c < window.dim; ++c)
        if (window.coord_delta(cube_center[c], g.center[c]) + g.radius > 0.5 * side) return false;
    return true;
}

inline bool center_in_site_cube(const Window& window, const Vec& cube_center, const Vec& p,
                                double side) {
    for (int c = 0; c < window.dim; ++c)
        if (window.coord_delta(cube_center[c], p[c]) > 0.5 * side) return false;
    return true;
}

}  // namespace detail

inline GoodSiteGrid good_site_grid(const Configuration& config, int a) {
    if (a < 1) throw std::invalid_argument("a must be at least 1");
    const Window& w = config.window;
    GoodSiteGrid grid;
    grid.a = a;
    grid.window = w;

    if (w.kind == WindowKind::Torus) {
        if (w.extent < 3.0 * a) throw WindowTooSmall("torus side below one 3a-cube");
        double m = w.extent / a;
        if (std::fabs(m - std::round(m)) > 1e-9)
            throw std::invalid_argument("torus side must be an integer multiple of a");
        for (int c = 0; c < w.dim; ++c)
            grid.sites_per_axis[static_cast<std::size_t>(c)] = static_cast<int>(std::round(m));
    } else {
        // only sites whose guard cube fits inside the ball
        int m = static_cast<int>(std::floor((w.extent - 1.5 * a * std::sqrt(w.dim)) / a));
        if (m < 0) throw WindowTooSmall("free ball too small for one 3a-cube");
        for (int c = 0; c < w.dim; ++c)
            grid.sites_per_axis[static_cast<std::size_t>(c)] = 2 * m + 1;
    }

    ContactGraph contact = build_contact_graph(config);
    DirectedGraph directed = build_directed_graph(config);
    double exponent = std::pow(static_cast<double>(a), 2.0 * w.dim);

    std::vector<char> huge(static_cast<std::size_t>(config.size()), 0);
    for (int k = 0; k < config.size(); ++k)
        huge[static_cast<std::size_t>(k)] =
            detail::huge_in_log_space(k, config, exponent, contact) ? 1 : 0;

    std::vector<std::vector<int>> cluster_cache(static_cast<std::size_t>(config.size()));
    std::vector<char> cluster_known(static_cast<std::size_t>(config.size()), 0);
    auto cluster_of = [&](int k) -> const std::vector<int>& {
        if (!cluster_known[static_cast<std::size_t>(k)]) {
            cluster_cache[static_cast<std::size_t>(k)] = cluster(k, directed);
            cluster_known[static_cast<std::size_t>(k)] = 1;
        }
        return cluster_cache[static_cast<std::size_t>(k)];
    };

    int n_sites = grid.site_count();
    grid.good.assign(static_cast<std::size_t>(n_sites), 1);
    grid.origin_offset =
        (w.kind == WindowKind::FreeBall) ? (grid.sites_per_axis[0] - 1) / 2 : 0;
    for (int idx = 0; idx < n_sites; ++idx) {
        std::array<int, 3> z = grid.site_coords(idx);
        Vec center{0, 0, 0};
        for (int c = 0; c < w.dim; ++c)
            center[static_cast<std::size_t>(c)] =
                static_cast<double>(a) * (z[static_cast<std::size_t>(c)] - grid.origin_offset);
        bool ok = true;
        for (int k = 0; k < config.size() && ok; ++k) {
            const Grain& g = config.grain(k);
            if (detail::center_in_site_cube(w, center, g.center, 3.0 * a) &&
                !huge[static_cast<std::size_t>(k)])
                ok = false;
        }
        for (int k = 0; k < config.size() && ok; ++k) {
            const Grain& g = config.grain(k);
            if (!detail::center_in_site_cube(w, center, g.center, static_cast<double>(a))) continue;
            for (int member : cluster_of(k))
                if (!detail::ball_in_site_cube(w, center, config.grain(member), 3.0 * a)) {
                    ok = false;
                    break;
                }
        }
        grid.good[static_cast<std::size_t>(idx)] = ok ? 1 : 0;
    }
    return grid;
}

// Connected components of the contact graph restricted to the symmetric
// difference of two hard-core thinnings.
inline std::vector<std::vector<int>> disagreement_components(const Configuration& config,
                                                             const Thinning& t1,
                                                             const Thinning& t2) {
    if (!t1.hard_core || !t2.hard_core)
        throw std::invalid_argument("disagreement_components requires hard-core thinnings");
    std::vector<char> in_diff(static_cast<std::size_t>(config.size()), 0);
    for (int id : t1.kept) in_diff[static_cast<std::size_t>(id)] ^= 1;
    for (int id : t2.kept) in_diff[static_cast<std::size_t>(id)] ^= 1;

    ContactGraph g = build_contact_graph(config);
    std::vector<char> seen(static_cast<std::size_t>(config.size()), 0);
    std::vector<std::vector<int>> components;
    for (int s = 0; s < config.size(); ++s) {
        if (!in_diff[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp, stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int u : g.neighbors(v))
                if (in_diff[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

struct ShieldReport {
    int a = 0;
    int enclosed_count = 0;
    int disagreement_count = 0;
    bool vacuous = true;  // no grain was enclosed by good sites
    std::vector<int> violating_grains;
    std::vector<std::vector<int>> violating_components;
};

// A grain is enclosed when the non-good sites reachable from its own site
// never touch the lattice edge (the lattice is deliberately not wrapped, so
// enclosure on a torus errs toward "not enclosed"). Enclosed grains must
// agree across two bounded-locally-maximal thinnings; disagreements are
// reported for diagnosis, indicating the swap bounds were too small.
inline ShieldReport shield_check(const Configuration& config, const GoodSiteGrid& grid,
                                 const Thinning& t1, const Thinning& t2, int a) {
    ShieldReport report;
    report.a = a;

    auto diff_components = disagreement_components(config, t1, t2);
    std::vector<int> comp_of(static_cast<std::size_t>(config.size()), -1);
    for (std::size_t ci = 0; ci < diff_components.size(); ++ci)
        for (int id : diff_components[ci]) {
            comp_of[static_cast<std::size_t>(id)] = static_cast<int>(ci);
            ++report.disagreement_count;
        }

    // Flood the non-good region once; every bad site connected (through bad
    // sites) to the lattice edge is marked escaped.
    int n_sites = grid.site_count();
    std::vector<char> escaped(static_cast<std::size_t>(n_sites), 0);
    std::vector<int> stack;
    const int dim = grid.window.dim;
    for (int idx = 0; idx < n_sites; ++idx) {
        if (grid.good_at(idx)) continue;
        std::array<int, 3> z = grid.site_coords(idx);
        bool edge = false;
        for (int c = 0; c < dim; ++c)
            if (z[static_cast<std::size_t>(c)] == 0 ||
                z[static_cast<std::size_t>(c)] ==
                    grid.sites_per_axis[static_cast<std::size_t>(c)] - 1)
                edge = true;
        if (edge) {
            escaped[static_cast<std::size_t>(idx)] = 1;
            stack.push_back(idx);
        }
    }
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        std::array<int, 3> z = grid.site_coords(idx);
        for (int c = 0; c < dim; ++c)
            for (int step : {-1, 1}) {
                std::array<int, 3> nz = z;
                nz[static_cast<std::size_t>(c)] += step;
                if (nz[static_cast<std::size_t>(c)] < 0 ||
                    nz[static_cast<std::size_t>(c)] >=
                        grid.sites_per_axis[static_cast<std::size_t>(c)])
                    continue;
                int nidx = grid.index_of(nz);
                if (grid.good_at(nidx) || escaped[static_cast<std::size_t>(nidx)]) continue;
                escaped[static_cast<std::size_t>(nidx)] = 1;
                stack.push_back(nidx);
            }
    }

    std::vector<char> seen_comp(diff_components.size(), 0);
    for (int k = 0; k < config.size(); ++k) {
        int site = grid.index_of(grid.site_of(config.grain(k).center));
        bool enclosed = grid.good_at(site) || !escaped[static_cast<std::size_t>(site)];
        if (!enclosed) continue;
        ++report.enclosed_count;
        report.vacuous = false;
        int ci = comp_of[static_cast<std::size_t>(k)];
        if (ci >= 0) {
            report.violating_grains.push_back(k);
            if (!seen_comp[static_cast<std::size_t>(ci)]) {
                seen_comp[static_cast<std::size_t>(ci)] = 1;
                report.violating_components.push_back(diff_components[static_cast<std::size_t>(ci)]);
            }
        }
    }
    return report;
}

}  // namespace hct
