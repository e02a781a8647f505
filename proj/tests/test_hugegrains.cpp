#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "hct/hugegrains.hpp"
#include "hct/swaps.hpp"
#include "test_util.hpp"

using namespace hct;
using hct::test::make_disks;

TEST_CASE("is_a_huge fixtures") {
    SECTION("isolated grain dominates the empty sum") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 0.5}});
        CHECK(is_a_huge(0, c, 1));
    }
    SECTION("single smaller neighbor, a = 10") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 0.9}, {1.0, 0, 0.5}});
        CHECK(is_a_huge(0, c, 10));  // e^9 > e^5
        CHECK(is_a_huge(1, c, 10));  // no strictly smaller overlap partner, empty sum
    }
    SECTION("three near-equal neighbors flip with a") {
        Configuration c = make_disks(Window::free_ball(2, 5.0),
                                     {{0, 0, 0.50}, {0.7, 0, 0.49}, {-0.7, 0, 0.49}, {0, 0.7, 0.49}});
        // e^(a/2) vs 3 e^(0.49 a): dominance needs a * 0.01 > ln 3
        CHECK_FALSE(is_a_huge(0, c, 1));    // 1.6487 < 3 * 1.6323
        CHECK_FALSE(is_a_huge(0, c, 100));  // e^50 = 2.718 e^49 < 3 e^49, still shy
        CHECK(is_a_huge(0, c, 110));        // 1.1 > ln 3
        CHECK(is_a_huge(0, c, 200));        // e^100 = 7.39 e^98 > 3 e^98
    }
    SECTION("monotone in a with a single smaller neighbor") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 0.8}, {0.9, 0, 0.7}});
        bool was_huge = false;
        for (int a : {1, 2, 4, 8, 16, 32, 64}) {
            bool huge = is_a_huge(0, c, a);
            if (was_huge) CHECK(huge);
            was_huge = huge;
        }
        CHECK(was_huge);
    }
    SECTION("very large exponents stay computable") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 0.9}, {1.0, 0, 0.8999}});
        CHECK(is_a_huge(0, c, 1000000));  // log-space, no overflow
    }
}

namespace {

// Direct small-number oracle: compare plain sums of exp(a*r).
bool oracle_huge(int k, const Configuration& c, int a) {
    long double mine = std::exp(static_cast<long double>(a) * c.grain(k).radius);
    long double sum = 0.0L;
    for (int o = 0; o < c.size(); ++o) {
        if (o == k || !interiors_overlap(c.grain(o), c.grain(k), c.window)) continue;
        if (c.grain(o).radius < c.grain(k).radius)
            sum += std::exp(static_cast<long double>(a) * c.grain(o).radius);
    }
    return mine > sum;
}

}  // namespace

TEST_CASE("is_a_huge matches a direct-sum oracle at small a") {
    for (int rep = 0; rep < 20; ++rep) {
        Configuration c = sample_poisson(1.0, RadiusLaw::uniform(0.0, 1.0), Window::torus(2, 8.0),
                                         mix_seed(21, "huge-oracle", static_cast<std::uint64_t>(rep)));
        ContactGraph g = build_contact_graph(c);
        for (int a : {1, 3, 7})
            for (int k = 0; k < c.size(); ++k) CHECK(is_a_huge(k, c, a, g) == oracle_huge(k, c, a));
    }
}

TEST_CASE("good site grid") {
    SECTION("empty configuration makes every site good") {
        Configuration c{Window::torus(2, 24.0), {}};
        GoodSiteGrid grid = good_site_grid(c, 4);
        CHECK(grid.site_count() == 36);
        for (int i = 0; i < grid.site_count(); ++i) CHECK(grid.good_at(i));
        CHECK(grid.good_fraction() == 1.0);
    }
    SECTION("an escaping increasing chain spoils its site") {
        // overlapping chain of growing balls marching out of the 3a-cube
        // around (8, 8); its smallest ball sits in the inner a-cube
        Window w = Window::torus(2, 24.0);
        std::vector<std::array<double, 3>> rows;
        for (int i = 0; i < 12; ++i)
            rows.push_back({8.0 + 0.5 * i, 8.0, 0.3 + 0.05 * i});
        Configuration c = make_disks(w, rows);
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            REQUIRE(interiors_overlap(c.grain(static_cast<int>(i)),
                                      c.grain(static_cast<int>(i) + 1), w));
        GoodSiteGrid grid = good_site_grid(c, 4);
        std::array<int, 3> z = grid.site_of(Vec{8.0, 8.0, 0.0});
        REQUIRE(z == std::array<int, 3>{2, 2, 0});
        CHECK_FALSE(grid.good_at(grid.index_of(z)));
    }
    SECTION("window must fit one 3a-cube and align with a") {
        Configuration c{Window::torus(2, 8.0), {}};
        CHECK_THROWS_AS(good_site_grid(c, 4), WindowTooSmall);
        Configuration c2{Window::torus(2, 26.0), {}};
        CHECK_THROWS_AS(good_site_grid(c2, 4), std::invalid_argument);
    }
}

TEST_CASE("disagreement components") {
    WeightSpec h = WeightSpec::volume();
    SECTION("identical thinnings disagree nowhere") {
        Configuration c = sample_poisson(0.4, RadiusLaw::uniform(0.3, 0.5), Window::torus(2, 10.0), 91);
        Thinning t = component_max(c, h, 64);
        CHECK(disagreement_components(c, t, t).empty());
    }
    SECTION("one differing isolated grain is one singleton component") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{-3, 0, 0.5}, {3, 0, 0.5}});
        Thinning t1{{0, 1}, "a", true};
        Thinning t2{{0}, "b", true};
        auto comps = disagreement_components(c, t1, t2);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0] == std::vector<int>{1});
    }
    SECTION("two exact maximal thinnings coincide") {
        for (int rep = 0; rep < 10; ++rep) {
            Configuration c =
                sample_poisson(0.3, RadiusLaw::uniform(0.3, 0.5), Window::torus(2, 12.0),
                               mix_seed(22, "disagree", static_cast<std::uint64_t>(rep)));
            auto comps = connected_components(build_contact_graph(c));
            std::size_t max_comp = 0;
            for (const auto& comp : comps) max_comp = std::max(max_comp, comp.size());
            if (max_comp > 12) continue;
            Thinning t1 = component_max(c, h, 64);
            LocalImproveResult t2 = local_improve(c, matern_one(c), h, 2.0 * c.window.extent,
                                                  static_cast<int>(std::max<std::size_t>(max_comp, 1)));
            REQUIRE(t2.converged);
            CHECK(disagreement_components(c, t1, t2.thinning).empty());
        }
    }
}

TEST_CASE("trapped-cluster grains agree across exact maximal thinnings") {
    // Building block of the shield argument, stated for exact per-component
    // optima: a grain on a good site is kept by one optimum iff the
    // independent subset-enumeration oracle keeps it too.
    const int a = 4;
    WeightSpec h = WeightSpec::exp_radius(std::pow(4.0, 4.0));  // a^{2d} = 256
    int checked = 0;
    for (int rep = 0; rep < 15; ++rep) {
        Configuration c = sample_poisson(0.5, RadiusLaw::uniform(0.0, 1.0), Window::torus(2, 12.0),
                                         mix_seed(23, "lemma63", static_cast<std::uint64_t>(rep)));
        auto comps = connected_components(build_contact_graph(c));
        std::size_t max_comp = 0;
        for (const auto& comp : comps) max_comp = std::max(max_comp, comp.size());
        if (max_comp > 18) continue;
        Thinning t1 = component_max(c, h, 64);
        std::vector<int> oracle_kept;
        for (const auto& comp : comps) {
            if (comp.size() <= 18) {
                // split oversized brute-force calls never happen here
                MwisResult r = brute_force(comp, c, h);
                oracle_kept.insert(oracle_kept.end(), r.chosen.begin(), r.chosen.end());
            }
        }
        std::sort(oracle_kept.begin(), oracle_kept.end());
        Thinning t2{oracle_kept, "oracle", true};
        GoodSiteGrid grid = good_site_grid(c, a);
        for (int k = 0; k < c.size(); ++k) {
            auto site = grid.site_of(c.grain(k).center);
            if (!grid.good_at(grid.index_of(site))) continue;
            CHECK(t1.contains(k) == t2.contains(k));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("shield check") {
    WeightSpec h = WeightSpec::volume();
    SECTION("identical thinnings never violate") {
        Configuration c = sample_poisson(0.8, RadiusLaw::uniform(0.0, 1.0), Window::torus(2, 12.0), 31);
        Thinning t = component_max(c, h, 64);
        GoodSiteGrid grid = good_site_grid(c, 2);
        ShieldReport rep = shield_check(c, grid, t, t, 2);
        CHECK(rep.violating_grains.empty());
        CHECK(rep.disagreement_count == 0);
    }
    SECTION("no good sites means a vacuous pass") {
        Configuration c = sample_poisson(0.8, RadiusLaw::uniform(0.0, 1.0), Window::torus(2, 12.0), 32);
        GoodSiteGrid grid = good_site_grid(c, 2);
        std::fill(grid.good.begin(), grid.good.end(), 0);
        Thinning t = component_max(c, h, 64);
        ShieldReport rep = shield_check(c, grid, t, t, 2);
        CHECK(rep.vacuous);
        CHECK(rep.enclosed_count == 0);
    }
}
