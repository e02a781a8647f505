#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "hct/estimators.hpp"
#include "test_util.hpp"

using namespace hct;
using hct::test::make_disks;

TEST_CASE("h_intensity") {
    SECTION("empty thinning") {
        Configuration c = sample_poisson(0.5, RadiusLaw::fixed(0.4), Window::torus(2, 10.0), 3);
        CHECK(h_intensity(Thinning{{}, "empty", true}, c, WeightSpec::volume()) == 0.0);
    }
    SECTION("single unit-volume grain on a 10-torus") {
        Configuration c = make_disks(Window::torus(2, 10.0), {{5, 5, std::sqrt(1.0 / kPi)}});
        double v = h_intensity(Thinning{{0}, "all", true}, c, WeightSpec::volume());
        CHECK_THAT(v, Catch::Matchers::WithinRel(0.01, 1e-12));
    }
    SECTION("free ball windows are rejected") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 1.0}});
        CHECK_THROWS_AS(h_intensity(Thinning{{0}, "all", true}, c, WeightSpec::unit()),
                        std::invalid_argument);
    }
    SECTION("unit weight on the full configuration estimates the intensity", "[montecarlo]") {
        const int replicates = 300;
        double sum = 0.0;
        for (int i = 0; i < replicates; ++i) {
            Configuration c = sample_poisson(0.7, RadiusLaw::fixed(0.3), Window::torus(2, 10.0),
                                             mix_seed(71, "hint", static_cast<std::uint64_t>(i)));
            std::vector<int> all;
            for (int k = 0; k < c.size(); ++k) all.push_back(k);
            sum += h_intensity(Thinning{all, "all", true}, c, WeightSpec::unit());
        }
        double mean = sum / replicates;
        double se = std::sqrt(0.7 / 100.0 / replicates);
        CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.7, 4.0 * se));
    }
}

TEST_CASE("volume_fraction", "[montecarlo]") {
    SECTION("empty thinning covers nothing") {
        Configuration c = sample_poisson(0.5, RadiusLaw::fixed(0.4), Window::torus(2, 10.0), 4);
        MonteCarloEstimate e = volume_fraction(Thinning{{}, "empty", true}, c, 10000, 1);
        CHECK(e.estimate == 0.0);
    }
    SECTION("single unit ball on a 10-torus") {
        Configuration c = make_disks(Window::torus(2, 10.0), {{5, 5, 1.0}});
        MonteCarloEstimate e = volume_fraction(Thinning{{0}, "all", true}, c, 1000000, 2);
        CHECK_THAT(e.estimate, Catch::Matchers::WithinAbs(kPi / 100.0, 4.0 * e.ci_half_width));
    }
    SECTION("agrees with h_intensity under the volume weight") {
        for (int rep = 0; rep < 5; ++rep) {
            Configuration c = sample_poisson(0.8, RadiusLaw::uniform(0.2, 0.5),
                                             Window::torus(2, 10.0),
                                             mix_seed(72, "volfrac", static_cast<std::uint64_t>(rep)));
            Thinning t = component_max(c, WeightSpec::volume(), 64);
            MonteCarloEstimate e = volume_fraction(t, c, 200000, 3);
            double exact = h_intensity(t, c, WeightSpec::volume());
            CHECK_THAT(e.estimate, Catch::Matchers::WithinAbs(exact, 4.0 * e.ci_half_width));
            CHECK(e.estimate <= 1.0);
        }
    }
}

TEST_CASE("isoperimetric coefficient") {
    Window w = Window::torus(2, 10.0);
    SECTION("single cell has no boundary") {
        Tessellation tess{w, {Vec{5, 5, 0}}};
        CHECK(isoperimetric_coefficient(tess, 1.0, w, 5000, 1) == 0.0);
    }
    SECTION("large m saturates at one") {
        Tessellation tess{w, {Vec{2, 2, 0}, Vec{8, 8, 0}}};
        CHECK(isoperimetric_coefficient(tess, 10.0, w, 5000, 1) == 1.0);
    }
    SECTION("union fraction is bounded by the per-cell-sum upper bound") {
        Tessellation tess = sample_voronoi(w, 0.2, 9);
        IsoperimetricReport r = isoperimetric_report(tess, 0.6, w, 20000, 2);
        CHECK(r.union_fraction <= r.per_cell_sum_upper);
        CHECK(r.union_fraction > 0.0);
        CHECK(r.union_fraction <= 1.0);
    }
    SECTION("coefficient decreases as seeds thin out", "[montecarlo]") {
        const int replicates = 60;
        const double m = 1.0;
        std::vector<double> means, ses;
        for (double s : {1.0, 0.25, 0.0625}) {
            double sum = 0.0, sum_sq = 0.0;
            for (int i = 0; i < replicates; ++i) {
                Window torus = Window::torus(2, 16.0);
                Tessellation tess = sample_voronoi(
                    torus, s, mix_seed(73, "iso-trend", static_cast<std::uint64_t>(i) * 8 +
                                                            static_cast<std::uint64_t>(s * 16)));
                double f = isoperimetric_coefficient(tess, m, torus, 4000,
                                                     mix_seed(74, "iso-pts", static_cast<std::uint64_t>(i)));
                sum += f;
                sum_sq += f * f;
            }
            double mean = sum / replicates;
            double var = std::max(0.0, sum_sq / replicates - mean * mean);
            means.push_back(mean);
            ses.push_back(std::sqrt(var / replicates));
        }
        for (std::size_t i = 0; i + 1 < means.size(); ++i) {
            double diff_se = std::sqrt(ses[i] * ses[i] + ses[i + 1] * ses[i + 1]);
            CHECK(means[i] - means[i + 1] > -2.0 * diff_se);
            CHECK(means[i] > means[i + 1] - 2.0 * diff_se);  // strictly decreasing within 2 SE
        }
        CHECK(means.front() > means.back());
    }
}
