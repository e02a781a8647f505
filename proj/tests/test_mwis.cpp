#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "hct/mwis.hpp"
#include "test_util.hpp"

using namespace hct;
using hct::test::make_disks;

namespace {

// radius giving a unit-disk weight of exactly `target` under h = Volume, d = 2
double radius_for_area(double target) { return std::sqrt(target / kPi); }

std::vector<int> all_ids(const Configuration& c) {
    std::vector<int> ids(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i) ids[static_cast<std::size_t>(i)] = i;
    return ids;
}

}  // namespace

TEST_CASE("solve_exact simple fixtures") {
    WeightSpec h = WeightSpec::volume();
    SECTION("single grain keeps itself") {
        Configuration c = make_disks(Window::free_ball(2, 5.0), {{0, 0, 1.0}});
        MwisResult r = solve_exact(all_ids(c), c, h);
        CHECK(r.chosen == std::vector<int>{0});
        CHECK_THAT(static_cast<double>(r.total_weight), Catch::Matchers::WithinRel(kPi, 1e-12));
    }
    SECTION("pairwise conflict keeps the heavier grain") {
        Configuration c = make_disks(Window::free_ball(2, 5.0),
                                     {{0, 0, radius_for_area(3.0)}, {0.5, 0, radius_for_area(5.0)}});
        MwisResult r = solve_exact(all_ids(c), c, h);
        CHECK(r.chosen == std::vector<int>{1});
        CHECK_THAT(static_cast<double>(r.total_weight), Catch::Matchers::WithinRel(5.0, 1e-12));
    }
}

TEST_CASE("brute_force fixtures") {
    WeightSpec h = WeightSpec::volume();
    SECTION("empty set gives the empty result") {
        Configuration c{Window::free_ball(2, 5.0), {}};
        MwisResult r = brute_force(std::vector<int>{}, c, h);
        CHECK(r.chosen.empty());
        CHECK(r.total_weight == 0.0L);
    }
    SECTION("triangle keeps the heaviest") {
        Configuration c = make_disks(Window::free_ball(2, 5.0),
                                     {{0, 0, radius_for_area(1.0)},
                                      {0.4, 0, radius_for_area(2.0)},
                                      {0.2, 0.3, radius_for_area(3.0)}});
        // all three mutually overlap
        REQUIRE(interiors_overlap(c.grain(0), c.grain(1), c.window));
        REQUIRE(interiors_overlap(c.grain(0), c.grain(2), c.window));
        REQUIRE(interiors_overlap(c.grain(1), c.grain(2), c.window));
        MwisResult r = brute_force(all_ids(c), c, h);
        CHECK(r.chosen == std::vector<int>{2});
    }
    SECTION("4-cycle with unit weights resolves the tie lexicographically") {
        Configuration c = make_disks(Window::free_ball(2, 5.0),
                                     {{0, 0, 0.6}, {1, 0, 0.6}, {1, 1, 0.6}, {0, 1, 0.6}});
        MwisResult r = brute_force(all_ids(c), c, WeightSpec::unit());
        CHECK(r.total_weight == 2.0L);
        // the set containing the center (0,0) wins the tie
        CHECK(r.chosen == std::vector<int>{0, 2});
        MwisResult e = solve_exact(all_ids(c), c, WeightSpec::unit());
        CHECK(e.chosen == r.chosen);
    }
    SECTION("more than 20 grains is rejected") {
        std::vector<std::array<double, 3>> rows;
        for (int i = 0; i < 21; ++i)
            rows.push_back({static_cast<double>(i % 5), static_cast<double>(i / 5), 0.2});
        Configuration c = make_disks(Window::free_ball(2, 8.0), rows);
        CHECK_THROWS_AS(brute_force(all_ids(c), c, WeightSpec::unit()), TooManyGrains);
    }
}

TEST_CASE("solve_exact equals brute_force on random configurations") {
    WeightSpec h = WeightSpec::volume();
    int checked_components = 0;
    for (int rep = 0; rep < 80; ++rep) {
        Configuration c = sample_poisson(0.25, RadiusLaw::uniform(0.3, 0.5),
                                         Window::torus(2, 14.0),
                                         mix_seed(2024, "mwis-oracle", static_cast<std::uint64_t>(rep)));
        auto comps = connected_components(build_contact_graph(c));
        for (const auto& comp : comps) {
            if (comp.size() > 15) continue;
            MwisResult exact = solve_exact(comp, c, h);
            MwisResult brute = brute_force(comp, c, h);
            REQUIRE(exact.chosen == brute.chosen);
            CHECK_THAT(static_cast<double>(exact.total_weight),
                       Catch::Matchers::WithinRel(static_cast<double>(brute.total_weight), 1e-12));
            ++checked_components;
        }
    }
    CHECK(checked_components > 200);
}

TEST_CASE("solve_exact output is hard-core") {
    Configuration c = sample_poisson(0.5, RadiusLaw::uniform(0.2, 0.6), Window::torus(2, 12.0), 11);
    MwisResult r = solve_exact(all_ids(c), c, WeightSpec::volume(), 64);
    for (std::size_t i = 0; i < r.chosen.size(); ++i)
        for (std::size_t j = i + 1; j < r.chosen.size(); ++j)
            CHECK_FALSE(interiors_overlap(c.grain(r.chosen[i]), c.grain(r.chosen[j]), c.window));
}

TEST_CASE("result does not depend on input id order") {
    Configuration c = sample_poisson(0.4, RadiusLaw::uniform(0.2, 0.6), Window::torus(2, 10.0), 55);
    std::vector<int> ids = all_ids(c);
    MwisResult fwd = solve_exact(ids, c, WeightSpec::volume(), 64);
    std::reverse(ids.begin(), ids.end());
    MwisResult rev = solve_exact(ids, c, WeightSpec::volume(), 64);
    CHECK(fwd.chosen == rev.chosen);
}

TEST_CASE("adding a grain never decreases the optimum") {
    Configuration c = sample_poisson(0.4, RadiusLaw::uniform(0.2, 0.6), Window::torus(2, 10.0), 66);
    REQUIRE(c.size() >= 3);
    std::vector<int> ids;
    long double prev = 0.0L;
    for (int i = 0; i < c.size(); ++i) {
        ids.push_back(i);
        MwisResult r = solve_exact(ids, c, WeightSpec::volume(), 64);
        CHECK(r.total_weight >= prev);
        prev = r.total_weight;
    }
}

TEST_CASE("component cap reports the offending size") {
    // 5 mutually overlapping grains with cap 4
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i < 5; ++i) rows.push_back({0.01 * i, 0.0, 1.0});
    Configuration c = make_disks(Window::free_ball(2, 5.0), rows);
    try {
        solve_exact(all_ids(c), c, WeightSpec::unit(), 4);
        FAIL("expected ComponentTooLarge");
    } catch (const ComponentTooLarge& e) {
        CHECK(e.component_size == 5);
    }
}
