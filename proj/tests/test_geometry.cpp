#include "cdr/error.hpp"
#include "cdr/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cdr;

TEST_CASE("dist")
{
    CHECK(dist({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(dist({0.3, 0.7}, {0.3, 0.7}) == 0.0);
    CHECK(dist({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("discs_overlap is strict")
{
    CHECK(discs_overlap({{0, 0}, 1}, {{1.5, 0}, 1}));
    CHECK_FALSE(discs_overlap({{0, 0}, 1}, {{2.0, 0}, 1}));
    CHECK(discs_overlap({{0.2, 0.2}, 0.1}, {{0.2, 0.2}, 0.1}));
}

TEST_CASE("discs_overlap is symmetric")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Disc a{{u(rng), u(rng)}, 0.01 + 0.2 * u(rng)};
        const Disc b{{u(rng), u(rng)}, 0.01 + 0.2 * u(rng)};
        CHECK(discs_overlap(a, b) == discs_overlap(b, a));
    }
}

TEST_CASE("make_regions")
{
    const Workspace unit{1.0, 1.0};
    SUBCASE("rho 0.3 gives symmetric boundaries")
    {
        const auto rs = make_regions(unit, 0.3);
        CHECK(rs.x_right_of_r1 == doctest::Approx(0.65));
        CHECK(rs.x_left_of_r2 == doctest::Approx(0.35));
        CHECK(rs.x_right_of_r1 - rs.x_left_of_r2 == doctest::Approx(0.3));
        CHECK(rs.handoff_projection == Pose{0.5, 0.5});
        CHECK(rs.rest_pose_r1 == Pose{0.0, 0.5});
        CHECK(rs.rest_pose_r2 == Pose{1.0, 0.5});
    }
    SUBCASE("full overlap")
    {
        const auto rs = make_regions(unit, 1.0);
        CHECK(rs.x_right_of_r1 == 1.0);
        CHECK(rs.x_left_of_r2 == 0.0);
    }
    SUBCASE("no overlap")
    {
        const auto rs = make_regions(unit, 0.0);
        CHECK(rs.x_right_of_r1 == 0.5);
        CHECK(rs.x_left_of_r2 == 0.5);
    }
    SUBCASE("out of range")
    {
        CHECK_THROWS_AS(make_regions(unit, -0.1), InvalidInput);
        CHECK_THROWS_AS(make_regions(unit, 1.01), InvalidInput);
        CHECK_THROWS_AS(make_regions(unit, std::nan("")), InvalidInput);
    }
    SUBCASE("overlap width equals rho times width")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const Workspace w{0.2 + 3.0 * u(rng), 0.2 + 3.0 * u(rng)};
            const double rho = u(rng);
            const auto rs = make_regions(w, rho);
            CHECK(std::abs((rs.x_right_of_r1 - rs.x_left_of_r2) / w.width - rho) <= 1e-12);
        }
    }
}

TEST_CASE("reachable_arms")
{
    const Workspace unit{1.0, 1.0};
    const auto rs = make_regions(unit, 0.3);
    CHECK(reachable_arms(rs, {0.5, 0.5}).is_both());
    CHECK(reachable_arms(rs, {0.9, 0.5}) == ArmSet::only(Arm::R2));
    CHECK(reachable_arms(rs, {0.1, 0.5}) == ArmSet::only(Arm::R1));
    CHECK(reachable_arms(rs, {0.65, 0.5}).is_both());
    CHECK(reachable_arms(rs, {0.35, 0.5}).is_both());
    CHECK_THROWS_AS(reachable_arms(rs, unit, {1.2, 0.5}), InvalidInput);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto full = make_regions(unit, 1.0);
    const auto none = make_regions(unit, 0.0);
    for (int i = 0; i < 1000; ++i) {
        const Pose p{u(rng), u(rng)};
        CHECK(reachable_arms(full, p).is_both());
        CHECK_FALSE(reachable_arms(make_regions(unit, u(rng)), p).empty());
        if (p.x != 0.5) CHECK(reachable_arms(none, p).size() == 1);
    }
}

TEST_CASE("footprint_in_workspace")
{
    const Workspace unit{1.0, 1.0};
    CHECK(footprint_in_workspace({{0.5, 0.5}, 0.1}, unit));
    CHECK_FALSE(footprint_in_workspace({{0.05, 0.5}, 0.1}, unit));
    CHECK(footprint_in_workspace({{0.1, 0.5}, 0.1}, unit));
}

TEST_CASE("region_diagonal")
{
    const Workspace w{1.0, 1.0};
    const auto rs = make_regions(w, 0.5);
    // S(r1) = [0, 0.75] x [0, 1]
    CHECK(region_diagonal(rs, w, Arm::R1) == doctest::Approx(1.25));
    CHECK(region_diagonal(rs, w, Arm::R2) == doctest::Approx(1.25));
}
