#include "cdr/error.hpp"
#include "cdr/instance.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cdr;

TEST_CASE("new_instance validation")
{
    const Workspace unit{1.0, 1.0};
    SUBCASE("worked example is valid")
    {
        const auto inst = fixtures::fig2_left();
        CHECK(inst.size() == 3);
        CHECK(inst.object(2).id == 3);
    }
    SUBCASE("shared start pose")
    {
        CHECK_THROWS_WITH_AS(new_instance(unit, 0.5, {{0.05, {0.5, 0.5}, {0.2, 0.2}}, {0.05, {0.5, 0.5}, {0.8, 0.8}}}),
                             "infeasible start arrangement: objects 1 and 2 overlap", InvalidInput);
    }
    SUBCASE("overlapping goals")
    {
        CHECK_THROWS_AS(new_instance(unit, 0.5, {{0.05, {0.2, 0.2}, {0.5, 0.5}}, {0.05, {0.8, 0.8}, {0.52, 0.5}}}),
                        InvalidInput);
    }
    SUBCASE("empty object list") { CHECK_THROWS_AS(new_instance(unit, 0.5, {}), InvalidInput); }
    SUBCASE("footprint outside") { CHECK_THROWS_AS(new_instance(unit, 0.5, {{0.1, {0.05, 0.5}, {0.5, 0.5}}}), InvalidInput); }
    SUBCASE("bad rho") { CHECK_THROWS_AS(new_instance(unit, 1.5, {{0.1, {0.5, 0.5}, {0.5, 0.5}}}), InvalidInput); }
}

TEST_CASE("density")
{
    const Workspace unit{1.0, 1.0};
    CHECK(density(new_instance(unit, 0.5, {{0.1, {0.5, 0.5}, {0.5, 0.5}}})) ==
          doctest::Approx(std::numbers::pi * 0.01));
    CHECK(density(new_instance(unit, 0.5, {{1e-9, {0.5, 0.5}, {0.5, 0.5}}})) < 1e-15);

    const double r = std::sqrt(0.4 / (20 * std::numbers::pi));
    CHECK(radius_for_density(20, 0.4, unit) == doctest::Approx(r).epsilon(1e-15));
    const auto inst = gen_instance(20, 0.4, 0.5, unit, 1);
    CHECK(std::abs(density(inst) - 0.4) <= 1e-9);
}

TEST_CASE("gen_random_start")
{
    const Workspace unit{1.0, 1.0};
    SUBCASE("single object")
    {
        const auto poses = gen_random_start(1, 0.3, unit, 5);
        REQUIRE(poses.size() == 1);
        CHECK(footprint_in_workspace({poses[0], radius_for_density(1, 0.3, unit)}, unit));
    }
    SUBCASE("twenty disjoint poses at D=0.4")
    {
        const auto poses = gen_random_start(20, 0.4, unit, 42);
        const double r = radius_for_density(20, 0.4, unit);
        REQUIRE(poses.size() == 20);
        for (std::size_t i = 0; i < poses.size(); ++i) {
            CHECK(footprint_in_workspace({poses[i], r}, unit));
            for (std::size_t j = i + 1; j < poses.size(); ++j) CHECK_FALSE(discs_overlap({poses[i], r}, {poses[j], r}));
        }
    }
    SUBCASE("deterministic per seed")
    {
        CHECK(gen_random_start(10, 0.3, unit, 9) == gen_random_start(10, 0.3, unit, 9));
        CHECK(gen_random_start(10, 0.3, unit, 9) != gen_random_start(10, 0.3, unit, 10));
    }
    SUBCASE("infeasible density") { CHECK_THROWS_AS(gen_random_start(20, 0.99, unit, 1), GenerationError); }
}

TEST_CASE("gen_organized_goal")
{
    const Workspace unit{1.0, 1.0};
    SUBCASE("2x2 grid")
    {
        const auto g = gen_organized_goal(4, 0.05, unit);
        REQUIRE(g.size() == 4);
        CHECK(dist(g[0], g[1]) == doctest::Approx(0.11));
        CHECK(dist(g[0], g[2]) == doctest::Approx(0.11));
        CHECK(dist(g[2], g[3]) == doctest::Approx(0.11));
        CHECK(dist(g[1], g[3]) == doctest::Approx(0.11));
        CHECK((g[0].x + g[3].x) / 2 == doctest::Approx(0.5));
        CHECK((g[0].y + g[3].y) / 2 == doctest::Approx(0.5));
    }
    SUBCASE("single object at the centre") { CHECK(gen_organized_goal(1, 0.1, unit).front() == Pose{0.5, 0.5}); }
    SUBCASE("grid too large") { CHECK_THROWS_AS(gen_organized_goal(100, 0.1, unit), GenerationError); }
}

TEST_CASE("generated instances validate and are pure in their inputs")
{
    const Workspace w{1.0, 1.0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = gen_instance(8, 0.3, 0.5, w, seed);
        const auto b = gen_instance(8, 0.3, 0.5, w, seed);
        CHECK(encode_instance(a) == encode_instance(b));
        CHECK_NOTHROW(new_instance(w, 0.5, [&] {
            std::vector<ObjectInput> in;
            for (const auto& o : a.objects) in.push_back({o.radius, o.start, o.goal});
            return in;
        }()));
        CHECK(std::abs(density(a) - 0.3) <= 1e-9);
    }
}

TEST_CASE("instance encoding")
{
    SUBCASE("round trip")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto inst = gen_instance(6, 0.25, 0.1 * static_cast<double>(seed), {1.3, 0.9}, seed);
            const auto back = decode_instance(encode_instance(inst));
            REQUIRE(back.size() == inst.size());
            CHECK(back.regions.rho == inst.regions.rho);
            CHECK(back.workspace.width == inst.workspace.width);
            for (int i = 0; i < inst.size(); ++i) {
                CHECK(back.object(i).start == inst.object(i).start);
                CHECK(back.object(i).goal == inst.object(i).goal);
                CHECK(back.object(i).radius == inst.object(i).radius);
            }
        }
    }
    SUBCASE("missing rho")
    {
        CHECK_THROWS_AS(decode_instance(R"({"workspace":{"width":1,"height":1},"objects":[]})"), InvalidInput);
    }
    SUBCASE("malformed") { CHECK_THROWS_AS(decode_instance("{not json"), InvalidInput); }
    SUBCASE("worked example document")
    {
        const auto inst = decode_instance(R"({
          "workspace": {"width": 1.0, "height": 1.0},
          "rho": 0.3,
          "objects": [
            {"id": 1, "radius": 0.05, "start": [0.45, 0.30], "goal": [0.56, 0.36]},
            {"id": 2, "radius": 0.05, "start": [0.55, 0.30], "goal": [0.44, 0.36]},
            {"id": 3, "radius": 0.05, "start": [0.15, 0.70], "goal": [0.85, 0.70]}
          ]})");
        CHECK(inst.size() == 3);
    }
}
