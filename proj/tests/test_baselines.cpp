#include "cdr/baselines.hpp"
#include "cdr/error.hpp"
#include "cdr/executor.hpp"
#include "cdr/plan.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cdr;

namespace {

int action_count(const Schedule& s)
{
    int n = 0;
    for (const auto& step : s.steps) n += static_cast<int>(step.actions.size());
    return n;
}

int buffer_visits(const Schedule& s)
{
    int n = 0;
    for (const auto& step : s.steps)
        for (const auto& a : step.actions) n += is_buffer(status_after(a.target)) ? 1 : 0;
    return n;
}

Instance independent_four()
{
    return new_instance({1, 1}, 1.0,
                        {{0.05, {0.1, 0.1}, {0.1, 0.3}},
                         {0.05, {0.9, 0.1}, {0.9, 0.3}},
                         {0.05, {0.1, 0.9}, {0.1, 0.7}},
                         {0.05, {0.9, 0.9}, {0.9, 0.7}}});
}

// o1's goal overlaps o2's start, o2's goal overlaps o3's start.
Instance chain_of_three()
{
    return new_instance({1, 1}, 1.0,
                        {{0.05, {0.2, 0.5}, {0.42, 0.5}}, {0.05, {0.5, 0.5}, {0.72, 0.5}}, {0.05, {0.8, 0.5}, {0.8, 0.9}}});
}

} // namespace

TEST_CASE("single_arm_mchs")
{
    const auto chain = single_arm_mchs(chain_of_three());
    CHECK(action_count(chain) == 3);
    CHECK(chain.makespan_mc() == 3);

    // 2-cycle (3 actions) plus 3-cycle (4 actions)
    const auto cdrf = single_arm_mchs(fixtures::fig2_right());
    CHECK(action_count(cdrf) == 7);
    CHECK(buffer_visits(cdrf) == 2);

    const auto done = new_instance({1, 1}, 0.5, {{0.05, {0.3, 0.3}, {0.3, 0.3}}});
    CHECK(single_arm_mchs(done).makespan_mc() == 0);
}

TEST_CASE("split_schedule")
{
    SUBCASE("independent moves split evenly")
    {
        const auto inst = independent_four();
        const auto split = split_schedule(single_arm_mchs(inst), inst);
        CHECK(split.makespan_mc() == 2);
        for (const auto& step : split.steps) CHECK(step.actions.size() == 2);
        CHECK(oracle::check_schedule(inst, split).empty());
    }
    SUBCASE("cross-region move becomes a handoff")
    {
        const auto inst = fixtures::fig2_left();
        const auto split = split_schedule(single_arm_mchs(inst), inst);
        int handoffs = 0;
        for (const auto& step : split.steps) {
            if (step.kind != StepKind::Handoff) continue;
            ++handoffs;
            REQUIRE(step.actions.size() == 2);
            CHECK(step.actions[0].object == 2);
            CHECK(step.actions[0].target == Target::Handoff);
            CHECK(step.actions[1].arm == Arm::R2);
        }
        CHECK(handoffs == 1);
        CHECK(oracle::check_schedule(inst, split).empty());
    }
    SUBCASE("serialized chain keeps its length")
    {
        const auto inst = chain_of_three();
        const auto single = single_arm_mchs(inst);
        CHECK(split_schedule(single, inst).makespan_mc() == single.makespan_mc());
    }
    SUBCASE("random instances: valid and never better than MCHS")
    {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto inst = gen_instance(5, 0.25, (seed % 3) * 0.5, {1, 1}, seed);
            const auto split = split_schedule(single_arm_mchs(inst), inst);
            CHECK(oracle::check_schedule(inst, split).empty());
            CHECK(split.makespan_mc() >= mchs_search(inst).makespan_mc());
        }
    }
}

TEST_CASE("greedy_plan")
{
    SUBCASE("free goals: nearest first, two per step")
    {
        const auto inst = independent_four();
        const auto g = greedy_plan(inst);
        REQUIRE(g.makespan_mc() == 2);
        // r1 rests at (0, 0.5): o1 and o3 are equally near, the lower id wins
        CHECK(g.steps[0].actions[0].object == 0);
        CHECK(g.steps[0].actions[1].object == 1);
        CHECK(oracle::check_schedule(inst, g).empty());
    }
    SUBCASE("a parked object goes home first")
    {
        const auto inst = fixtures::fig2_right();
        const auto g = greedy_plan(inst);
        CHECK(oracle::check_schedule(inst, g).empty());
        ArrangementState s = ArrangementState::initial(inst);
        for (const auto& step : g.steps) {
            for (const auto& a : step.actions) {
                const bool parked = is_buffer(s[a.object]) && s[a.object] == buffer_status(a.arm);
                if (!parked) continue;
                CHECK(a.target == Target::Goal);
            }
            s = apply_step(s, step);
        }
        CHECK(buffer_visits(g) >= buffer_visits(mchs_search(inst)));
    }
    SUBCASE("random instances terminate with valid schedules")
    {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto inst = gen_instance(8, 0.3, (seed % 3) * 0.5, {1, 1}, seed);
            const auto g = greedy_plan(inst);
            CHECK(oracle::check_schedule(inst, g).empty());
            CHECK(g.makespan_mc() >= mchs_search(inst).makespan_mc());
        }
    }
}
