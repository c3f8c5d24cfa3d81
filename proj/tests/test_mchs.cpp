#include "cdr/error.hpp"
#include "cdr/mchs.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cdr;

namespace {

bool contains_action(const std::vector<PrimitiveAction>& v, PrimitiveAction a)
{
    return std::find(v.begin(), v.end(), a) != v.end();
}

} // namespace

TEST_CASE("needs_handoff")
{
    const auto inst = fixtures::fig2_left();
    const auto s = ArrangementState::at_start(3);
    CHECK(needs_handoff(inst, s, 2));
    CHECK_FALSE(needs_handoff(inst, s, 0));

    const auto full = fixtures::fig2_right();
    for (int o = 0; o < full.size(); ++o) CHECK_FALSE(needs_handoff(full, ArrangementState::at_start(5), o));

    // o at B1 whose goal sits in the overlap strip: r1 reaches both.
    auto b1 = s;
    b1[0] = Status::Buffer1;
    CHECK_FALSE(needs_handoff(inst, b1, 0));
}

TEST_CASE("individual_actions")
{
    const auto inst = fixtures::fig2_left();
    const auto g = build_dependency_graph(inst);
    auto s = ArrangementState::at_start(3);

    SUBCASE("free goals after the blocker left")
    {
        s[0] = Status::Goal;
        const auto acts = individual_actions(inst, g, s, Arm::R1);
        CHECK(contains_action(acts, {Arm::R1, 1, Target::Goal}));
        CHECK(contains_action(acts, {Arm::R1, 1, Target::Buffer1}));
        // o3 needs a handoff, so r1 may only park it.
        CHECK_FALSE(contains_action(acts, {Arm::R1, 2, Target::Goal}));
        CHECK(contains_action(acts, {Arm::R1, 2, Target::Buffer1}));
    }
    SUBCASE("blocked goals are not offered")
    {
        const auto acts = individual_actions(inst, g, s, Arm::R1);
        CHECK_FALSE(contains_action(acts, {Arm::R1, 0, Target::Goal}));
        CHECK_FALSE(contains_action(acts, {Arm::R1, 1, Target::Goal}));
    }
    SUBCASE("buffer of r1 is unreachable for r2")
    {
        s[0] = Status::Buffer1;
        for (const auto& a : individual_actions(inst, g, s, Arm::R2)) CHECK(a.object != 0);
    }
    SUBCASE("all at goal")
    {
        ArrangementState done{{Status::Goal, Status::Goal, Status::Goal}};
        CHECK(individual_actions(inst, g, done, Arm::R1).empty());
        CHECK(individual_actions(inst, g, done, Arm::R2).empty());
    }
    SUBCASE("no buffers when filtered")
    {
        for (const auto& a : individual_actions(inst, g, s, Arm::R1, {false})) CHECK(a.target == Target::Goal);
    }
}

TEST_CASE("swap_actions")
{
    const auto inst = fixtures::fig2_right();
    const auto g = build_dependency_graph(inst);
    const auto s = ArrangementState::at_start(5);
    const auto steps = swap_actions(inst, g, s);

    const JointStep swap12{{{Arm::R1, 0, Target::Goal}, {Arm::R2, 1, Target::Goal}}, StepKind::Swap};
    CHECK(std::find(steps.begin(), steps.end(), swap12) != steps.end());

    bool pair_in_cycle = false;
    for (const auto& st : steps) {
        const bool in_cycle = st.actions[0].object >= 2 && st.actions[1].object >= 2;
        if (in_cycle) {
            CHECK(st.kind == StepKind::Pair);
            pair_in_cycle = true;
        }
    }
    CHECK(pair_in_cycle);

    SUBCASE("an object blocked by two obstacles contributes nothing")
    {
        const auto two = new_instance({1.0, 1.0}, 1.0,
                                      {{0.05, {0.2, 0.5}, {0.5, 0.5}},
                                       {0.05, {0.44, 0.5}, {0.8, 0.2}},
                                       {0.05, {0.56, 0.5}, {0.8, 0.8}}});
        const auto g2 = build_dependency_graph(two);
        CHECK(g2.blockers(0).size() == 2);
        for (const auto& st : swap_actions(two, g2, ArrangementState::at_start(3)))
            for (const auto& a : st.actions) CHECK_FALSE((a.object == 0 && a.target == Target::Goal));
    }
}

TEST_CASE("handoff_actions")
{
    const auto inst = fixtures::fig2_left();
    const auto g = build_dependency_graph(inst);
    ArrangementState s{{Status::Goal, Status::Goal, Status::Start}};
    const auto steps = handoff_actions(inst, g, s);
    REQUIRE(steps.size() == 1);
    const JointStep expected{{{Arm::R1, 2, Target::Handoff}, {Arm::R2, 2, Target::Goal}}, StepKind::Handoff};
    CHECK(steps.front() == expected);

    SUBCASE("blocked goal goes to the receiver's buffer")
    {
        const auto blocked = new_instance({1.0, 1.0}, 0.3,
                                          {{0.05, {0.15, 0.7}, {0.85, 0.7}}, {0.05, {0.86, 0.72}, {0.5, 0.2}}});
        const auto gb = build_dependency_graph(blocked);
        const auto st = handoff_actions(blocked, gb, ArrangementState::at_start(2));
        REQUIRE(st.size() == 1);
        CHECK(st.front().actions[1] == PrimitiveAction{Arm::R2, 0, Target::Buffer2});
    }
    SUBCASE("full overlap never hands off")
    {
        const auto full = fixtures::fig2_right();
        CHECK(handoff_actions(full, build_dependency_graph(full), ArrangementState::at_start(5)).empty());
    }
}

TEST_CASE("successors")
{
    const auto inst = fixtures::fig2_left();
    const auto g = build_dependency_graph(inst);
    const auto start = ArrangementState::at_start(3);
    const auto succ = successors(inst, g, start);
    bool found = false;
    for (const auto& [step, next] : succ) {
        if (step.actions.size() == 2 && step.actions[0].object != step.actions[1].object &&
            next == ArrangementState{{Status::Goal, Status::Goal, Status::Start}})
            found = true;
    }
    CHECK(found);
    CHECK(successors(inst, g, ArrangementState{{Status::Goal, Status::Goal, Status::Goal}}).empty());

    SUBCASE("two free objects finish in one joint step")
    {
        const auto two = new_instance({1.0, 1.0}, 1.0, {{0.05, {0.2, 0.2}, {0.4, 0.4}}, {0.05, {0.8, 0.8}, {0.6, 0.6}}});
        const auto g2 = build_dependency_graph(two);
        // By hand: r1/r2 each take either object to G or park it (4 options per arm),
        // giving 8 singles and 8 cross pairs on distinct objects; 2 of the pairs finish.
        const auto s2 = successors(two, g2, ArrangementState::at_start(2));
        CHECK(s2.size() == 16);
        int finishing = 0;
        for (const auto& [step, next] : s2) finishing += next.all_at_goal();
        CHECK(finishing == 2);
    }
}

TEST_CASE("mc_heuristic")
{
    const auto inst = fixtures::fig2_left();
    CHECK(mc_heuristic(inst, ArrangementState::at_start(3)) == 2);
    CHECK(mc_heuristic(inst, ArrangementState{{Status::Goal, Status::Goal, Status::Goal}}) == 0);

    const auto exclusive = new_instance({1.0, 1.0}, 0.2,
                                        {{0.03, {0.1, 0.1}, {0.2, 0.2}},
                                         {0.03, {0.1, 0.5}, {0.2, 0.6}},
                                         {0.03, {0.1, 0.9}, {0.2, 0.8}}});
    CHECK(mc_heuristic(exclusive, ArrangementState::at_start(3)) == 3);
}

TEST_CASE("mchs_search on the worked example")
{
    const auto inst = fixtures::fig2_left();
    const auto sched = mchs_search(inst);
    REQUIRE(sched.makespan_mc() == 2);
    CHECK(sched.steps[0].actions.size() == 2);
    CHECK(sched.steps[0].kind == StepKind::Swap);
    CHECK(sched.steps[1].kind == StepKind::Handoff);
    CHECK(sched.steps[1].actions[0].object == 2);
    CHECK(oracle::check_schedule(inst, sched).empty());
    CHECK(uniform_cost_oracle(inst) == 2);
    CHECK(dump_schedule(sched) == "1 | r1: (1,G) | r2: (2,G)\n2 | r1: (3,H) | r2: (3,G)\n");
}

TEST_CASE("mchs_search small cases")
{
    const Workspace unit{1.0, 1.0};
    SUBCASE("single object")
    {
        const auto inst = new_instance(unit, 1.0, {{0.05, {0.2, 0.2}, {0.8, 0.8}}});
        CHECK(mchs_search(inst).makespan_mc() == 1);
    }
    SUBCASE("already at goal")
    {
        const auto inst = new_instance(unit, 0.5, {{0.05, {0.2, 0.2}, {0.2, 0.2}}});
        CHECK(mchs_search(inst).makespan_mc() == 0);
        CHECK(uniform_cost_oracle(inst) == 0);
    }
    SUBCASE("2-cycle in the shared region is one swap")
    {
        const auto inst = new_instance(unit, 1.0, {{0.05, {0.45, 0.5}, {0.56, 0.56}}, {0.05, {0.55, 0.5}, {0.44, 0.56}}});
        CHECK(uniform_cost_oracle(inst) == 1);
        CHECK(mchs_search(inst).makespan_mc() == 1);
    }
    SUBCASE("oracle size guard") { CHECK_THROWS_AS(uniform_cost_oracle(gen_instance(7, 0.2, 0.5, unit, 1)), InvalidInput); }
    SUBCASE("node budget")
    {
        MchsOptions opts;
        opts.max_expansions = 1;
        CHECK_THROWS_AS(mchs_search(gen_instance(10, 0.3, 0.5, unit, 2), opts), PlanningError);
    }
}

TEST_CASE("mchs_search is optimal, admissible and consistent on random instances")
{
    const Workspace unit{1.0, 1.0};
    int checked = 0;
    for (double rho : {0.0, 0.5, 1.0}) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const int n = 2 + static_cast<int>(seed % 4);
            const auto inst = gen_instance(n, 0.25, rho, unit, 1000 + seed);
            const auto g = build_dependency_graph(inst);
            const auto to_go = oracle::exact_cost_to_go(inst);
            MchsOptions opts;
            opts.on_expand = [&](const ArrangementState& s, int) {
                const auto it = to_go.find(s.key());
                REQUIRE(it != to_go.end());
                CHECK(mc_heuristic(inst, s) <= it->second);
                for (const auto& [step, next] : successors(inst, g, s)) CHECK(mc_heuristic(inst, s) <= 1 + mc_heuristic(inst, next));
            };
            const auto sched = mchs_search(inst, opts);
            CHECK(sched.makespan_mc() == uniform_cost_oracle(inst));
            CHECK(sched.makespan_mc() == to_go.at(ArrangementState::initial(inst).key()));
            CHECK(sched.makespan_mc() >= mc_heuristic(inst, ArrangementState::initial(inst)));
            CHECK(oracle::check_schedule(inst, sched).empty());
            ++checked;
        }
    }
    CHECK(checked == 36);
}

TEST_CASE("monotone instances need no buffers")
{
    const Workspace unit{1.0, 1.0};
    int monotone = 0;
    for (std::uint64_t seed = 0; monotone < 15 && seed < 3000; ++seed) {
        const auto inst = gen_instance(6, 0.2, 0.5, unit, seed);
        if (!is_monotone(build_dependency_graph(inst))) continue;
        ++monotone;
        MchsOptions opts;
        opts.filter.allow_buffers = false;
        const auto sched = mchs_search(inst, opts);
        CHECK(sched.makespan_mc() <= inst.size());
        for (const auto& st : sched.steps)
            for (const auto& a : st.actions) CHECK_FALSE(is_buffer(a.target));
        CHECK(oracle::check_schedule(inst, sched).empty());
    }
    CHECK(monotone == 15);
}

TEST_CASE("single-arm search")
{
    const Workspace unit{1.0, 1.0};
    MchsOptions opts;
    opts.single_arm = true;
    SUBCASE("chain of three")
    {
        // o1's goal overlaps o2's start, o2's goal overlaps o3's start.
        const auto inst = new_instance(unit, 0.2,
                                       {{0.05, {0.2, 0.5}, {0.42, 0.5}},
                                        {0.05, {0.5, 0.5}, {0.72, 0.5}},
                                        {0.05, {0.8, 0.5}, {0.8, 0.9}}});
        const auto sched = mchs_search(inst, opts);
        REQUIRE(sched.makespan_mc() == 3);
        CHECK(sched.steps[0].actions[0].object == 2);
        CHECK(sched.steps[1].actions[0].object == 1);
        CHECK(sched.steps[2].actions[0].object == 0);
        CHECK(oracle::check_schedule(inst, sched, true).empty());
    }
    SUBCASE("CDRF example needs one buffer per cycle")
    {
        // Exhaustively: each cycle needs one displacement with a single arm: 5 + 2.
        const auto sched = mchs_search(fixtures::fig2_right(), opts);
        CHECK(sched.makespan_mc() == 7);
        CHECK(oracle::check_schedule(fixtures::fig2_right(), sched, true).empty());
    }
    SUBCASE("all at goal")
    {
        const auto inst = new_instance(unit, 0.5, {{0.05, {0.2, 0.2}, {0.2, 0.2}}});
        CHECK(mchs_search(inst, opts).makespan_mc() == 0);
    }
}
