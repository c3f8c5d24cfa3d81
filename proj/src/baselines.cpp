#include "cdr/baselines.hpp"

#include "cdr/error.hpp"

#include <algorithm>
#include <optional>

namespace cdr {

Schedule single_arm_mchs(const Instance& inst, SearchStats* stats)
{
    MchsOptions opts;
    opts.single_arm = true;
    return mchs_search(inst, opts, stats);
}

namespace {

JointStep make_step(std::vector<PrimitiveAction> actions, StepKind kind)
{
    std::sort(actions.begin(), actions.end(), [](const PrimitiveAction& a, const PrimitiveAction& b) { return index(a.arm) < index(b.arm); });
    if (kind != StepKind::Handoff) kind = actions.size() == 1 ? StepKind::Individual : StepKind::Pair;
    return {std::move(actions), kind};
}

ArmSet reach_of(const Instance& inst, Status st, int o)
{
    if (st == Status::Buffer1) return ArmSet::only(Arm::R1);
    if (st == Status::Buffer2) return ArmSet::only(Arm::R2);
    return reachable_arms(inst.regions, st == Status::Goal ? inst.object(o).goal : inst.object(o).start);
}

} // namespace

Schedule split_schedule(const Schedule& single, const Instance& inst)
{
    struct Task {
        int object;
        std::vector<PrimitiveAction> actions;
        bool handoff;
        // footprints for ordering; nullopt when the pose is a buffer
        std::optional<Disc> source;
        std::optional<Disc> target;
        int step = 0;
    };
    std::vector<Task> tasks;
    std::vector<Status> status(static_cast<std::size_t>(inst.size()), Status::Start);
    for (int o = 0; o < inst.size(); ++o)
        if (inst.object(o).start == inst.object(o).goal) status[static_cast<std::size_t>(o)] = Status::Goal;
    std::array<int, 2> load{0, 0};

    for (const auto& step : single.steps) {
        for (const auto& a : step.actions) {
            const int o = a.object;
            const auto oi = static_cast<std::size_t>(o);
            const Status st = status[oi];
            const ArmSet from = reach_of(inst, st, o);
            const bool to_goal = a.target == Target::Goal;
            const ArmSet to = to_goal ? reachable_arms(inst.regions, inst.object(o).goal) : ArmSet::both();
            const ArmSet both = from & to;
            Task t{o, {}, false, std::nullopt, std::nullopt};
            if (st == Status::Start) t.source = inst.object(o).start_disc();
            if (to_goal) t.target = inst.object(o).goal_disc();
            if (both.empty()) {
                const Arm d = from.sole();
                t.handoff = true;
                t.actions = {{d, o, Target::Handoff}, {other(d), o, Target::Goal}};
                ++load[static_cast<std::size_t>(index(d))];
                ++load[static_cast<std::size_t>(index(other(d)))];
                status[oi] = Status::Goal;
            } else {
                Arm arm = both.is_both() ? (load[1] < load[0] ? Arm::R2 : Arm::R1) : both.sole();
                ++load[static_cast<std::size_t>(index(arm))];
                const Target target = to_goal ? Target::Goal : buffer_target(arm);
                t.actions = {{arm, o, target}};
                status[oi] = status_after(target);
            }
            tasks.push_back(std::move(t));
        }
    }

    std::array<int, 2> arm_free{0, 0};
    int makespan = 0;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        auto& t = tasks[k];
        int earliest = 0;
        for (const auto& a : t.actions) earliest = std::max(earliest, arm_free[static_cast<std::size_t>(index(a.arm))]);
        for (std::size_t j = 0; j < k; ++j) {
            const auto& e = tasks[j];
            bool after = e.object == t.object;
            if (t.target) {
                after = after || (e.source && discs_overlap(*e.source, *t.target)) || (e.target && discs_overlap(*e.target, *t.target));
            }
            if (after) earliest = std::max(earliest, e.step + 1);
        }
        t.step = earliest;
        for (const auto& a : t.actions) arm_free[static_cast<std::size_t>(index(a.arm))] = earliest + 1;
        makespan = std::max(makespan, earliest + 1);
    }

    Schedule out;
    std::vector<std::vector<const Task*>> by_step(static_cast<std::size_t>(makespan));
    for (const auto& t : tasks) by_step[static_cast<std::size_t>(t.step)].push_back(&t);
    for (const auto& group : by_step) {
        std::vector<PrimitiveAction> actions;
        bool handoff = false;
        for (const Task* t : group) {
            handoff = handoff || t->handoff;
            actions.insert(actions.end(), t->actions.begin(), t->actions.end());
        }
        out.steps.push_back(make_step(std::move(actions), handoff ? StepKind::Handoff : StepKind::Individual));
    }
    return out;
}

Schedule greedy_plan(const Instance& inst)
{
    const int n = inst.size();
    auto s = ArrangementState::initial(inst);
    const auto& rs = inst.regions;
    std::array<Pose, 2> ee{rs.rest_pose(Arm::R1), rs.rest_pose(Arm::R2)};
    auto region_center = [&](Arm a) { return Pose{(rs.x_min(a) + rs.x_max(a, inst.workspace)) / 2.0, inst.workspace.height / 2.0}; };
    auto position = [&](int o) {
        const Status st = s.statuses[static_cast<std::size_t>(o)];
        if (st == Status::Buffer1) return region_center(Arm::R1);
        if (st == Status::Buffer2) return region_center(Arm::R2);
        return inst.object(o).start;
    };

    Schedule out;
    for (int steps = 0; !s.all_at_goal(); ++steps) {
        if (steps >= 10 * n) throw PlanningError("greedy_plan: no solution within " + std::to_string(10 * n) + " steps");
        std::vector<char> taken(static_cast<std::size_t>(n), 0);
        std::vector<PrimitiveAction> actions;
        std::array<bool, 2> used{false, false};
        bool handoff = false;

        auto goal_free = [&](int o) {
            const Disc g = inst.object(o).goal_disc();
            for (int j = 0; j < n; ++j) {
                if (j == o || taken[static_cast<std::size_t>(j)] || s.statuses[static_cast<std::size_t>(j)] != Status::Start) continue;
                if (discs_overlap(g, inst.object(j).start_disc())) return false;
            }
            return true;
        };
        auto nearest = [&](Arm arm, auto&& eligible) {
            int best = -1;
            double best_d = 0.0;
            for (int o = 0; o < n; ++o) {
                if (!eligible(o)) continue;
                const double d = dist(ee[static_cast<std::size_t>(index(arm))], position(o));
                if (best < 0 || d < best_d) {
                    best = o;
                    best_d = d;
                }
            }
            return best;
        };

        for (Arm arm : kArms) {
            const auto ai = static_cast<std::size_t>(index(arm));
            if (used[ai]) continue;
            const Status mine = buffer_status(arm);
            auto movable = [&](int o) {
                const auto oi = static_cast<std::size_t>(o);
                return !taken[oi] && s.statuses[oi] != Status::Goal && current_reach(inst, s, o).contains(arm);
            };
            auto goal_ok = [&](int o) { return reachable_arms(rs, inst.object(o).goal).contains(arm) && goal_free(o); };

            int chosen = nearest(arm, [&](int o) { return movable(o) && s.statuses[static_cast<std::size_t>(o)] == mine && goal_ok(o); });
            Target target = Target::Goal;
            if (chosen < 0) {
                std::vector<int> order;
                for (int o = 0; o < n; ++o)
                    if (movable(o)) order.push_back(o);
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return dist(ee[ai], position(a)) < dist(ee[ai], position(b));
                });
                const Arm partner = other(arm);
                for (int o : order) {
                    if (goal_ok(o)) {
                        chosen = o;
                        target = Target::Goal;
                        break;
                    }
                    const bool partner_free = !used[static_cast<std::size_t>(index(partner))] && actions.empty();
                    if (partner_free && needs_handoff(inst, s, o) && reachable_arms(rs, inst.object(o).goal).contains(partner) &&
                        goal_free(o)) {
                        chosen = o;
                        target = Target::Handoff;
                        break;
                    }
                    if (s.statuses[static_cast<std::size_t>(o)] == Status::Start) {
                        chosen = o;
                        target = buffer_target(arm);
                        break;
                    }
                }
            }
            if (chosen < 0) continue;
            taken[static_cast<std::size_t>(chosen)] = 1;
            used[ai] = true;
            if (target == Target::Handoff) {
                const Arm partner = other(arm);
                used[static_cast<std::size_t>(index(partner))] = true;
                handoff = true;
                actions.push_back({arm, chosen, Target::Handoff});
                actions.push_back({partner, chosen, Target::Goal});
                ee[ai] = rs.handoff_projection;
                ee[static_cast<std::size_t>(index(partner))] = inst.object(chosen).goal;
                break;
            }
            actions.push_back({arm, chosen, target});
            ee[ai] = target == Target::Goal ? inst.object(chosen).goal : region_center(arm);
        }
        if (actions.empty()) throw PlanningError("greedy_plan: no applicable move");
        auto step = make_step(std::move(actions), handoff ? StepKind::Handoff : StepKind::Individual);
        s = apply_step(s, step);
        out.steps.push_back(std::move(step));
    }
    return out;
}

} // namespace cdr
