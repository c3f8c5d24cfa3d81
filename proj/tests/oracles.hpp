#pragma once

// Test-only reference computations, independent of the A* search path.

#include "cdr/depgraph.hpp"
#include "cdr/mchs.hpp"

#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

namespace cdr::oracle {

/// Exact MC cost-to-go for every state reachable from the instance's start:
/// forward enumeration, then reverse breadth-first search from the goal state.
inline std::unordered_map<std::uint64_t, int> exact_cost_to_go(const Instance& inst, ActionFilter filter = {})
{
    const int n = inst.size();
    const auto g = build_dependency_graph(inst);
    const auto start = ArrangementState::initial(inst);
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> preds;
    std::unordered_map<std::uint64_t, bool> seen{{start.key(), true}};
    std::deque<std::uint64_t> queue{start.key()};
    while (!queue.empty()) {
        const auto k = queue.front();
        queue.pop_front();
        for (const auto& [step, next] : successors(inst, g, ArrangementState::from_key(k, n), filter)) {
            preds[next.key()].push_back(k);
            if (seen.emplace(next.key(), true).second) queue.push_back(next.key());
        }
    }
    std::unordered_map<std::uint64_t, int> dist;
    ArrangementState goal = start;
    for (auto& s : goal.statuses) s = Status::Goal;
    if (!seen.count(goal.key())) return dist;
    dist[goal.key()] = 0;
    queue.push_back(goal.key());
    while (!queue.empty()) {
        const auto k = queue.front();
        queue.pop_front();
        for (auto p : preds[k])
            if (dist.emplace(p, dist[k] + 1).second) queue.push_back(p);
    }
    return dist;
}

/// Replays an MC schedule against the step rules and returns a description of
/// the first problem, or an empty string.
inline std::string check_schedule(const Instance& inst, const Schedule& sched, bool single_arm = false)
{
    const auto g = build_dependency_graph(inst);
    ArrangementState s = ArrangementState::initial(inst);
    const RegionSpec regions = single_arm ? make_regions(inst.workspace, 1.0) : inst.regions;
    auto reach_now = [&](int o) -> ArmSet {
        switch (s[o]) {
        case Status::Start: return reachable_arms(regions, inst.object(o).start);
        case Status::Buffer1: return ArmSet::only(Arm::R1);
        case Status::Buffer2: return ArmSet::only(Arm::R2);
        default: return {};
        }
    };
    for (std::size_t t = 0; t < sched.steps.size(); ++t) {
        const auto& step = sched.steps[t];
        const std::string where = "step " + std::to_string(t + 1) + ": ";
        if (step.actions.empty() || step.actions.size() > 2) return where + "bad action count";
        if (single_arm && step.actions.size() != 1) return where + "single arm plans take one action per step";
        if (step.actions.size() == 2 && step.actions[0].arm == step.actions[1].arm) return where + "arm double booked";
        const bool handoff = step.kind == StepKind::Handoff;
        if (handoff) {
            if (step.actions.size() != 2 || step.actions[0].object != step.actions[1].object) return where + "bad handoff";
            const auto& d = step.actions[0].target == Target::Handoff ? step.actions[0] : step.actions[1];
            const auto& r = step.actions[0].target == Target::Handoff ? step.actions[1] : step.actions[0];
            if (d.target != Target::Handoff || r.target == Target::Handoff) return where + "bad handoff roles";
            if (!reach_now(d.object).contains(d.arm)) return where + "deliverer cannot reach object";
        } else if (step.actions.size() == 2 && step.actions[0].object == step.actions[1].object) {
            return where + "two arms on one object";
        }
        ArrangementState next = s;
        for (const auto& a : step.actions) {
            if (a.target == Target::Handoff) continue;
            const int o = a.object;
            if (s[o] == Status::Goal) return where + "object already at goal moved";
            if (!handoff && !reach_now(o).contains(a.arm)) return where + "arm cannot reach object";
            if (is_buffer(a.target)) {
                if (buffer_status(a.arm) != status_after(a.target)) return where + "buffer of the other arm";
                if (is_buffer(s[o]) && !handoff) return where + "buffer to buffer move";
            } else {
                if (!reachable_arms(regions, inst.object(o).goal).contains(a.arm)) return where + "goal unreachable";
                for (int b : g.blockers(o)) {
                    if (s[b] != Status::Start) continue;
                    bool moved = false;
                    for (const auto& other : step.actions) moved |= other.object == b;
                    if (!moved) return where + "goal of object " + std::to_string(o + 1) + " blocked";
                }
            }
            next[o] = status_after(a.target);
        }
        s = next;
    }
    if (!s.all_at_goal()) return "schedule does not end at the goal arrangement";
    return {};
}

} // namespace cdr::oracle
