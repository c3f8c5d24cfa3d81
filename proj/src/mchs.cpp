#include "cdr/mchs.hpp"

#include "cdr/error.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace cdr {

namespace {

ArmSet goal_reach(const Instance& inst, int o) { return reachable_arms(inst.regions, inst.object(o).goal); }

bool goal_free(const DependencyGraph& g, const ArrangementState& s, int o)
{
    for (int j : g.blockers(o))
        if (s[j] == Status::Start) return false;
    return true;
}

JointStep normalized(JointStep step)
{
    std::stable_sort(step.actions.begin(), step.actions.end(),
                     [](const PrimitiveAction& a, const PrimitiveAction& b) { return index(a.arm) < index(b.arm); });
    return step;
}

struct StepHash {
    std::size_t operator()(const JointStep& s) const
    {
        std::size_t h = static_cast<std::size_t>(s.kind);
        for (const auto& a : s.actions)
            h = h * 1315423911U + (static_cast<std::size_t>(a.object) << 4) + (index(a.arm) << 2) +
                static_cast<std::size_t>(a.target);
        return h;
    }
};

} // namespace

bool needs_handoff(const Instance& inst, const ArrangementState& s, int o)
{
    return (current_reach(inst, s, o) & goal_reach(inst, o)).empty();
}

std::vector<PrimitiveAction> individual_actions(const Instance& inst, const DependencyGraph& g,
                                                const ArrangementState& s, Arm arm, ActionFilter filter)
{
    std::vector<PrimitiveAction> out;
    for (int o = 0; o < inst.size(); ++o) {
        if (s[o] == Status::Goal) continue;
        const ArmSet here = current_reach(inst, s, o);
        if (!here.contains(arm)) continue;
        if (goal_reach(inst, o).contains(arm) && goal_free(g, s, o)) out.push_back({arm, o, Target::Goal});
        if (filter.allow_buffers && s[o] == Status::Start) out.push_back({arm, o, buffer_target(arm)});
    }
    return out;
}

std::vector<JointStep> swap_actions(const Instance& inst, const DependencyGraph& g, const ArrangementState& s,
                                    ActionFilter filter)
{
    std::vector<JointStep> out;
    for (int o = 0; o < inst.size(); ++o) {
        if (s[o] == Status::Goal) continue;
        const auto obstacles = goal_obstacles(g, s, o);
        if (obstacles.size() != 1) continue;
        const int blocker = obstacles.front();
        const ArmSet movers = current_reach(inst, s, o) & goal_reach(inst, o);
        const ArmSet helpers = current_reach(inst, s, blocker);
        const auto blocker_obstacles = goal_obstacles(g, s, blocker);
        const bool blocker_clear =
            blocker_obstacles.empty() || (blocker_obstacles.size() == 1 && blocker_obstacles.front() == o);
        for (Arm r : kArms) {
            const Arm helper = other(r);
            if (!movers.contains(r) || !helpers.contains(helper)) continue;
            if (blocker_clear && goal_reach(inst, blocker).contains(helper) && !needs_handoff(inst, s, blocker)) {
                out.push_back(normalized({{{r, o, Target::Goal}, {helper, blocker, Target::Goal}}, StepKind::Swap}));
            } else if (filter.allow_buffers) {
                out.push_back(
                    normalized({{{r, o, Target::Goal}, {helper, blocker, buffer_target(helper)}}, StepKind::Pair}));
            }
        }
    }
    return out;
}

std::vector<JointStep> handoff_actions(const Instance& inst, const DependencyGraph& g, const ArrangementState& s,
                                       ActionFilter filter)
{
    std::vector<JointStep> out;
    for (int o = 0; o < inst.size(); ++o) {
        if (s[o] == Status::Goal || !needs_handoff(inst, s, o)) continue;
        // No arm reaches both poses and the two regions cover the table, so each side has exactly one arm.
        const Arm deliverer = current_reach(inst, s, o).sole();
        const Arm receiver = goal_reach(inst, o).sole();
        if (goal_free(g, s, o)) {
            out.push_back(normalized({{{deliverer, o, Target::Handoff}, {receiver, o, Target::Goal}}, StepKind::Handoff}));
        } else if (filter.allow_buffers) {
            out.push_back(normalized(
                {{{deliverer, o, Target::Handoff}, {receiver, o, buffer_target(receiver)}}, StepKind::Handoff}));
        }
    }
    return out;
}

std::vector<std::pair<JointStep, ArrangementState>> successors(const Instance& inst, const DependencyGraph& g,
                                                               const ArrangementState& s, ActionFilter filter)
{
    std::vector<JointStep> steps;
    const auto first = individual_actions(inst, g, s, Arm::R1, filter);
    const auto second = individual_actions(inst, g, s, Arm::R2, filter);
    for (const auto& a : first) steps.push_back({{a}, StepKind::Individual});
    for (const auto& b : second) steps.push_back({{b}, StepKind::Individual});
    // Picks precede places within a step. Goal targets of individual actions are
    // already free of start-pose obstacles and goals are pairwise disjoint, so
    // any two actions on distinct objects can share a step.
    for (const auto& a : first)
        for (const auto& b : second)
            if (a.object != b.object) steps.push_back({{a, b}, StepKind::Pair});
    for (auto& st : swap_actions(inst, g, s, filter)) steps.push_back(std::move(st));
    for (auto& st : handoff_actions(inst, g, s, filter)) steps.push_back(std::move(st));

    std::vector<std::pair<JointStep, ArrangementState>> out;
    std::unordered_set<JointStep, StepHash> seen;
    out.reserve(steps.size());
    for (auto& st : steps) {
        if (!seen.insert(st).second) continue;
        auto next = apply_step(s, st);
        out.emplace_back(std::move(st), std::move(next));
    }
    return out;
}

int mc_heuristic(const Instance& inst, const ArrangementState& s)
{
    int cost1 = 0;
    int cost2 = 0;
    int shared = 0;
    for (int o = 0; o < inst.size(); ++o) {
        if (s[o] == Status::Goal) continue;
        const ArmSet arms = current_reach(inst, s, o) & goal_reach(inst, o);
        if (arms.is_both()) {
            ++shared;
        } else if (arms.size() == 1) {
            ++(arms.sole() == Arm::R1 ? cost1 : cost2);
        } else {
            ++cost1;
            ++cost2;
        }
    }
    if (std::abs(cost1 - cost2) <= shared) return (cost1 + cost2 + shared + 1) / 2;
    return std::max(cost1, cost2);
}

namespace {

struct Node {
    std::uint64_t key;
    int g;
    int f;
    int parent;
    JointStep step;
};

struct Frontier {
    int f;
    int g;
    std::uint64_t tie;
    std::uint64_t key;
    int node;
};

struct FrontierOrder {
    // std::priority_queue pops the largest; invert to pop lowest f, then larger g, then lower tie key.
    bool operator()(const Frontier& a, const Frontier& b) const
    {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.tie > b.tie;
    }
};

Instance single_arm_view(const Instance& inst)
{
    Instance out = inst;
    out.regions = make_regions(inst.workspace, 1.0);
    return out;
}

// Tie-break key: lexicographic over objects with G < B1 < B2 < S, so among equal
// (f, g) the state where lower ids have progressed further is expanded first.
std::uint64_t progress_key(const ArrangementState& s)
{
    std::uint64_t k = 0;
    for (auto st : s.statuses) {
        std::uint64_t rank = 3;
        if (st == Status::Goal) rank = 0;
        else if (st == Status::Buffer1) rank = 1;
        else if (st == Status::Buffer2) rank = 2;
        k = (k << 2) | rank;
    }
    return k;
}

int count_not_at_goal(const ArrangementState& s)
{
    int c = 0;
    for (auto st : s.statuses) c += st != Status::Goal;
    return c;
}

} // namespace

Schedule mchs_search(const Instance& inst, const MchsOptions& opts, SearchStats* stats)
{
    const int n = inst.size();
    if (n > 32) throw InvalidInput("arrangement search supports at most 32 objects");
    const auto clock_start = std::chrono::steady_clock::now();

    const Instance view = opts.single_arm ? single_arm_view(inst) : inst;
    const auto g = build_dependency_graph(view);
    const ArrangementState start = opts.initial.value_or(ArrangementState::initial(inst));
    if (start.size() != n) throw InvalidInput("initial state size does not match the instance");

    auto heuristic = [&](const ArrangementState& s) {
        return opts.single_arm ? count_not_at_goal(s) : mc_heuristic(view, s);
    };
    auto expand = [&](const ArrangementState& s) {
        if (!opts.single_arm) return successors(view, g, s, opts.filter);
        std::vector<std::pair<JointStep, ArrangementState>> out;
        for (const auto& a : individual_actions(view, g, s, Arm::R1, opts.filter)) {
            JointStep st{{a}, StepKind::Individual};
            auto next = apply_step(s, st);
            out.emplace_back(std::move(st), std::move(next));
        }
        return out;
    };

    std::vector<Node> nodes;
    std::priority_queue<Frontier, std::vector<Frontier>, FrontierOrder> open;
    std::unordered_map<std::uint64_t, int> best_g;
    std::unordered_set<std::uint64_t> closed;

    const int h0 = heuristic(start);
    nodes.push_back({start.key(), 0, h0, -1, {}});
    best_g[start.key()] = 0;
    open.push({h0, 0, progress_key(start), start.key(), 0});

    SearchStats local;
    int goal_node = -1;
    while (!open.empty()) {
        const Frontier top = open.top();
        open.pop();
        if (closed.count(top.key)) continue;
        closed.insert(top.key);
        const auto s = ArrangementState::from_key(top.key, n);
        if (opts.on_expand) opts.on_expand(s, top.g);
        if (s.all_at_goal()) {
            goal_node = top.node;
            break;
        }
        ++local.expanded;
        if (local.expanded > opts.max_expansions)
            throw PlanningError("MCHS node budget of " + std::to_string(opts.max_expansions) + " expansions exhausted");
        if ((local.expanded & 1023U) == 0) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
            if (elapsed > opts.time_limit_sec) throw PlanningError("MCHS time limit exceeded");
        }
        for (auto& [step, next] : expand(s)) {
            ++local.generated;
            const auto k = next.key();
            if (closed.count(k)) continue;
            const int gn = top.g + 1;
            auto it = best_g.find(k);
            if (it != best_g.end() && it->second <= gn) continue;
            best_g[k] = gn;
            const int f = gn + heuristic(next);
            nodes.push_back({k, gn, f, top.node, std::move(step)});
            open.push({f, gn, progress_key(next), k, static_cast<int>(nodes.size() - 1)});
        }
    }
    local.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    if (stats) *stats = local;
    if (goal_node < 0) throw PlanningError("MCHS found no schedule: the goal arrangement is unreachable");

    Schedule sched;
    for (int i = goal_node; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
        sched.steps.push_back(nodes[static_cast<std::size_t>(i)].step);
    std::reverse(sched.steps.begin(), sched.steps.end());
    return sched;
}

int uniform_cost_oracle(const Instance& inst, ActionFilter filter)
{
    const int n = inst.size();
    if (n > 6) throw InvalidInput("uniform-cost oracle is limited to 6 objects");
    const auto g = build_dependency_graph(inst);
    const auto start = ArrangementState::initial(inst);
    std::unordered_map<std::uint64_t, int> depth{{start.key(), 0}};
    std::deque<std::uint64_t> queue{start.key()};
    while (!queue.empty()) {
        const auto k = queue.front();
        queue.pop_front();
        const auto s = ArrangementState::from_key(k, n);
        const int d = depth[k];
        if (s.all_at_goal()) return d;
        for (const auto& [step, next] : successors(inst, g, s, filter)) {
            if (depth.emplace(next.key(), d + 1).second) queue.push_back(next.key());
        }
    }
    throw PlanningError("goal arrangement unreachable");
}

} // namespace cdr
