#include "cdr/fchs.hpp"

#include "cdr/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace cdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-12;

Site site_of(const Instance& inst, Status st, int o)
{
    if (is_buffer(st)) return Site::unallocated_buffer();
    return Site::at(st == Status::Goal ? inst.object(o).goal : inst.object(o).start);
}

ArrangementState arrangement(const IntervalState& s) { return ArrangementState{s.statuses}; }

} // namespace

CostParams default_cost_params(const Instance& inst, double speed)
{
    if (!(speed > 0.0)) throw InvalidInput("speed must be positive");
    CostParams cp;
    cp.speed = speed;
    const double t_d = inst.workspace.diagonal() / speed;
    cp.t_g = cp.t_r = cp.t_h = t_d;
    for (Arm a : kArms) cp.buffer_travel[static_cast<std::size_t>(index(a))] = region_diagonal(inst.regions, inst.workspace, a);
    return cp;
}

double leg_time(const CostParams& cp, Arm a, const Site& from, const Site& to)
{
    if (from.buffer || to.buffer) return cp.travel(a) / cp.speed;
    return dist(from.pose, to.pose) / cp.speed;
}

double t_pp(const CostParams& cp, Arm a, const Site& current, const Site& pick, const Site& place)
{
    return leg_time(cp, a, current, pick) + leg_time(cp, a, pick, place) + cp.t_g + cp.t_r;
}

double t_hd(const CostParams& cp, Arm a, const Site& current, const Site& pick, const Pose& handoff)
{
    return leg_time(cp, a, current, pick) + leg_time(cp, a, pick, Site::at(handoff)) + cp.t_g + cp.t_h;
}

double t_hr(const CostParams& cp, Arm a, const Site& current, const Pose& handoff, const Site& place)
{
    return leg_time(cp, a, current, Site::at(handoff)) + leg_time(cp, a, Site::at(handoff), place) + cp.t_h + cp.t_r;
}

IntervalState initial_interval_state(const Instance& inst, const ArrangementState& initial)
{
    IntervalState s;
    s.statuses = initial.statuses;
    s.rest_since.assign(s.statuses.size(), 0.0);
    s.vacate.assign(s.statuses.size(), 0.0);
    for (std::size_t o = 0; o < s.statuses.size(); ++o)
        if (s.statuses[o] == Status::Start) s.vacate[o] = kInf;
    for (Arm a : kArms) s.site_at_free[static_cast<std::size_t>(index(a))] = Site::at(inst.regions.rest_pose(a));
    return s;
}

double fc_heuristic(const Instance& inst, const CostParams& cp, const IntervalState& s)
{
    const auto arr = arrangement(s);
    const Site handoff = Site::at(inst.regions.handoff_projection);
    std::array<double, 2> exclusive{0.0, 0.0};
    double shared = 0.0;
    for (int o = 0; o < inst.size(); ++o) {
        const Status st = s.statuses[static_cast<std::size_t>(o)];
        if (st == Status::Goal) continue;
        const Site cur = site_of(inst, st, o);
        const Site goal = Site::at(inst.object(o).goal);
        const ArmSet from = current_reach(inst, arr, o);
        const ArmSet to = reachable_arms(inst.regions, inst.object(o).goal);
        const ArmSet both = from & to;
        if (both.is_both()) {
            shared += leg_time(cp, Arm::R1, cur, goal) + cp.t_g + cp.t_r;
        } else if (!both.empty()) {
            const Arm a = both.sole();
            exclusive[static_cast<std::size_t>(index(a))] += leg_time(cp, a, cur, goal) + cp.t_g + cp.t_r;
        } else if (!from.empty() && !to.empty()) {
            const Arm d = from.sole();
            const Arm r = other(d);
            exclusive[static_cast<std::size_t>(index(d))] += leg_time(cp, d, cur, handoff) + cp.t_g + cp.t_h;
            exclusive[static_cast<std::size_t>(index(r))] += leg_time(cp, r, handoff, goal) + cp.t_h + cp.t_r;
        }
    }
    const double c1 = exclusive[0], c2 = exclusive[1];
    if (std::abs(c1 - c2) <= shared) return (c1 + c2 + shared) / 2.0;
    return std::max(c1, c2);
}

namespace {

struct Committed {
    IntervalState state;
    std::vector<TimedEntry> entries;
};

// Latest vacate instant among the start poses overlapping o's goal.
double goal_clearance(const Instance& inst, const std::vector<double>& vacate, int o)
{
    double t = 0.0;
    const Disc goal = inst.object(o).goal_disc();
    for (int j = 0; j < inst.size(); ++j) {
        if (j == o || !discs_overlap(goal, inst.object(j).start_disc())) continue;
        t = std::max(t, vacate[static_cast<std::size_t>(j)]);
    }
    return t;
}

Committed commit(const Instance& inst, const CostParams& cp, const IntervalState& s, const JointStep& step)
{
    Committed c{s, {}};
    auto& next = c.state;
    const Site handoff = Site::at(inst.regions.handoff_projection);
    const bool is_handoff = step.kind == StepKind::Handoff;

    struct Pending {
        const PrimitiveAction* act;
        Site from;
        Site to;
        double start;
        double pick;
    };
    std::vector<Pending> pending;
    const PrimitiveAction* receive = nullptr;
    for (const auto& act : step.actions) {
        if (is_handoff && act.target != Target::Handoff) {
            receive = &act;
            continue;
        }
        const auto ai = static_cast<std::size_t>(index(act.arm));
        const auto oi = static_cast<std::size_t>(act.object);
        const Status st = s.statuses[oi];
        const Site from = site_of(inst, st, act.object);
        const Site to = act.target == Target::Goal      ? Site::at(inst.object(act.object).goal)
                        : act.target == Target::Handoff ? handoff
                                                        : Site::unallocated_buffer();
        const double start = s.free_at[ai];
        const double pick = std::max(start, s.rest_since[oi]) + leg_time(cp, act.arm, s.site_at_free[ai], from) + cp.t_g;
        if (st == Status::Start) next.vacate[oi] = pick;
        pending.push_back({&act, from, to, start, pick});
    }

    auto place_after = [&](int o, Target target, double ready) {
        return target == Target::Goal ? std::max(ready, goal_clearance(inst, next.vacate, o)) : ready;
    };

    for (const auto& p : pending) {
        const PrimitiveAction& act = *p.act;
        const auto ai = static_cast<std::size_t>(index(act.arm));
        const auto oi = static_cast<std::size_t>(act.object);
        if (act.target == Target::Handoff) {
            if (receive == nullptr) throw std::logic_error("handoff step without a receiver");
            const Arm rb = receive->arm;
            const auto bi = static_cast<std::size_t>(index(rb));
            const double arrive_d = p.pick + leg_time(cp, act.arm, p.from, handoff);
            const double arrive_r = s.free_at[bi] + leg_time(cp, rb, s.site_at_free[bi], handoff);
            const double transfer = std::max(arrive_d, arrive_r) + cp.t_h;
            const Site to = receive->target == Target::Goal ? Site::at(inst.object(act.object).goal) : Site::unallocated_buffer();
            const double place = place_after(act.object, receive->target, transfer) + leg_time(cp, rb, handoff, to) + cp.t_r;
            c.entries.push_back({act.arm, act.object, Target::Handoff, p.start, p.pick, transfer, transfer, 0});
            c.entries.push_back({rb, act.object, receive->target, s.free_at[bi], transfer, place, place, 0});
            next.free_at[ai] = transfer;
            next.site_at_free[ai] = handoff;
            next.free_at[bi] = place;
            next.site_at_free[bi] = to;
            next.rest_since[oi] = place;
            continue;
        }
        if (p.to.buffer && !p.from.buffer && act.target == Target::Goal) throw std::logic_error("bad site");
        const double place = place_after(act.object, act.target, p.pick) + leg_time(cp, act.arm, p.from, p.to) + cp.t_r;
        if (!std::isfinite(place)) throw std::logic_error("goal placement waits on an object that never leaves");
        c.entries.push_back({act.arm, act.object, act.target, p.start, p.pick, place, place, -1});
        next.free_at[ai] = place;
        next.site_at_free[ai] = p.to;
        next.rest_since[oi] = place;
    }
    next.statuses = apply_step(arrangement(s), step).statuses;
    return c;
}

double completion(const Instance& inst, const CostParams& cp, const IntervalState& s)
{
    double t = 0.0;
    for (Arm a : kArms) {
        const auto ai = static_cast<std::size_t>(index(a));
        t = std::max(t, s.free_at[ai] + leg_time(cp, a, s.site_at_free[ai], Site::at(inst.regions.rest_pose(a))));
    }
    return t;
}

// Times that can still influence the future, for dominance checks.
std::vector<double> signature(const Instance& inst, const IntervalState& s, const std::vector<char>& blocks_a_goal)
{
    std::vector<double> sig{s.free_at[0], s.free_at[1]};
    for (int o = 0; o < inst.size(); ++o) {
        const auto oi = static_cast<std::size_t>(o);
        sig.push_back(s.statuses[oi] == Status::Goal ? 0.0 : s.rest_since[oi]);
        sig.push_back(blocks_a_goal[oi] && std::isfinite(s.vacate[oi]) ? s.vacate[oi] : 0.0);
    }
    return sig;
}

struct Record {
    std::array<Site, 2> sites;
    std::vector<double> sig;
};

bool same_site(const Site& a, const Site& b) { return a.buffer == b.buffer && (a.buffer || a.pose == b.pose); }

bool dominated(const std::vector<Record>& seen, const std::array<Site, 2>& sites, const std::vector<double>& sig)
{
    for (const auto& r : seen) {
        if (!same_site(r.sites[0], sites[0]) || !same_site(r.sites[1], sites[1])) continue;
        bool all = true;
        for (std::size_t i = 0; i < sig.size() && all; ++i) all = r.sig[i] <= sig[i] + kEps;
        if (all) return true;
    }
    return false;
}

} // namespace

TimedSchedule fchs_search(const Instance& inst, const CostParams& cp, const FchsOptions& opts, SearchStats* stats)
{
    if (inst.size() > 32) throw InvalidInput("fchs_search supports at most 32 objects");
    const auto clock_start = std::chrono::steady_clock::now();
    const auto graph = build_dependency_graph(inst);
    const ArrangementState init = opts.initial ? *opts.initial : ArrangementState::initial(inst);

    std::vector<char> blocks_a_goal(static_cast<std::size_t>(inst.size()), 0);
    for (int j = 0; j < inst.size(); ++j)
        for (int o = 0; o < inst.size(); ++o)
            if (o != j && discs_overlap(inst.object(o).goal_disc(), inst.object(j).start_disc())) blocks_a_goal[static_cast<std::size_t>(j)] = 1;

    struct Node {
        IntervalState state;
        std::vector<TimedEntry> entries;
        int parent;
        bool terminal;
    };
    std::vector<Node> nodes;
    struct Open {
        double f;
        double g;
        std::size_t id;
    };
    auto worse = [](const Open& a, const Open& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.id > b.id;
    };
    std::priority_queue<Open, std::vector<Open>, decltype(worse)> open(worse);
    std::unordered_map<std::uint64_t, std::vector<Record>> seen;

    auto push = [&](IntervalState st, std::vector<TimedEntry> entries, int parent) {
        const auto arr = arrangement(st);
        const auto sig = signature(inst, st, blocks_a_goal);
        auto& bucket = seen[arr.key()];
        if (dominated(bucket, st.site_at_free, sig)) return;
        bucket.push_back({st.site_at_free, sig});
        const bool terminal = arr.all_at_goal();
        const double g = st.now();
        const double f = terminal ? completion(inst, cp, st)
                                  : std::max({g + fc_heuristic(inst, cp, st), st.free_at[0], st.free_at[1]});
        nodes.push_back({std::move(st), std::move(entries), parent, terminal});
        open.push({f, g, nodes.size() - 1});
        if (stats) ++stats->generated;
    };

    push(initial_interval_state(inst, init), {}, -1);
    std::size_t expanded = 0;
    while (!open.empty()) {
        const Open top = open.top();
        open.pop();
        if (nodes[top.id].terminal) {
            TimedSchedule out;
            out.makespan_fc = top.f;
            std::vector<std::size_t> chain;
            for (int at = static_cast<int>(top.id); at >= 0; at = nodes[static_cast<std::size_t>(at)].parent)
                chain.push_back(static_cast<std::size_t>(at));
            int handoff = 0;
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                bool used = false;
                for (auto e : nodes[*it].entries) {
                    if (e.handoff >= 0) {
                        e.handoff = handoff;
                        used = true;
                    }
                    out.entries.push_back(e);
                }
                if (used) ++handoff;
            }
            if (stats) {
                stats->expanded = expanded;
                stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
            }
            return out;
        }
        if (++expanded > opts.max_expansions) throw PlanningError("fchs_search: expansion budget exhausted");
        if ((expanded & 255U) == 0) {
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
            if (elapsed > opts.time_limit_sec) throw PlanningError("fchs_search: time limit exceeded");
        }
        const IntervalState cur = nodes[top.id].state;
        for (const auto& [step, unused] : successors(inst, graph, arrangement(cur), opts.filter)) {
            auto c = commit(inst, cp, cur, step);
            push(std::move(c.state), std::move(c.entries), static_cast<int>(top.id));
        }
    }
    throw PlanningError("fchs_search: goal arrangement unreachable");
}

} // namespace cdr
