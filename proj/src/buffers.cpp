#include "cdr/buffers.hpp"

#include "cdr/baselines.hpp"
#include "cdr/error.hpp"
#include "cdr/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace cdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

struct Rest {
    int object;
    Pose pose;
    int slot;
    double from;
    double to;
};

std::vector<Rest> resting_intervals(const Instance& inst, const ConcretePlan& plan)
{
    std::vector<std::vector<const Move*>> by_object(static_cast<std::size_t>(inst.size()));
    for (const auto& m : plan.moves) by_object[static_cast<std::size_t>(m.object)].push_back(&m);
    std::vector<Rest> out;
    for (int o = 0; o < inst.size(); ++o) {
        auto& seq = by_object[static_cast<std::size_t>(o)];
        std::stable_sort(seq.begin(), seq.end(), [](const Move* a, const Move* b) { return a->pick < b->pick; });
        Rest cur{o, inst.object(o).start, -1, -kInf, kInf};
        for (const Move* m : seq) {
            if (m->kind != MoveKind::Receive) {
                cur.to = m->pick;
                out.push_back(cur);
            }
            if (m->kind != MoveKind::Deliver) cur = {o, m->to, m->to_slot, m->place, kInf};
        }
        out.push_back(cur);
    }
    return out;
}

bool intersects(double a0, double a1, double b0, double b1) { return a0 < b1 - kEps && b0 < a1 - kEps; }

struct Box {
    double x0, x1, y0, y1;
};

// Centers that keep a footprint of radius r in the workspace and in the arm's region.
Box center_box(const Instance& inst, Arm region, double r)
{
    const auto& w = inst.workspace;
    return {std::max(inst.regions.x_min(region), r), std::min(inst.regions.x_max(region, w), w.width - r), r, w.height - r};
}

std::uint64_t slot_seed(std::uint64_t seed, int slot) { return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(slot + 1)); }

// Keeps referenced slots only, renumbered in order.
void compact_slots(ConcretePlan& plan)
{
    std::vector<int> remap(plan.buffers.size(), -1);
    for (const auto& m : plan.moves) {
        if (m.from_slot >= 0) remap[static_cast<std::size_t>(m.from_slot)] = 0;
        if (m.to_slot >= 0) remap[static_cast<std::size_t>(m.to_slot)] = 0;
    }
    std::vector<BufferSlot> kept;
    for (std::size_t i = 0; i < remap.size(); ++i) {
        if (remap[i] < 0) continue;
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(plan.buffers[i]);
    }
    for (auto& m : plan.moves) {
        if (m.from_slot >= 0) m.from_slot = remap[static_cast<std::size_t>(m.from_slot)];
        if (m.to_slot >= 0) m.to_slot = remap[static_cast<std::size_t>(m.to_slot)];
    }
    plan.buffers = std::move(kept);
}

double quiescent_before(const ConcretePlan& plan, double t)
{
    std::vector<double> candidates{0.0};
    for (const auto& m : plan.moves)
        if (m.end <= t + kEps) candidates.push_back(m.end);
    std::sort(candidates.rbegin(), candidates.rend());
    for (double c : candidates) {
        const bool busy = std::any_of(plan.moves.begin(), plan.moves.end(),
                                      [&](const Move& m) { return m.start < c - kEps && m.end > c + kEps; });
        if (!busy) return c;
    }
    return 0.0;
}

} // namespace

std::vector<BufferRequest> occupancy_requests(const Instance& inst, const ConcretePlan& plan)
{
    const auto rests = resting_intervals(inst, plan);
    std::vector<BufferRequest> out;
    for (int s = 0; s < static_cast<int>(plan.buffers.size()); ++s) {
        const auto it = std::find_if(rests.begin(), rests.end(), [&](const Rest& r) { return r.slot == s; });
        if (it == rests.end()) continue;
        BufferRequest req;
        req.slot = s;
        req.object = it->object;
        req.region = plan.buffers[static_cast<std::size_t>(s)].region;
        req.place = it->from;
        req.pick = it->to;
        for (const auto& r : rests) {
            if (r.object == req.object || !intersects(r.from, r.to, req.place, req.pick)) continue;
            if (r.slot >= 0) {
                req.concurrent.push_back(r.slot);
                continue;
            }
            const Disc d{r.pose, inst.object(r.object).radius};
            const bool dup = std::any_of(req.obstacles.begin(), req.obstacles.end(),
                                         [&](const Disc& e) { return e.center == d.center && e.radius == d.radius; });
            if (!dup) req.obstacles.push_back(d);
        }
        std::sort(req.concurrent.begin(), req.concurrent.end());
        out.push_back(std::move(req));
    }
    return out;
}

std::vector<Disc> relevant_obstacles(const Instance& inst, const BufferRequest& req)
{
    const double r = inst.object(req.object).radius;
    const Box box = center_box(inst, req.region, r);
    std::vector<Disc> out;
    for (const auto& d : req.obstacles) {
        const Pose nearest{std::clamp(d.center.x, box.x0, box.x1), std::clamp(d.center.y, box.y0, box.y1)};
        if (dist(nearest, d.center) < d.radius + r) out.push_back(d);
    }
    return out;
}

SampleResult sample_buffer(const Instance& inst, const BufferRequest& req, int budget, std::uint64_t seed,
                           const std::vector<Disc>& fixed)
{
    if (budget < 1) throw InvalidInput("sampling budget must be at least 1");
    const double r = inst.object(req.object).radius;
    const Box box = center_box(inst, req.region, r);
    SampleResult res;
    if (box.x0 > box.x1 || box.y0 > box.y1) return res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x0, box.x1), uy(box.y0, box.y1);
    while (res.attempts < budget) {
        ++res.attempts;
        const Pose p{ux(rng), uy(rng)};
        const Disc c{p, r};
        auto hits = [&](const Disc& d) { return discs_overlap(c, d); };
        if (std::any_of(req.obstacles.begin(), req.obstacles.end(), hits) || std::any_of(fixed.begin(), fixed.end(), hits))
            continue;
        res.pose = p;
        return res;
    }
    return res;
}

Allocation allocate_buffers(const Instance& inst, const ConcretePlan& plan, int budget, std::uint64_t seed)
{
    Allocation out;
    out.plan = plan;
    auto requests = occupancy_requests(inst, plan);
    std::stable_sort(requests.begin(), requests.end(), [](const BufferRequest& a, const BufferRequest& b) { return a.place < b.place; });
    for (const auto& req : requests) {
        std::vector<Disc> fixed;
        for (int c : req.concurrent) {
            const auto& slot = out.plan.buffers[static_cast<std::size_t>(c)];
            if (slot.allocated) fixed.push_back({slot.pose, inst.object(slot.object).radius});
        }
        const auto res = sample_buffer(inst, req, budget, slot_seed(seed, req.slot), fixed);
        out.samples += res.attempts;
        if (!res.pose) {
            out.failed_slot = req.slot;
            double start = 0.0;
            for (const auto& m : plan.moves)
                if (m.to_slot == req.slot) start = m.start;
            out.cut = quiescent_before(plan, start);
            auto prefix = plan_prefix(out.plan, out.cut);
            compact_slots(prefix);
            sync_buffer_poses(prefix);
            out.plan = std::move(prefix);
            return out;
        }
        auto& slot = out.plan.buffers[static_cast<std::size_t>(req.slot)];
        slot.pose = *res.pose;
        slot.allocated = true;
    }
    sync_buffer_poses(out.plan);
    out.complete = true;
    out.cut = out.plan.end_time();
    return out;
}

std::string to_string(Planner p)
{
    switch (p) {
    case Planner::Mchs: return "mchs";
    case Planner::Fchs: return "fchs";
    case Planner::Split: return "split";
    case Planner::Greedy: return "greedy";
    }
    return "?";
}

Planner parse_planner(const std::string& name)
{
    for (Planner p : {Planner::Mchs, Planner::Fchs, Planner::Split, Planner::Greedy})
        if (to_string(p) == name) return p;
    throw InvalidInput("unknown planner: " + name);
}

ConcretePlan plan_abstract(const Instance& inst, Planner planner, const CostParams& cp, double time_limit_sec)
{
    switch (planner) {
    case Planner::Mchs: {
        MchsOptions o;
        o.time_limit_sec = time_limit_sec;
        return to_plan(inst, mchs_search(inst, o));
    }
    case Planner::Fchs: {
        FchsOptions o;
        o.time_limit_sec = time_limit_sec;
        return to_plan(inst, fchs_search(inst, cp, o));
    }
    case Planner::Split: return to_plan(inst, split_schedule(single_arm_mchs(inst), inst));
    case Planner::Greedy: return to_plan(inst, greedy_plan(inst));
    }
    throw InvalidInput("unknown planner");
}

namespace {

Instance between(const Instance& inst, const std::vector<Pose>& from, const std::vector<Pose>& to)
{
    std::vector<ObjectInput> objs;
    for (int o = 0; o < inst.size(); ++o)
        objs.push_back({inst.object(o).radius, from[static_cast<std::size_t>(o)], to[static_cast<std::size_t>(o)]});
    return new_instance(inst.workspace, inst.regions.rho, objs);
}

// Objects resting in a slot at a seam are picked from that slot afterwards.
void link_slots(ConcretePlan& plan, int objects)
{
    std::vector<std::size_t> order(plan.moves.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return plan.moves[a].pick < plan.moves[b].pick; });
    std::vector<int> slot(static_cast<std::size_t>(objects), -1);
    std::vector<int> placer(static_cast<std::size_t>(objects), -1);
    for (auto i : order) {
        auto& m = plan.moves[i];
        const auto o = static_cast<std::size_t>(m.object);
        if (m.kind != MoveKind::Receive) {
            if (m.from_slot < 0 && slot[o] >= 0) m.from_slot = slot[o];
            if (m.from_slot >= 0 && slot[o] < 0 && placer[o] >= 0) {
                auto& p = plan.moves[static_cast<std::size_t>(placer[o])];
                p.to_slot = m.from_slot;
                p.target = buffer_target(plan.buffers[static_cast<std::size_t>(m.from_slot)].region);
            }
        }
        if (m.kind != MoveKind::Deliver) {
            slot[o] = m.to_slot;
            placer[o] = static_cast<int>(i);
        }
    }
}

ConcretePlan empty_plan(bool mc)
{
    ConcretePlan p;
    p.mc_steps = mc ? 0 : -1;
    return p;
}

} // namespace

ConcretePlan plan_with_lazy_buffers(const Instance& inst, const CostParams& cp, const LazyOptions& opts, LazyStats* stats)
{
    if (opts.max_rounds < 1) throw InvalidInput("max_rounds must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    auto remaining = [&] {
        return opts.time_limit_sec - std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const bool mc = opts.planner != Planner::Fchs;
    ConcretePlan head = empty_plan(mc), tail = empty_plan(mc);
    std::vector<Pose> front, back;
    for (const auto& o : inst.objects) {
        front.push_back(o.start);
        back.push_back(o.goal);
    }
    LazyStats local;

    auto finish = [&](const ConcretePlan& middle) {
        ConcretePlan out = head;
        append_plan(out, middle);
        append_plan(out, tail);
        link_slots(out, inst.size());
        if (out.moves.size() == middle.moves.size() && head.moves.empty() && tail.moves.empty()) out.fc_makespan = middle.fc_makespan;
        const auto violations = validate_schedule(inst, out);
        if (!violations.empty()) throw PlanningError("lazy buffer plan failed validation: " + describe(violations.front()));
        if (stats) *stats = local;
        return out;
    };

    for (int round = 0; round < opts.max_rounds; ++round) {
        if (remaining() <= 0) throw PlanningError("plan_with_lazy_buffers: time limit exceeded");
        local.rounds = round + 1;
        const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(round) * 0x5851F42D4C957F2DULL;

        const auto mid = between(inst, front, back);
        const auto fwd = allocate_buffers(mid, plan_abstract(mid, opts.planner, cp, remaining()), opts.sample_budget, seed);
        local.samples += fwd.samples;
        if (fwd.complete) return finish(fwd.plan);
        front = final_poses(mid, fwd.plan);
        append_plan(head, fwd.plan);
        if (front == back) return finish(empty_plan(mc));

        if (remaining() <= 0) throw PlanningError("plan_with_lazy_buffers: time limit exceeded");
        const auto rev = reversed(between(inst, front, back));
        const auto bwd = allocate_buffers(rev, plan_abstract(rev, opts.planner, cp, remaining()), opts.sample_budget, ~seed);
        local.samples += bwd.samples;
        if (bwd.complete) return finish(reversed_plan(bwd.plan));
        back = final_poses(rev, bwd.plan);
        auto joined = reversed_plan(bwd.plan);
        append_plan(joined, tail);
        tail = std::move(joined);
        if (front == back) return finish(empty_plan(mc));
    }
    if (stats) *stats = local;
    throw PlanningError("plan_with_lazy_buffers: buffer allocation failed after " + std::to_string(opts.max_rounds) + " rounds");
}

} // namespace cdr
