#include "cdr/executor.hpp"

#include "cdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cdr {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_pose(const Pose& a, const Pose& b) { return dist(a, b) <= 1e-9; }

Violation make(ViolationKind k, double t, std::vector<int> objects, std::vector<Arm> arms, std::string detail)
{
    return {k, t, std::move(objects), std::move(arms), std::move(detail)};
}

} // namespace

std::string to_string(ViolationKind k)
{
    switch (k) {
    case ViolationKind::OverlapAtPlace: return "overlap_at_place";
    case ViolationKind::Unreachable: return "unreachable";
    case ViolationKind::DoubleBooking: return "double_booking";
    case ViolationKind::HandoffDesync: return "handoff_desync";
    case ViolationKind::NotAtGoalEnd: return "not_at_goal_end";
    case ViolationKind::OutsideWorkspace: return "outside_workspace";
    case ViolationKind::InconsistentPose: return "inconsistent_pose";
    case ViolationKind::UnallocatedBuffer: return "unallocated_buffer";
    }
    return "?";
}

std::string describe(const Violation& v)
{
    std::ostringstream os;
    os << to_string(v.kind) << " t=" << v.time;
    if (!v.objects.empty()) {
        os << " objects=";
        for (std::size_t i = 0; i < v.objects.size(); ++i) os << (i ? "," : "") << v.objects[i] + 1;
    }
    if (!v.arms.empty()) {
        os << " arms=";
        for (std::size_t i = 0; i < v.arms.size(); ++i) os << (i ? "," : "") << to_string(v.arms[i]);
    }
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    return os.str();
}

std::vector<Violation> validate_schedule(const Instance& inst, const ConcretePlan& plan)
{
    std::vector<Violation> out;
    const auto& rs = inst.regions;

    for (const auto& b : plan.buffers) {
        if (!b.allocated) continue;
        const bool in_region = b.pose.x >= rs.x_min(b.region) - kEps && b.pose.x <= rs.x_max(b.region, inst.workspace) + kEps;
        if (!in_region) out.push_back(make(ViolationKind::Unreachable, 0.0, {b.object}, {b.region}, "buffer outside its region"));
    }

    // one task per arm at a time
    for (Arm arm : kArms) {
        std::vector<const Move*> mine;
        for (const auto& m : plan.moves)
            if (m.arm == arm) mine.push_back(&m);
        std::sort(mine.begin(), mine.end(), [](const Move* a, const Move* b) { return a->start < b->start; });
        for (std::size_t i = 1; i < mine.size(); ++i) {
            if (mine[i]->start < mine[i - 1]->end - kEps)
                out.push_back(make(ViolationKind::DoubleBooking, mine[i]->start, {mine[i - 1]->object, mine[i]->object}, {arm}, ""));
        }
    }

    // handoffs come in matched deliver/receive pairs
    std::map<int, std::vector<const Move*>> handoffs;
    for (const auto& m : plan.moves) {
        if (m.kind == MoveKind::PickPlace) continue;
        if (m.handoff < 0) {
            out.push_back(make(ViolationKind::HandoffDesync, m.pick, {m.object}, {m.arm}, "handoff move without a partner"));
            continue;
        }
        handoffs[m.handoff].push_back(&m);
    }
    for (const auto& [id, ms] : handoffs) {
        const bool ok = ms.size() == 2 && ms[0]->kind != ms[1]->kind && ms[0]->object == ms[1]->object &&
                        ms[0]->arm != ms[1]->arm;
        if (!ok) {
            out.push_back(make(ViolationKind::HandoffDesync, ms.front()->pick, {ms.front()->object}, {}, "unmatched handoff " + std::to_string(id)));
            continue;
        }
        const Move* d = ms[0]->kind == MoveKind::Deliver ? ms[0] : ms[1];
        const Move* r = ms[0]->kind == MoveKind::Deliver ? ms[1] : ms[0];
        if (std::abs(d->place - r->pick) > kEps)
            out.push_back(make(ViolationKind::HandoffDesync, d->place, {d->object}, {d->arm, r->arm}, "transfer instants differ"));
    }

    auto unallocated = [&](int slot) { return slot >= 0 && !plan.buffers[static_cast<std::size_t>(slot)].allocated; };

    // reachability and buffer allocation
    for (const auto& m : plan.moves) {
        if (m.from_slot >= 0 && !plan.buffers[static_cast<std::size_t>(m.from_slot)].allocated)
            out.push_back(make(ViolationKind::UnallocatedBuffer, m.pick, {m.object}, {m.arm}, ""));
        if (m.to_slot >= 0) {
            const auto& slot = plan.buffers[static_cast<std::size_t>(m.to_slot)];
            if (!slot.allocated) out.push_back(make(ViolationKind::UnallocatedBuffer, m.place, {m.object}, {m.arm}, ""));
            if (slot.region != m.arm)
                out.push_back(make(ViolationKind::Unreachable, m.place, {m.object}, {m.arm}, "buffer in the other arm's region"));
        }
        if (m.kind != MoveKind::Receive && !unallocated(m.from_slot) && !reachable_arms(rs, m.from).contains(m.arm))
            out.push_back(make(ViolationKind::Unreachable, m.pick, {m.object}, {m.arm}, "pick pose out of reach"));
        if (m.kind != MoveKind::Deliver && !unallocated(m.to_slot) && !reachable_arms(rs, m.to).contains(m.arm))
            out.push_back(make(ViolationKind::Unreachable, m.place, {m.object}, {m.arm}, "place pose out of reach"));
    }

    // event replay
    struct Event {
        double time;
        int order; // 0 pick, 1 place
        const Move* move;
    };
    std::vector<Event> events;
    for (const auto& m : plan.moves) {
        if (m.kind != MoveKind::Receive) events.push_back({m.pick, 0, &m});
        if (m.kind != MoveKind::Deliver) events.push_back({m.place, 1, &m});
    }
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (std::abs(a.time - b.time) > kEps) return a.time < b.time;
        return a.order < b.order;
    });
    std::vector<std::optional<Pose>> resting;
    for (const auto& o : inst.objects) resting.emplace_back(o.start);
    // objects sitting in slots without coordinates take no part in geometry checks
    std::vector<char> floating(resting.size(), 0);

    for (const auto& e : events) {
        const Move& m = *e.move;
        auto& slot = resting[static_cast<std::size_t>(m.object)];
        if (e.order == 0) {
            if (!slot || (!floating[static_cast<std::size_t>(m.object)] && !same_pose(*slot, m.from)))
                out.push_back(make(ViolationKind::InconsistentPose, e.time, {m.object}, {m.arm}, "object is not at the pick pose"));
            slot.reset();
            floating[static_cast<std::size_t>(m.object)] = 0;
            continue;
        }
        if (unallocated(m.to_slot)) {
            slot = m.to;
            floating[static_cast<std::size_t>(m.object)] = 1;
            continue;
        }
        const Disc placed{m.to, inst.object(m.object).radius};
        if (!footprint_in_workspace(placed, inst.workspace))
            out.push_back(make(ViolationKind::OutsideWorkspace, e.time, {m.object}, {m.arm}, ""));
        for (int o = 0; o < inst.size(); ++o) {
            const auto& other = resting[static_cast<std::size_t>(o)];
            if (o == m.object || !other || floating[static_cast<std::size_t>(o)]) continue;
            if (discs_overlap(placed, {*other, inst.object(o).radius}))
                out.push_back(make(ViolationKind::OverlapAtPlace, e.time, {m.object, o}, {m.arm}, ""));
        }
        slot = m.to;
    }
    for (int o = 0; o < inst.size(); ++o) {
        const auto& p = resting[static_cast<std::size_t>(o)];
        if (!p || !same_pose(*p, inst.object(o).goal))
            out.push_back(make(ViolationKind::NotAtGoalEnd, plan.end_time(), {o}, {}, ""));
    }
    return out;
}

Pose Segment::at(double t) const
{
    if (t1 - t0 <= 0.0) return p0;
    const double u = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
    return {p0.x + (p1.x - p0.x) * u, p0.y + (p1.y - p0.y) * u};
}

double min_separation(const Segment& a, const Segment& b)
{
    const double lo = std::max(a.t0, b.t0);
    const double hi = std::min(a.t1, b.t1);
    if (hi < lo) return kInf;
    const Pose a0 = a.at(lo), a1 = a.at(hi), b0 = b.at(lo), b1 = b.at(hi);
    // relative position d(u) = d0 + u * v for u in [0, 1]
    const double dx = a0.x - b0.x, dy = a0.y - b0.y;
    const double vx = (a1.x - b1.x) - dx, vy = (a1.y - b1.y) - dy;
    const double vv = vx * vx + vy * vy;
    double u = 0.0;
    if (vv > 0.0) u = std::clamp(-(dx * vx + dy * vy) / vv, 0.0, 1.0);
    return std::hypot(dx + u * vx, dy + u * vy);
}

namespace {

struct Phase {
    bool travel = false;
    Site dest;
    double dwell = 0.0;
    std::vector<int> waits;
    int sets = -1;
    int handoff = -1;
};

int pick_event(std::size_t m) { return static_cast<int>(m * 3); }
int place_event(std::size_t m) { return static_cast<int>(m * 3 + 1); }
int arrive_event(std::size_t m) { return static_cast<int>(m * 3 + 2); }

} // namespace

ExecReport estimate_execution(const Instance& inst, const CostParams& cp, const ConcretePlan& plan, const ExecOptions& opts)
{
    for (const auto& v : validate_schedule(inst, plan)) {
        if (opts.abstract_buffers && v.kind == ViolationKind::UnallocatedBuffer) continue;
        throw InvalidInput("cannot execute an invalid plan: " + describe(v));
    }

    const auto& moves = plan.moves;
    const std::size_t nm = moves.size();
    auto is_buffer_site = [&](int slot) { return opts.abstract_buffers && slot >= 0; };
    auto site_from = [&](const Move& m) { return Site{m.from, is_buffer_site(m.from_slot)}; };
    auto site_to = [&](const Move& m) { return Site{m.to, is_buffer_site(m.to_slot)}; };

    // per-object move order and resting intervals
    std::vector<std::vector<std::size_t>> by_object(static_cast<std::size_t>(inst.size()));
    {
        std::vector<std::size_t> order(nm);
        for (std::size_t i = 0; i < nm; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return moves[a].pick < moves[b].pick; });
        for (auto i : order) by_object[static_cast<std::size_t>(moves[i].object)].push_back(i);
    }
    struct Interval {
        int object;
        Pose pose;
        bool buffer;
        double end;
        int vacated_by; // move index whose pick ends the interval, or -1
    };
    std::vector<Interval> intervals;
    std::vector<int> previous_placer(nm, -1);
    for (int o = 0; o < inst.size(); ++o) {
        const auto& seq = by_object[static_cast<std::size_t>(o)];
        Pose pose = inst.object(o).start;
        bool buffer = false;
        int placer = -1;
        for (auto mi : seq) {
            const Move& m = moves[mi];
            if (m.kind == MoveKind::Receive) continue;
            intervals.push_back({o, pose, buffer, m.pick, static_cast<int>(mi)});
            previous_placer[mi] = placer;
            // the object is next at rest after this move (or its receiving partner) places it
            std::size_t placing = mi;
            if (m.kind == MoveKind::Deliver) {
                for (auto mj : seq)
                    if (moves[mj].kind == MoveKind::Receive && moves[mj].handoff == m.handoff) placing = mj;
            }
            pose = moves[placing].to;
            buffer = is_buffer_site(moves[placing].to_slot);
            placer = static_cast<int>(placing);
        }
        intervals.push_back({o, pose, buffer, kInf, -1});
    }

    auto place_waits = [&](std::size_t mi) {
        std::vector<int> waits;
        const Move& m = moves[mi];
        if (is_buffer_site(m.to_slot)) return waits;
        const Disc target{m.to, inst.object(m.object).radius};
        for (const auto& iv : intervals) {
            if (iv.object == m.object || iv.vacated_by < 0 || iv.buffer) continue;
            if (iv.end > m.place + kEps) continue;
            if (discs_overlap(target, {iv.pose, inst.object(iv.object).radius})) waits.push_back(pick_event(static_cast<std::size_t>(iv.vacated_by)));
        }
        return waits;
    };
    auto pick_waits = [&](std::size_t mi) {
        std::vector<int> waits;
        if (previous_placer[mi] >= 0) waits.push_back(place_event(static_cast<std::size_t>(previous_placer[mi])));
        return waits;
    };
    auto partner = [&](std::size_t mi) {
        for (std::size_t j = 0; j < nm; ++j)
            if (j != mi && moves[j].handoff == moves[mi].handoff && moves[j].kind != MoveKind::PickPlace) return j;
        throw std::logic_error("handoff without partner");
    };

    const Pose handoff = inst.regions.handoff_projection;
    std::array<std::vector<Phase>, 2> phases;
    for (Arm arm : kArms) {
        std::vector<std::size_t> mine;
        for (std::size_t i = 0; i < nm; ++i)
            if (moves[i].arm == arm) mine.push_back(i);
        std::stable_sort(mine.begin(), mine.end(), [&](std::size_t a, std::size_t b) { return moves[a].start < moves[b].start; });
        auto& ph = phases[static_cast<std::size_t>(index(arm))];
        for (auto mi : mine) {
            const Move& m = moves[mi];
            switch (m.kind) {
            case MoveKind::PickPlace:
                ph.push_back({true, site_from(m), 0.0, pick_waits(mi), -1, -1});
                ph.push_back({false, site_from(m), cp.t_g, {}, pick_event(mi), -1});
                ph.push_back({true, site_to(m), 0.0, place_waits(mi), -1, -1});
                ph.push_back({false, site_to(m), cp.t_r, {}, place_event(mi), -1});
                break;
            case MoveKind::Deliver:
                ph.push_back({true, site_from(m), 0.0, pick_waits(mi), -1, -1});
                ph.push_back({false, site_from(m), cp.t_g, {}, pick_event(mi), -1});
                ph.push_back({true, Site::at(handoff), 0.0, {}, arrive_event(mi), m.handoff});
                ph.push_back({false, Site::at(handoff), cp.t_h, {arrive_event(partner(mi))}, place_event(mi), m.handoff});
                break;
            case MoveKind::Receive:
                ph.push_back({true, Site::at(handoff), 0.0, {}, arrive_event(mi), m.handoff});
                ph.push_back({false, Site::at(handoff), cp.t_h, {arrive_event(partner(mi))}, pick_event(mi), m.handoff});
                ph.push_back({true, site_to(m), 0.0, place_waits(mi), -1, m.handoff});
                ph.push_back({false, site_to(m), cp.t_r, {}, place_event(mi), -1});
                break;
            }
        }
        ph.push_back({true, Site::at(inst.regions.rest_pose(arm)), 0.0, {}, -1, -1});
    }

    std::vector<double> event_time(nm * 3, kInf);
    struct ArmRun {
        std::size_t next = 0;
        double ready = 0.0;
        Site site;
        Segment current;
        int current_handoff = -1;
        bool has_segment = false;
    };
    std::array<ArmRun, 2> run;
    for (Arm arm : kArms) run[static_cast<std::size_t>(index(arm))].site = Site::at(inst.regions.rest_pose(arm));

    ExecReport report;
    const double clearance = 2.0 * opts.ee_radius_fraction * inst.workspace.width;
    // with no shared strip the arms work in disjoint halves
    const bool shared_strip = inst.regions.x_right_of_r1 > inst.regions.x_left_of_r2;
    const bool check_conflicts = !opts.abstract_buffers && clearance > 0.0 && shared_strip;

    for (;;) {
        int chosen = -1;
        double chosen_start = kInf;
        bool remaining = false;
        for (int a = 0; a < 2; ++a) {
            auto& r = run[static_cast<std::size_t>(a)];
            const auto& ph = phases[static_cast<std::size_t>(a)];
            if (r.next >= ph.size()) continue;
            remaining = true;
            double start = r.ready;
            bool ready = true;
            for (int ev : ph[r.next].waits) {
                if (!std::isfinite(event_time[static_cast<std::size_t>(ev)])) {
                    ready = false;
                    break;
                }
                start = std::max(start, event_time[static_cast<std::size_t>(ev)]);
            }
            if (ready && start < chosen_start) {
                chosen = a;
                chosen_start = start;
            }
        }
        if (!remaining) break;
        if (chosen < 0) throw std::logic_error("execution model deadlocked on plan ordering");

        auto& r = run[static_cast<std::size_t>(chosen)];
        const Phase& p = phases[static_cast<std::size_t>(chosen)][r.next];
        const Arm arm = kArms[static_cast<std::size_t>(chosen)];
        const double duration = p.travel ? leg_time(cp, arm, r.site, p.dest) : p.dwell;
        const Segment seg{chosen_start, chosen_start + duration, r.site.pose, p.travel ? p.dest.pose : r.site.pose};

        if (check_conflicts) {
            const auto& o = run[static_cast<std::size_t>(1 - chosen)];
            const bool same_handoff = p.handoff >= 0 && p.handoff == o.current_handoff;
            if (o.has_segment && !same_handoff && o.current.t0 <= chosen_start + kEps && o.current.t1 > chosen_start + kEps &&
                min_separation(seg, o.current) < clearance) {
                report.per_arm_yield[static_cast<std::size_t>(chosen)] += o.current.t1 - chosen_start;
                r.ready = o.current.t1;
                continue;
            }
        }

        r.current = seg;
        r.current_handoff = p.handoff;
        r.has_segment = true;
        r.ready = seg.t1;
        r.site = p.travel ? p.dest : r.site;
        report.per_arm_busy[static_cast<std::size_t>(chosen)] += duration;
        if (p.sets >= 0) event_time[static_cast<std::size_t>(p.sets)] = seg.t1;
        ++r.next;
    }

    report.makespan_sec = std::max(run[0].ready, run[1].ready);
    const double yield = report.per_arm_yield[0] + report.per_arm_yield[1];
    report.conflict_proportion = report.makespan_sec > 0.0 ? yield / report.makespan_sec : 0.0;
    report.handoff_count = plan.handoff_count();
    report.buffer_move_count = plan.buffer_move_count();
    return report;
}

} // namespace cdr
