#include "cdr/plan.hpp"

#include "cdr/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace cdr {

namespace {

constexpr double kTimeEps = 1e-9;

void set_mc_times(Move& m, int k)
{
    m.step = k;
    m.start = k;
    m.end = k + 1.0;
    switch (m.kind) {
    case MoveKind::PickPlace:
        m.pick = k;
        m.place = k + 0.5;
        break;
    case MoveKind::Deliver:
        m.pick = k;
        m.place = k + 0.25;
        break;
    case MoveKind::Receive:
        m.pick = k + 0.25;
        m.place = k + 0.5;
        break;
    }
}

void sort_moves(std::vector<Move>& moves)
{
    std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        if (a.pick != b.pick) return a.pick < b.pick;
        return index(a.arm) < index(b.arm);
    });
}

/// Tracks where each object currently rests while a schedule is converted.
struct Tracker {
    const Instance& inst;
    ConcretePlan& plan;
    std::vector<Pose> pose;
    std::vector<int> slot;

    Tracker(const Instance& i, ConcretePlan& p) : inst(i), plan(p)
    {
        for (const auto& o : inst.objects) pose.push_back(o.start);
        slot.assign(inst.objects.size(), -1);
    }

    void take(Move& m)
    {
        const auto o = static_cast<std::size_t>(m.object);
        m.from = pose[o];
        m.from_slot = slot[o];
    }

    void put(Move& m, Arm placing_arm)
    {
        const auto o = static_cast<std::size_t>(m.object);
        if (m.target == Target::Goal) {
            m.to = inst.object(m.object).goal;
            m.to_slot = -1;
        } else {
            const Arm region = m.target == Target::Buffer1 ? Arm::R1 : Arm::R2;
            if (region != placing_arm) throw InvalidInput("buffer target outside the placing arm's region");
            plan.buffers.push_back({m.object, region, {}, false});
            m.to_slot = static_cast<int>(plan.buffers.size() - 1);
        }
        pose[o] = m.to;
        slot[o] = m.to_slot;
    }
};

} // namespace

std::string to_string(MoveKind k)
{
    switch (k) {
    case MoveKind::PickPlace: return "pnp";
    case MoveKind::Deliver: return "deliver";
    case MoveKind::Receive: return "receive";
    }
    return "?";
}

bool ConcretePlan::fully_allocated() const
{
    return std::all_of(buffers.begin(), buffers.end(), [](const BufferSlot& b) { return b.allocated; });
}

double ConcretePlan::end_time() const
{
    double t = 0.0;
    for (const auto& m : moves) t = std::max(t, m.end);
    if (mc_steps >= 0) t = std::max(t, static_cast<double>(mc_steps));
    return t;
}

int ConcretePlan::handoff_count() const
{
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), [](const Move& m) { return m.kind == MoveKind::Deliver; }));
}

int ConcretePlan::buffer_move_count() const
{
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), [](const Move& m) { return m.to_slot >= 0; }));
}

ConcretePlan to_plan(const Instance& inst, const Schedule& sched)
{
    ConcretePlan plan;
    plan.mc_steps = sched.makespan_mc();
    Tracker track(inst, plan);
    int next_handoff = 0;
    for (int k = 0; k < sched.makespan_mc(); ++k) {
        const auto& step = sched.steps[static_cast<std::size_t>(k)];
        if (step.kind == StepKind::Handoff) {
            const auto& d = step.actions[0].target == Target::Handoff ? step.actions[0] : step.actions[1];
            const auto& r = step.actions[0].target == Target::Handoff ? step.actions[1] : step.actions[0];
            Move deliver{.arm = d.arm, .object = d.object, .kind = MoveKind::Deliver, .target = Target::Handoff};
            Move receive{.arm = r.arm, .object = r.object, .kind = MoveKind::Receive, .target = r.target};
            deliver.handoff = receive.handoff = next_handoff++;
            set_mc_times(deliver, k);
            set_mc_times(receive, k);
            track.take(deliver);
            deliver.to = inst.regions.handoff_projection;
            receive.from = inst.regions.handoff_projection;
            track.put(receive, r.arm);
            plan.moves.push_back(deliver);
            plan.moves.push_back(receive);
            continue;
        }
        // picks precede places: read every source before any placement updates the tracker
        std::vector<Move> batch;
        for (const auto& a : step.actions) {
            Move m{.arm = a.arm, .object = a.object, .kind = MoveKind::PickPlace, .target = a.target};
            set_mc_times(m, k);
            track.take(m);
            batch.push_back(m);
        }
        for (auto& m : batch) {
            track.put(m, m.arm);
            plan.moves.push_back(m);
        }
    }
    sort_moves(plan.moves);
    return plan;
}

ConcretePlan to_plan(const Instance& inst, const TimedSchedule& sched)
{
    ConcretePlan plan;
    plan.fc_makespan = sched.makespan_fc;
    Tracker track(inst, plan);
    auto entries = sched.entries;
    std::stable_sort(entries.begin(), entries.end(), [](const TimedEntry& a, const TimedEntry& b) { return a.pick < b.pick; });
    for (const auto& e : entries) {
        Move m{.arm = e.arm, .object = e.object, .target = e.target};
        m.start = e.start;
        m.pick = e.pick;
        m.place = e.place;
        m.end = e.end;
        m.handoff = e.handoff;
        if (e.target == Target::Handoff) {
            m.kind = MoveKind::Deliver;
            track.take(m);
            m.to = inst.regions.handoff_projection;
        } else if (e.handoff >= 0) {
            m.kind = MoveKind::Receive;
            m.from = inst.regions.handoff_projection;
            track.put(m, m.arm);
        } else {
            track.take(m);
            track.put(m, m.arm);
        }
        plan.moves.push_back(m);
    }
    sort_moves(plan.moves);
    return plan;
}

void sync_buffer_poses(ConcretePlan& plan)
{
    for (auto& m : plan.moves) {
        if (m.from_slot >= 0) m.from = plan.buffers[static_cast<std::size_t>(m.from_slot)].pose;
        if (m.to_slot >= 0) m.to = plan.buffers[static_cast<std::size_t>(m.to_slot)].pose;
    }
}

std::vector<Pose> final_poses(const Instance& inst, const ConcretePlan& plan)
{
    std::vector<Pose> poses;
    for (const auto& o : inst.objects) poses.push_back(o.start);
    auto moves = plan.moves;
    std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) { return a.place < b.place; });
    for (const auto& m : moves)
        if (m.kind != MoveKind::Deliver) poses[static_cast<std::size_t>(m.object)] = m.to;
    return poses;
}

ConcretePlan reversed_plan(const ConcretePlan& plan)
{
    ConcretePlan out;
    out.buffers = plan.buffers;
    out.mc_steps = plan.mc_steps;
    const double total = plan.end_time();
    for (const auto& m : plan.moves) {
        Move r = m;
        std::swap(r.from, r.to);
        std::swap(r.from_slot, r.to_slot);
        if (m.kind == MoveKind::Deliver) r.kind = MoveKind::Receive;
        if (m.kind == MoveKind::Receive) r.kind = MoveKind::Deliver;
        if (r.kind == MoveKind::Deliver) {
            r.target = Target::Handoff;
        } else if (r.to_slot >= 0) {
            r.target = buffer_target(out.buffers[static_cast<std::size_t>(r.to_slot)].region);
        } else {
            r.target = Target::Goal;
        }
        if (plan.mc_steps >= 0) {
            set_mc_times(r, plan.mc_steps - 1 - m.step);
        } else {
            r.start = total - m.end;
            r.end = total - m.start;
            r.pick = total - m.place;
            r.place = total - m.pick;
        }
        out.moves.push_back(r);
    }
    sort_moves(out.moves);
    return out;
}

void append_plan(ConcretePlan& head, const ConcretePlan& tail)
{
    const bool mc = head.mc_steps >= 0 && tail.mc_steps >= 0;
    const double offset = head.end_time();
    const int step_offset = std::max(head.mc_steps, 0);
    const int slot_offset = static_cast<int>(head.buffers.size());
    int handoff_offset = 0;
    for (const auto& m : head.moves) handoff_offset = std::max(handoff_offset, m.handoff + 1);
    for (const auto& b : tail.buffers) head.buffers.push_back(b);
    for (auto m : tail.moves) {
        if (m.from_slot >= 0) m.from_slot += slot_offset;
        if (m.to_slot >= 0) m.to_slot += slot_offset;
        if (m.handoff >= 0) m.handoff += handoff_offset;
        if (mc) {
            set_mc_times(m, m.step + step_offset);
        } else {
            m.step = -1;
            m.start += offset;
            m.end += offset;
            m.pick += offset;
            m.place += offset;
        }
        head.moves.push_back(m);
    }
    if (mc) {
        head.mc_steps += tail.mc_steps;
    } else {
        head.mc_steps = -1;
        for (auto& m : head.moves) m.step = -1;
    }
    head.fc_makespan = std::numeric_limits<double>::quiet_NaN();
    sort_moves(head.moves);
}

ConcretePlan plan_prefix(const ConcretePlan& plan, double cut)
{
    ConcretePlan out;
    out.buffers = plan.buffers;
    out.mc_steps = plan.mc_steps >= 0 ? 0 : -1;
    for (const auto& m : plan.moves) {
        if (m.end <= cut + kTimeEps) {
            out.moves.push_back(m);
            if (m.step >= 0) out.mc_steps = std::max(out.mc_steps, m.step + 1);
        }
    }
    if (plan.mc_steps >= 0) out.mc_steps = std::max(out.mc_steps, static_cast<int>(std::floor(cut + kTimeEps)));
    return out;
}

void dump_plan(std::ostream& os, const ConcretePlan& plan)
{
    if (plan.mc_steps >= 0) {
        Schedule s;
        s.steps.resize(static_cast<std::size_t>(plan.mc_steps));
        for (const auto& m : plan.moves) s.steps[static_cast<std::size_t>(m.step)].actions.push_back({m.arm, m.object, m.target});
        dump_schedule(os, s);
    } else {
        TimedSchedule t;
        for (const auto& m : plan.moves) t.entries.push_back({m.arm, m.object, m.target, m.start, m.pick, m.place, m.end, m.handoff});
        dump_timed_schedule(os, t);
    }
    char buf[128];
    for (const auto& b : plan.buffers) {
        if (!b.allocated) continue;
        std::snprintf(buf, sizeof buf, "buffer(%d)=%.12g,%.12g\n", b.object + 1, b.pose.x, b.pose.y);
        os << buf;
    }
}

std::string dump_plan(const ConcretePlan& plan)
{
    std::ostringstream os;
    dump_plan(os, plan);
    return os.str();
}

std::string instance_digest(const Instance& inst)
{
    // FNV-1a
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : encode_instance(inst)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

using nlohmann::json;

json pose_json(const Pose& p) { return json::array({p.x, p.y}); }

Pose pose_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

MoveKind parse_kind(const std::string& s)
{
    if (s == "pnp") return MoveKind::PickPlace;
    if (s == "deliver") return MoveKind::Deliver;
    if (s == "receive") return MoveKind::Receive;
    throw InvalidInput("unknown move kind \"" + s + "\"");
}

Arm parse_arm(const std::string& s)
{
    if (s == "r1") return Arm::R1;
    if (s == "r2") return Arm::R2;
    throw InvalidInput("unknown arm \"" + s + "\"");
}

} // namespace

std::string encode_plan(const Instance& inst, const ConcretePlan& plan)
{
    json doc;
    doc["instance_digest"] = instance_digest(inst);
    doc["n"] = inst.size();
    doc["mc_steps"] = plan.mc_steps;
    if (std::isfinite(plan.fc_makespan)) doc["fc_makespan"] = plan.fc_makespan;
    json moves = json::array();
    for (const auto& m : plan.moves) {
        moves.push_back({{"arm", to_string(m.arm)},
                         {"object", m.object + 1},
                         {"kind", to_string(m.kind)},
                         {"target", to_string(m.target)},
                         {"from", pose_json(m.from)},
                         {"to", pose_json(m.to)},
                         {"from_slot", m.from_slot},
                         {"to_slot", m.to_slot},
                         {"start", m.start},
                         {"pick", m.pick},
                         {"place", m.place},
                         {"end", m.end},
                         {"step", m.step},
                         {"handoff", m.handoff}});
    }
    doc["moves"] = std::move(moves);
    json buffers = json::array();
    for (const auto& b : plan.buffers)
        buffers.push_back({{"object", b.object + 1}, {"region", to_string(b.region)}, {"pose", pose_json(b.pose)}, {"allocated", b.allocated}});
    doc["buffers"] = std::move(buffers);
    return doc.dump(2) + "\n";
}

ConcretePlan decode_plan(const Instance& inst, const std::string& text)
{
    ConcretePlan plan;
    try {
        const auto doc = json::parse(text);
        if (doc.at("n").get<int>() != inst.size() || doc.at("instance_digest").get<std::string>() != instance_digest(inst))
            throw InvalidInput("plan was computed for a different instance");
        plan.mc_steps = doc.at("mc_steps").get<int>();
        if (doc.contains("fc_makespan")) plan.fc_makespan = doc.at("fc_makespan").get<double>();
        for (const auto& b : doc.at("buffers")) {
            const int object = b.at("object").get<int>() - 1;
            if (object < 0 || object >= inst.size()) throw InvalidInput("buffer references an unknown object");
            plan.buffers.push_back({object, parse_arm(b.at("region").get<std::string>()), pose_from(b.at("pose")),
                                    b.at("allocated").get<bool>()});
        }
        const int slots = static_cast<int>(plan.buffers.size());
        for (const auto& j : doc.at("moves")) {
            Move m;
            m.arm = parse_arm(j.at("arm").get<std::string>());
            m.object = j.at("object").get<int>() - 1;
            if (m.object < 0 || m.object >= inst.size()) throw InvalidInput("move references an unknown object");
            m.kind = parse_kind(j.at("kind").get<std::string>());
            m.target = parse_target(j.at("target").get<std::string>());
            m.from = pose_from(j.at("from"));
            m.to = pose_from(j.at("to"));
            m.from_slot = j.at("from_slot").get<int>();
            m.to_slot = j.at("to_slot").get<int>();
            if (m.from_slot >= slots || m.to_slot >= slots) throw InvalidInput("move references an unknown buffer slot");
            m.start = j.at("start").get<double>();
            m.pick = j.at("pick").get<double>();
            m.place = j.at("place").get<double>();
            m.end = j.at("end").get<double>();
            m.step = j.at("step").get<int>();
            m.handoff = j.at("handoff").get<int>();
            plan.moves.push_back(m);
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed plan document: ") + e.what());
    }
    // slot coordinates are authoritative
    sync_buffer_poses(plan);
    return plan;
}

} // namespace cdr
