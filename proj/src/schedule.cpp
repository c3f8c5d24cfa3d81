#include "cdr/schedule.hpp"

#include "cdr/error.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace cdr {

Status buffer_status(Arm a) { return a == Arm::R1 ? Status::Buffer1 : Status::Buffer2; }
Target buffer_target(Arm a) { return a == Arm::R1 ? Target::Buffer1 : Target::Buffer2; }
bool is_buffer(Status s) { return s == Status::Buffer1 || s == Status::Buffer2; }
bool is_buffer(Target t) { return t == Target::Buffer1 || t == Target::Buffer2; }

Status status_after(Target t)
{
    switch (t) {
    case Target::Goal: return Status::Goal;
    case Target::Buffer1: return Status::Buffer1;
    case Target::Buffer2: return Status::Buffer2;
    case Target::Handoff: break;
    }
    return Status::Transit;
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Start: return "S";
    case Status::Goal: return "G";
    case Status::Buffer1: return "B1";
    case Status::Buffer2: return "B2";
    case Status::Transit: return "T";
    }
    return "?";
}

std::string to_string(Target t)
{
    switch (t) {
    case Target::Goal: return "G";
    case Target::Buffer1: return "B1";
    case Target::Buffer2: return "B2";
    case Target::Handoff: return "H";
    }
    return "?";
}

Target parse_target(const std::string& s)
{
    if (s == "G") return Target::Goal;
    if (s == "B1") return Target::Buffer1;
    if (s == "B2") return Target::Buffer2;
    if (s == "H") return Target::Handoff;
    throw InvalidInput("unknown action target \"" + s + "\"");
}

std::string to_string(StepKind k)
{
    switch (k) {
    case StepKind::Individual: return "individual";
    case StepKind::Pair: return "pair";
    case StepKind::Swap: return "swap";
    case StepKind::Handoff: return "handoff";
    }
    return "?";
}

bool ArrangementState::all_at_goal() const
{
    for (auto s : statuses)
        if (s != Status::Goal) return false;
    return true;
}

std::uint64_t ArrangementState::key() const
{
    // object 0 in the most significant bits, so numeric order is lexicographic order
    std::uint64_t k = 0;
    for (int i = 0; i < size(); ++i) k = (k << 2) | static_cast<std::uint64_t>((*this)[i]);
    return k;
}

ArrangementState ArrangementState::from_key(std::uint64_t key, int n)
{
    ArrangementState s = at_start(n);
    for (int i = n - 1; i >= 0; --i) {
        s[i] = static_cast<Status>(key & 3U);
        key >>= 2;
    }
    return s;
}

ArrangementState ArrangementState::initial(const Instance& inst)
{
    auto s = at_start(inst.size());
    for (int i = 0; i < inst.size(); ++i)
        if (inst.object(i).start == inst.object(i).goal) s[i] = Status::Goal;
    return s;
}

ArmSet current_reach(const Instance& inst, const ArrangementState& s, int o)
{
    switch (s[o]) {
    case Status::Start: return reachable_arms(inst.regions, inst.object(o).start);
    case Status::Goal: return reachable_arms(inst.regions, inst.object(o).goal);
    case Status::Buffer1: return ArmSet::only(Arm::R1);
    case Status::Buffer2: return ArmSet::only(Arm::R2);
    case Status::Transit: break;
    }
    return {};
}

ArrangementState apply_step(const ArrangementState& s, const JointStep& step)
{
    ArrangementState out = s;
    for (const auto& a : step.actions)
        if (a.target != Target::Handoff) out[a.object] = status_after(a.target);
    return out;
}

void dump_schedule(std::ostream& os, const Schedule& sched)
{
    int t = 1;
    for (const auto& step : sched.steps) {
        os << t++;
        for (Arm arm : kArms) {
            os << " | " << to_string(arm) << ": ";
            const PrimitiveAction* found = nullptr;
            for (const auto& a : step.actions)
                if (a.arm == arm) found = &a;
            if (found)
                os << "(" << found->object + 1 << "," << to_string(found->target) << ")";
            else
                os << "idle";
        }
        os << "\n";
    }
}

void dump_timed_schedule(std::ostream& os, const TimedSchedule& sched)
{
    char buf[128];
    for (const auto& e : sched.entries) {
        std::snprintf(buf, sizeof buf, "%s %d %s %.6f %.6f\n", to_string(e.arm).c_str(), e.object + 1,
                      to_string(e.target).c_str(), e.start, e.end);
        os << buf;
    }
}

std::string dump_schedule(const Schedule& sched)
{
    std::ostringstream os;
    dump_schedule(os, sched);
    return os.str();
}

} // namespace cdr
