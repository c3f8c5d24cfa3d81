#pragma once

#include "cdr/geometry.hpp"
#include "cdr/instance.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cdr {

/// Where an object currently rests. Transit only appears in interval (FC) states.
enum class Status : std::uint8_t { Start = 0, Goal = 1, Buffer1 = 2, Buffer2 = 3, Transit = 4 };

/// Destination of a primitive action.
enum class Target : std::uint8_t { Goal, Buffer1, Buffer2, Handoff };

Status buffer_status(Arm a);
Target buffer_target(Arm a);
bool is_buffer(Status s);
bool is_buffer(Target t);
/// Status an object has after an action with this target completes (Handoff has none).
Status status_after(Target t);

std::string to_string(Status s);
std::string to_string(Target t);
Target parse_target(const std::string& s);

/// Object statuses with both arms empty: one node of the MC search.
struct ArrangementState {
    std::vector<Status> statuses;

    int size() const { return static_cast<int>(statuses.size()); }
    Status operator[](int o) const { return statuses[static_cast<std::size_t>(o)]; }
    Status& operator[](int o) { return statuses[static_cast<std::size_t>(o)]; }

    bool all_at_goal() const;
    /// Packs two bits per object; requires size() <= 32 and no Transit entries.
    std::uint64_t key() const;
    static ArrangementState from_key(std::uint64_t key, int n);

    static ArrangementState at_start(int n) { return {std::vector<Status>(static_cast<std::size_t>(n), Status::Start)}; }
    /// Start state of inst, marking objects whose start already equals their goal as done.
    static ArrangementState initial(const Instance& inst);

    friend bool operator==(const ArrangementState&, const ArrangementState&) = default;
};

/// Arms able to grasp the object where it currently rests.
ArmSet current_reach(const Instance& inst, const ArrangementState& s, int o);

/// (arm, object, target). Objects are 0-based indices here; dumps print 1-based ids.
struct PrimitiveAction {
    Arm arm = Arm::R1;
    int object = 0;
    Target target = Target::Goal;

    friend bool operator==(const PrimitiveAction&, const PrimitiveAction&) = default;
};

enum class StepKind : std::uint8_t { Individual, Pair, Swap, Handoff };
std::string to_string(StepKind k);

/// One MC action step. A handoff is (deliverer -> Handoff, receiver -> Goal|Buffer) on one object.
struct JointStep {
    std::vector<PrimitiveAction> actions;
    StepKind kind = StepKind::Individual;

    friend bool operator==(const JointStep&, const JointStep&) = default;
};

struct Schedule {
    std::vector<JointStep> steps;

    int makespan_mc() const { return static_cast<int>(steps.size()); }
};

/// One arm task with real times. For a handoff the deliverer's entry has
/// target Handoff and ends at the transfer instant, which is also the
/// receiver entry's pick time; both carry the same handoff id.
struct TimedEntry {
    Arm arm = Arm::R1;
    int object = 0;
    Target target = Target::Goal;
    double start = 0.0;
    double pick = 0.0;
    double place = 0.0;
    double end = 0.0;
    int handoff = -1;
};

struct TimedSchedule {
    std::vector<TimedEntry> entries;
    /// Completion time including both arms' return to rest.
    double makespan_fc = 0.0;
};

/// "arm object target start end" per entry, 1-based ids, times with 6 decimals.
void dump_timed_schedule(std::ostream& os, const TimedSchedule& sched);

/// Applies one step to a state. Does not check feasibility.
ArrangementState apply_step(const ArrangementState& s, const JointStep& step);

/// "t | r1: (o,target) | r2: (o,target|idle)" per step, 1-based t and ids.
void dump_schedule(std::ostream& os, const Schedule& sched);
std::string dump_schedule(const Schedule& sched);

} // namespace cdr
