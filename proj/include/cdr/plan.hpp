#pragma once

#include "cdr/geometry.hpp"
#include "cdr/instance.hpp"
#include "cdr/schedule.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace cdr {

enum class MoveKind : std::uint8_t { PickPlace, Deliver, Receive };
std::string to_string(MoveKind k);

/// One arm task with poses and times. Picks happen at `pick`, placements at
/// `place`; at equal instants every pick precedes every placement. A Deliver
/// ends at the handoff projection and a Receive starts there.
struct Move {
    Arm arm = Arm::R1;
    int object = 0;
    MoveKind kind = MoveKind::PickPlace;
    Target target = Target::Goal;
    Pose from;
    Pose to;
    /// Buffer slot the object leaves / enters, or -1.
    int from_slot = -1;
    int to_slot = -1;
    double start = 0.0;
    double pick = 0.0;
    double place = 0.0;
    double end = 0.0;
    /// MC step index, or -1 for continuous-time plans.
    int step = -1;
    int handoff = -1;
};

/// One buffer visit. `pose` is meaningful once `allocated` is set.
struct BufferSlot {
    int object = 0;
    Arm region = Arm::R1;
    Pose pose;
    bool allocated = false;
};

/// A schedule with buffer coordinates attached (possibly still unallocated).
struct ConcretePlan {
    std::vector<Move> moves;
    std::vector<BufferSlot> buffers;
    /// Number of MC steps, or -1 when the plan is continuous-time.
    int mc_steps = -1;
    /// Planner-side FC estimate, NaN when not computed.
    double fc_makespan = std::numeric_limits<double>::quiet_NaN();

    bool fully_allocated() const;
    double end_time() const;
    int handoff_count() const;
    int buffer_move_count() const;
};

/// MC step k: picks at k, handoff transfer at k + 0.25, placements at k + 0.5, end k + 1.
ConcretePlan to_plan(const Instance& inst, const Schedule& sched);
ConcretePlan to_plan(const Instance& inst, const TimedSchedule& sched);

/// Fills in buffer coordinates on every move touching a slot.
void sync_buffer_poses(ConcretePlan& plan);

/// Object poses after executing the plan (buffer slots must be allocated).
std::vector<Pose> final_poses(const Instance& inst, const ConcretePlan& plan);

/// Same motions backwards in time; handoff roles swap.
ConcretePlan reversed_plan(const ConcretePlan& plan);

/// Appends `tail` after `head` ends, renumbering slots, steps and handoffs.
void append_plan(ConcretePlan& head, const ConcretePlan& tail);

/// Moves that complete by `cut` (all of them must end at or before cut or start at or after it).
ConcretePlan plan_prefix(const ConcretePlan& plan, double cut);

/// MC schedule dump ("t | r1: ... | r2: ...") or timed dump for continuous
/// plans, followed by "buffer(o)=x,y" lines for allocated slots.
void dump_plan(std::ostream& os, const ConcretePlan& plan);
std::string dump_plan(const ConcretePlan& plan);

/// Stable 64-bit fingerprint of the encoded instance, in hex.
std::string instance_digest(const Instance& inst);

std::string encode_plan(const Instance& inst, const ConcretePlan& plan);
/// Throws InvalidInput for malformed documents or a plan made for another instance.
ConcretePlan decode_plan(const Instance& inst, const std::string& text);

} // namespace cdr
