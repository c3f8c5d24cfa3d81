#pragma once

#include "cdr/fchs.hpp"
#include "cdr/instance.hpp"
#include "cdr/plan.hpp"

#include <array>
#include <string>
#include <vector>

namespace cdr {

enum class ViolationKind {
    OverlapAtPlace,
    Unreachable,
    DoubleBooking,
    HandoffDesync,
    NotAtGoalEnd,
    OutsideWorkspace,
    InconsistentPose,
    UnallocatedBuffer,
};

std::string to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    double time = 0.0;
    std::vector<int> objects;
    std::vector<Arm> arms;
    std::string detail;
};

/// Replays the plan event by event (picks before placements at equal times)
/// and reports every broken rule. Empty result means the plan is valid.
std::vector<Violation> validate_schedule(const Instance& inst, const ConcretePlan& plan);

std::string describe(const Violation& v);

struct ExecOptions {
    /// End-effector disc radius as a fraction of the workspace width; 0 disables conflicts.
    double ee_radius_fraction = 0.05;
    /// Charge buffer legs with the region diagonal instead of allocated coordinates.
    /// Conflicts are not checked in this mode.
    bool abstract_buffers = false;
};

struct ExecReport {
    double makespan_sec = 0.0;
    std::array<double, 2> per_arm_busy{0.0, 0.0};
    std::array<double, 2> per_arm_yield{0.0, 0.0};
    /// Total yield time over makespan.
    double conflict_proportion = 0.0;
    int handoff_count = 0;
    int buffer_move_count = 0;
};

/// Simulates both arms moving along straight 2D segments at cp.speed with
/// pick/place/handoff dwells. Tasks start as soon as the plan's ordering
/// allows; when a segment would pass within two end-effector radii of the
/// other arm's current segment, the arm that started later waits for that
/// segment to finish. Throws InvalidInput if the plan is invalid.
ExecReport estimate_execution(const Instance& inst, const CostParams& cp, const ConcretePlan& plan,
                              const ExecOptions& opts = {});

/// Straight-line end-effector motion from p0 at t0 to p1 at t1 (a dwell when p0 == p1).
struct Segment {
    double t0 = 0.0;
    double t1 = 0.0;
    Pose p0;
    Pose p1;

    Pose at(double t) const;
};

/// Smallest distance between the two moving points over their common time
/// window, or +infinity when the windows do not intersect.
double min_separation(const Segment& a, const Segment& b);

} // namespace cdr
