#pragma once

#include "cdr/instance.hpp"
#include "cdr/mchs.hpp"
#include "cdr/schedule.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>

namespace cdr {

/// End-effector speed, service times and the travel charged for a leg that
/// touches a not-yet-allocated buffer (the diagonal of that arm's region).
struct CostParams {
    double speed = 1.0;
    double t_g = 0.0;
    double t_r = 0.0;
    double t_h = 0.0;
    std::array<double, 2> buffer_travel{0.0, 0.0};

    double travel(Arm a) const { return buffer_travel[static_cast<std::size_t>(index(a))]; }
};

/// t_g = t_r = t_h = workspace diagonal / speed.
CostParams default_cost_params(const Instance& inst, double speed = 1.0);

/// A leg endpoint; buffer endpoints have no coordinates yet.
struct Site {
    Pose pose;
    bool buffer = false;

    static Site at(Pose p) { return {p, false}; }
    static Site unallocated_buffer() { return {{}, true}; }
};

/// Straight-line travel time for arm a between two sites.
double leg_time(const CostParams& cp, Arm a, const Site& from, const Site& to);

/// Pick-n-place from the current end-effector site: travel to the pick, pick, travel, place.
double t_pp(const CostParams& cp, Arm a, const Site& current, const Site& pick, const Site& place);
/// Delivering side of a handoff: travel to the pick, pick, travel to the handoff pose, hand over.
double t_hd(const CostParams& cp, Arm a, const Site& current, const Site& pick, const Pose& handoff);
/// Receiving side: travel to the handoff pose, take over, travel to the placement, place.
double t_hr(const CostParams& cp, Arm a, const Site& current, const Pose& handoff, const Site& place);

/// FC search node: the arrangement after the committed tasks, with the
/// instants those tasks leave behind.
struct IntervalState {
    std::vector<Status> statuses;
    /// When each object last came to rest (its next pick may not start earlier).
    std::vector<double> rest_since;
    /// When each object left its start pose; +inf while still there.
    std::vector<double> vacate;
    std::array<double, 2> free_at{0.0, 0.0};
    std::array<Site, 2> site_at_free;

    /// Earliest arm-free instant.
    double now() const { return std::min(free_at[0], free_at[1]); }
};

/// Start node: all objects at rest per `initial`, both arms idle at their rest poses.
IntervalState initial_interval_state(const Instance& inst, const ArrangementState& initial);

/// Remaining pick/transfer/place (and handoff) work split between the arms,
/// skipping objects at their goal.
double fc_heuristic(const Instance& inst, const CostParams& cp, const IntervalState& s);

struct FchsOptions {
    std::size_t max_expansions = 200'000;
    double time_limit_sec = 300.0;
    ActionFilter filter;
    std::optional<ArrangementState> initial;
};

/// Best-first search over interval states. Each expansion commits one joint
/// step; every task starts when its arm frees and waits only on the events it
/// depends on. Throws PlanningError on budget or time-limit exhaustion.
TimedSchedule fchs_search(const Instance& inst, const CostParams& cp, const FchsOptions& opts = {},
                          SearchStats* stats = nullptr);

} // namespace cdr
