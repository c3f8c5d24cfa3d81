#pragma once

#include "cdr/instance.hpp"
#include "cdr/mchs.hpp"
#include "cdr/schedule.hpp"

namespace cdr {

/// Minimum-action plan for one virtual arm reaching the whole workspace; one action per step.
Schedule single_arm_mchs(const Instance& inst, SearchStats* stats = nullptr);

/// Distributes a single-arm plan over the two arms. Moves only one arm can make
/// go to that arm, moves between the exclusive regions become handoffs, the
/// rest go to the less loaded arm. Each move is list-scheduled after every
/// earlier move whose source or target footprint overlaps its target.
Schedule split_schedule(const Schedule& single, const Instance& inst);

/// Step-by-step greedy: buffer-to-goal moves first, then the object nearest
/// to the arm's last placement. Throws PlanningError after 10n steps or when a
/// step makes no progress.
Schedule greedy_plan(const Instance& inst);

} // namespace cdr
