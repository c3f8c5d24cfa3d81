#pragma once

#include "cdr/depgraph.hpp"
#include "cdr/instance.hpp"
#include "cdr/schedule.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace cdr {

/// Which generators the arrangement-space search may use.
struct ActionFilter {
    /// false restricts every generator to goal targets (no buffer visits).
    bool allow_buffers = true;
};

/// True when no single arm reaches both the object's current pose and its goal.
bool needs_handoff(const Instance& inst, const ArrangementState& s, int o);

std::vector<PrimitiveAction> individual_actions(const Instance& inst, const DependencyGraph& g,
                                                const ArrangementState& s, Arm arm, ActionFilter filter = {});

/// Coordinated steps resolving the last obstacle of some goal: a Swap when the
/// obstacle can itself go to its goal in the same step, otherwise a Pair that
/// clears it into the helper arm's buffer.
std::vector<JointStep> swap_actions(const Instance& inst, const DependencyGraph& g, const ArrangementState& s,
                                    ActionFilter filter = {});

std::vector<JointStep> handoff_actions(const Instance& inst, const DependencyGraph& g, const ArrangementState& s,
                                       ActionFilter filter = {});

/// All joint steps out of s with the arrangement each one produces. Steps are
/// normalized (actions ordered r1 before r2) and unique.
std::vector<std::pair<JointStep, ArrangementState>> successors(const Instance& inst, const DependencyGraph& g,
                                                               const ArrangementState& s, ActionFilter filter = {});

/// Lower bound on remaining MC steps: per-arm exclusive counts, a shared count
/// that either arm may absorb, and handoffs charged to both arms.
int mc_heuristic(const Instance& inst, const ArrangementState& s);

struct MchsOptions {
    std::size_t max_expansions = 1'000'000;
    double time_limit_sec = 300.0;
    ActionFilter filter;
    /// Plan with one virtual arm (r1) reaching the whole workspace, one action per step.
    bool single_arm = false;
    /// Defaults to ArrangementState::initial(inst).
    std::optional<ArrangementState> initial;
    /// Called for every state popped for expansion, with its g value.
    std::function<void(const ArrangementState&, int)> on_expand;
};

struct SearchStats {
    std::size_t expanded = 0;
    std::size_t generated = 0;
    double seconds = 0.0;
};

/// A* over arrangement states. Throws PlanningError when the expansion or time
/// budget runs out, InvalidInput for instances with more than 32 objects.
Schedule mchs_search(const Instance& inst, const MchsOptions& opts = {}, SearchStats* stats = nullptr);

/// Breadth-first search over the same successor relation; n <= 6 only.
int uniform_cost_oracle(const Instance& inst, ActionFilter filter = {});

} // namespace cdr
