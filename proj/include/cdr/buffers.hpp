#pragma once

#include "cdr/fchs.hpp"
#include "cdr/instance.hpp"
#include "cdr/mchs.hpp"
#include "cdr/plan.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cdr {

/// One buffer visit: the slot is occupied over [place, pick).
struct BufferRequest {
    int slot = 0;
    int object = 0;
    Arm region = Arm::R1;
    double place = 0.0;
    double pick = 0.0;
    /// Determinate poses of other objects that rest at some moment of the window.
    std::vector<Disc> obstacles;
    /// Other slots whose windows intersect this one.
    std::vector<int> concurrent;
};

/// Requests of every buffer slot in the plan, in slot order.
std::vector<BufferRequest> occupancy_requests(const Instance& inst, const ConcretePlan& plan);

/// Obstacles close enough to touch a footprint whose center lies in the request's region.
std::vector<Disc> relevant_obstacles(const Instance& inst, const BufferRequest& req);

struct SampleResult {
    std::optional<Pose> pose;
    int attempts = 0;
};

/// Uniform rejection sampling of a buffer center inside the request's region,
/// footprint inside the workspace, clear of the obstacles and of `fixed`.
SampleResult sample_buffer(const Instance& inst, const BufferRequest& req, int budget, std::uint64_t seed,
                           const std::vector<Disc>& fixed = {});

struct Allocation {
    /// Full plan on success, otherwise the prefix up to `cut`.
    ConcretePlan plan;
    bool complete = false;
    /// Slot that could not be placed, or -1.
    int failed_slot = -1;
    double cut = 0.0;
    int samples = 0;
};

Allocation allocate_buffers(const Instance& inst, const ConcretePlan& plan, int budget = 1000, std::uint64_t seed = 0);

enum class Planner { Mchs, Fchs, Split, Greedy };
std::string to_string(Planner p);
/// Throws InvalidInput for unknown names.
Planner parse_planner(const std::string& name);

/// Abstract plan (buffers unallocated) from the chosen planner.
ConcretePlan plan_abstract(const Instance& inst, Planner planner, const CostParams& cp, double time_limit_sec = 300.0);

struct LazyOptions {
    Planner planner = Planner::Mchs;
    int max_rounds = 5;
    int sample_budget = 1000;
    double time_limit_sec = 300.0;
    std::uint64_t seed = 0;
};

struct LazyStats {
    int rounds = 0;
    int samples = 0;
};

/// Plans, allocates buffers and, when allocation fails, keeps the valid prefix
/// and re-plans the gap from both ends. The result passes validate_schedule.
/// Throws PlanningError after max_rounds or on timeout.
ConcretePlan plan_with_lazy_buffers(const Instance& inst, const CostParams& cp, const LazyOptions& opts = {},
                                    LazyStats* stats = nullptr);

} // namespace cdr
