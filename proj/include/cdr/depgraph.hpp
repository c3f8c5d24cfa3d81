#pragma once

#include "cdr/instance.hpp"
#include "cdr/schedule.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace cdr {

/// Arc (i, j): object i depends on object j, i.e. j's start footprint overlaps
/// i's goal footprint, so j must leave before i can be placed.
class DependencyGraph {
public:
    explicit DependencyGraph(int n = 0);

    int size() const { return static_cast<int>(out_.size()); }
    void add_arc(int i, int j);
    bool has_arc(int i, int j) const;
    /// Objects that o depends on, ascending.
    const std::vector<int>& blockers(int o) const { return out_[static_cast<std::size_t>(o)]; }
    std::vector<std::pair<int, int>> arcs() const;
    std::size_t arc_count() const;

private:
    std::vector<std::vector<int>> out_;
};

DependencyGraph build_dependency_graph(const Instance& inst);

/// Acyclicity test (Kahn's algorithm).
bool is_monotone(const DependencyGraph& g);

/// Blockers of o that still sit at their start pose in state s.
std::vector<int> goal_obstacles(const DependencyGraph& g, const ArrangementState& s, int o);

/// "i -> j" lines with 1-based ids.
void dump_arcs(std::ostream& os, const DependencyGraph& g);

} // namespace cdr
