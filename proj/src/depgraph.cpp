#include "cdr/depgraph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

namespace cdr {

DependencyGraph::DependencyGraph(int n) : out_(static_cast<std::size_t>(n)) {}

void DependencyGraph::add_arc(int i, int j)
{
    if (i == j) return;
    auto& v = out_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(v.begin(), v.end(), j);
    if (it == v.end() || *it != j) v.insert(it, j);
}

bool DependencyGraph::has_arc(int i, int j) const
{
    const auto& v = out_[static_cast<std::size_t>(i)];
    return std::binary_search(v.begin(), v.end(), j);
}

std::vector<std::pair<int, int>> DependencyGraph::arcs() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j : blockers(i)) out.emplace_back(i, j);
    return out;
}

std::size_t DependencyGraph::arc_count() const
{
    std::size_t c = 0;
    for (const auto& v : out_) c += v.size();
    return c;
}

DependencyGraph build_dependency_graph(const Instance& inst)
{
    const int n = inst.size();
    DependencyGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && discs_overlap(inst.object(i).goal_disc(), inst.object(j).start_disc())) g.add_arc(i, j);
    return g;
}

bool is_monotone(const DependencyGraph& g)
{
    const int n = g.size();
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j : g.blockers(i)) ++indegree[static_cast<std::size_t>(j)];
    std::queue<int> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[static_cast<std::size_t>(i)] == 0) ready.push(i);
    int removed = 0;
    while (!ready.empty()) {
        const int i = ready.front();
        ready.pop();
        ++removed;
        for (int j : g.blockers(i))
            if (--indegree[static_cast<std::size_t>(j)] == 0) ready.push(j);
    }
    return removed == n;
}

std::vector<int> goal_obstacles(const DependencyGraph& g, const ArrangementState& s, int o)
{
    std::vector<int> out;
    for (int j : g.blockers(o))
        if (s[j] == Status::Start) out.push_back(j);
    return out;
}

void dump_arcs(std::ostream& os, const DependencyGraph& g)
{
    for (auto [i, j] : g.arcs()) os << i + 1 << " -> " << j + 1 << "\n";
}

} // namespace cdr
