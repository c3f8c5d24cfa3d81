#pragma once

#include "cdr/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cdr {

/// One cylinder. Ids are 1-based and equal to the position in Instance::objects plus one.
struct ObjectSpec {
    int id = 0;
    double radius = 0.0;
    Pose start;
    Pose goal;

    Disc start_disc() const { return {start, radius}; }
    Disc goal_disc() const { return {goal, radius}; }
};

/// A validated rearrangement problem. Construct through new_instance or decode_instance.
struct Instance {
    Workspace workspace;
    RegionSpec regions;
    std::vector<ObjectSpec> objects;

    int size() const { return static_cast<int>(objects.size()); }
    const ObjectSpec& object(int index) const { return objects.at(static_cast<std::size_t>(index)); }
};

/// Input record for new_instance; ids are assigned from list order.
struct ObjectInput {
    double radius = 0.0;
    Pose start;
    Pose goal;
};

/// Validates the arrangement and assigns ids. Throws InvalidInput naming the
/// offending object (or pair) when a footprint leaves the workspace or two
/// start/goal footprints overlap.
Instance new_instance(const Workspace& w, double rho, const std::vector<ObjectInput>& objects);

/// Same instance with every object's start and goal exchanged.
Instance reversed(const Instance& inst);

/// Sum of footprint areas over workspace area.
double density(const Instance& inst);

/// Uniform radius giving density D for n discs in w.
double radius_for_density(int n, double D, const Workspace& w);

inline constexpr int kSamplingAttemptsPerObject = 5000;

/// Rejection-sampled disjoint poses for n discs of radius_for_density(n, D, w).
/// Throws GenerationError when an object exhausts its attempt budget.
std::vector<Pose> gen_random_start(int n, double D, const Workspace& w, std::uint64_t seed);

/// Row-major grid centred in the workspace with spacing 2.2 * radius.
std::vector<Pose> gen_organized_goal(int n, double radius, const Workspace& w);

/// Random start to organized goal, the benchmark instance family.
Instance gen_instance(int n, double D, double rho, const Workspace& w, std::uint64_t seed);

std::string encode_instance(const Instance& inst);
Instance decode_instance(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

} // namespace cdr
