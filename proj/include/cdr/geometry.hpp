#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace cdr {

struct Pose {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Axis-aligned table rectangle [0,width] x [0,height].
struct Workspace {
    double width = 1.0;
    double height = 1.0;

    double area() const { return width * height; }
    double diagonal() const;
};

struct Disc {
    Pose center;
    double radius = 0.0;
};

enum class Arm : std::uint8_t { R1 = 0, R2 = 1 };

inline constexpr std::array<Arm, 2> kArms{Arm::R1, Arm::R2};

inline Arm other(Arm a) { return a == Arm::R1 ? Arm::R2 : Arm::R1; }
inline int index(Arm a) { return static_cast<int>(a); }
std::string to_string(Arm a);

/// Small bitset over the two arms.
class ArmSet {
public:
    constexpr ArmSet() = default;
    static constexpr ArmSet both() { return ArmSet(3); }
    static constexpr ArmSet only(Arm a) { return ArmSet(std::uint8_t{1} << static_cast<int>(a)); }

    constexpr bool contains(Arm a) const { return (bits_ >> static_cast<int>(a)) & 1U; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool is_both() const { return bits_ == 3; }
    constexpr int size() const { return (bits_ & 1U) + ((bits_ >> 1) & 1U); }
    /// The single member; only meaningful when size() == 1.
    constexpr Arm sole() const { return bits_ == 2 ? Arm::R2 : Arm::R1; }

    constexpr ArmSet operator&(ArmSet o) const { return ArmSet(bits_ & o.bits_); }
    constexpr ArmSet operator|(ArmSet o) const { return ArmSet(bits_ | o.bits_); }
    friend constexpr bool operator==(ArmSet, ArmSet) = default;

private:
    constexpr explicit ArmSet(unsigned bits) : bits_(static_cast<std::uint8_t>(bits)) {}
    std::uint8_t bits_ = 0;
};

/// Reachable regions of the two arms: S(r1) = [0, x_right_of_r1] x [0,h] and
/// S(r2) = [x_left_of_r2, w] x [0,h], plus the fixed handoff and rest poses.
struct RegionSpec {
    double rho = 0.0;
    double x_right_of_r1 = 0.0;
    double x_left_of_r2 = 0.0;
    Pose handoff_projection;
    Pose rest_pose_r1;
    Pose rest_pose_r2;

    const Pose& rest_pose(Arm a) const { return a == Arm::R1 ? rest_pose_r1 : rest_pose_r2; }
    /// x-interval of the arm's region.
    double x_min(Arm a) const { return a == Arm::R1 ? 0.0 : x_left_of_r2; }
    double x_max(Arm a, const Workspace& w) const { return a == Arm::R1 ? x_right_of_r1 : w.width; }
};

double dist(const Pose& a, const Pose& b);

/// Strict: tangent discs do not overlap.
bool discs_overlap(const Disc& a, const Disc& b);

RegionSpec make_regions(const Workspace& w, double rho);

/// Arms whose region contains the pose's center (boundaries inclusive).
ArmSet reachable_arms(const RegionSpec& rs, const Pose& p);

/// Like reachable_arms but throws InvalidInput when p lies outside the workspace.
ArmSet reachable_arms(const RegionSpec& rs, const Workspace& w, const Pose& p);

bool footprint_in_workspace(const Disc& d, const Workspace& w);

bool in_workspace(const Pose& p, const Workspace& w);

/// Diagonal of the arm's reachable rectangle; the travel charged for an
/// unallocated buffer leg.
double region_diagonal(const RegionSpec& rs, const Workspace& w, Arm a);

} // namespace cdr
