#include "cdr/geometry.hpp"

#include "cdr/error.hpp"

#include <cmath>
#include <sstream>

namespace cdr {

double Workspace::diagonal() const { return std::hypot(width, height); }

std::string to_string(Arm a) { return a == Arm::R1 ? "r1" : "r2"; }

double dist(const Pose& a, const Pose& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool discs_overlap(const Disc& a, const Disc& b)
{
    return dist(a.center, b.center) < a.radius + b.radius;
}

RegionSpec make_regions(const Workspace& w, double rho)
{
    if (!(rho >= 0.0 && rho <= 1.0)) {
        std::ostringstream msg;
        msg << "overlap ratio must lie in [0,1], got " << rho;
        throw InvalidInput(msg.str());
    }
    RegionSpec rs;
    rs.rho = rho;
    rs.x_right_of_r1 = w.width * (1.0 + rho) / 2.0;
    rs.x_left_of_r2 = w.width * (1.0 - rho) / 2.0;
    rs.handoff_projection = {w.width / 2.0, w.height / 2.0};
    rs.rest_pose_r1 = {0.0, w.height / 2.0};
    rs.rest_pose_r2 = {w.width, w.height / 2.0};
    return rs;
}

ArmSet reachable_arms(const RegionSpec& rs, const Pose& p)
{
    ArmSet out;
    if (p.x <= rs.x_right_of_r1) out = out | ArmSet::only(Arm::R1);
    if (p.x >= rs.x_left_of_r2) out = out | ArmSet::only(Arm::R2);
    return out;
}

ArmSet reachable_arms(const RegionSpec& rs, const Workspace& w, const Pose& p)
{
    if (!in_workspace(p, w)) {
        std::ostringstream msg;
        msg << "pose (" << p.x << ", " << p.y << ") lies outside the workspace";
        throw InvalidInput(msg.str());
    }
    return reachable_arms(rs, p);
}

bool in_workspace(const Pose& p, const Workspace& w)
{
    return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.x <= w.width && p.y >= 0.0 &&
           p.y <= w.height;
}

bool footprint_in_workspace(const Disc& d, const Workspace& w)
{
    const auto& c = d.center;
    return c.x - d.radius >= 0.0 && c.x + d.radius <= w.width && c.y - d.radius >= 0.0 &&
           c.y + d.radius <= w.height;
}

double region_diagonal(const RegionSpec& rs, const Workspace& w, Arm a)
{
    return std::hypot(rs.x_max(a, w) - rs.x_min(a), w.height);
}

} // namespace cdr
