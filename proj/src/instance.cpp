#include "cdr/instance.hpp"

#include "cdr/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace cdr {

namespace {

std::string describe(const Pose& p)
{
    std::ostringstream s;
    s << "(" << p.x << ", " << p.y << ")";
    return s.str();
}

void check_pairwise_disjoint(const std::vector<ObjectSpec>& objects, bool goals)
{
    for (std::size_t i = 0; i < objects.size(); ++i) {
        for (std::size_t j = i + 1; j < objects.size(); ++j) {
            const auto a = goals ? objects[i].goal_disc() : objects[i].start_disc();
            const auto b = goals ? objects[j].goal_disc() : objects[j].start_disc();
            if (discs_overlap(a, b)) {
                std::ostringstream msg;
                msg << "infeasible " << (goals ? "goal" : "start") << " arrangement: objects "
                    << objects[i].id << " and " << objects[j].id << " overlap";
                throw InvalidInput(msg.str());
            }
        }
    }
}

} // namespace

Instance new_instance(const Workspace& w, double rho, const std::vector<ObjectInput>& objects)
{
    if (!(w.width > 0.0) || !(w.height > 0.0) || !std::isfinite(w.width) || !std::isfinite(w.height))
        throw InvalidInput("workspace width and height must be positive");
    if (objects.empty())
        throw InvalidInput("an instance needs at least one object");

    Instance inst;
    inst.workspace = w;
    inst.regions = make_regions(w, rho);
    inst.objects.reserve(objects.size());
    int id = 1;
    for (const auto& in : objects) {
        ObjectSpec o{id, in.radius, in.start, in.goal};
        if (!(o.radius > 0.0) || !std::isfinite(o.radius)) {
            throw InvalidInput("object " + std::to_string(id) + " has a non-positive radius");
        }
        if (!footprint_in_workspace(o.start_disc(), w))
            throw InvalidInput("object " + std::to_string(id) + " start " + describe(o.start) +
                               " leaves the workspace");
        if (!footprint_in_workspace(o.goal_disc(), w))
            throw InvalidInput("object " + std::to_string(id) + " goal " + describe(o.goal) +
                               " leaves the workspace");
        inst.objects.push_back(o);
        ++id;
    }
    check_pairwise_disjoint(inst.objects, false);
    check_pairwise_disjoint(inst.objects, true);
    return inst;
}

Instance reversed(const Instance& inst)
{
    Instance out = inst;
    for (auto& o : out.objects) std::swap(o.start, o.goal);
    return out;
}

double density(const Instance& inst)
{
    double area = 0.0;
    for (const auto& o : inst.objects) area += std::numbers::pi * o.radius * o.radius;
    return area / inst.workspace.area();
}

double radius_for_density(int n, double D, const Workspace& w)
{
    if (n < 1) throw InvalidInput("object count must be at least 1");
    if (!(D > 0.0 && D < 1.0)) throw InvalidInput("density must lie in (0,1)");
    return std::sqrt(D * w.area() / (n * std::numbers::pi));
}

std::vector<Pose> gen_random_start(int n, double D, const Workspace& w, std::uint64_t seed)
{
    const double r = radius_for_density(n, D, w);
    if (2.0 * r > w.width || 2.0 * r > w.height)
        throw GenerationError("objects of radius " + std::to_string(r) + " do not fit the workspace");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(r, w.width - r);
    std::uniform_real_distribution<double> uy(r, w.height - r);

    std::vector<Pose> poses;
    poses.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kSamplingAttemptsPerObject && !placed; ++attempt) {
            const Pose p{ux(rng), uy(rng)};
            placed = true;
            for (const auto& q : poses) {
                if (discs_overlap({p, r}, {q, r})) {
                    placed = false;
                    break;
                }
            }
            if (placed) poses.push_back(p);
        }
        if (!placed) {
            std::ostringstream msg;
            msg << "start sampling failed for object " << i + 1 << " of " << n << " after "
                << kSamplingAttemptsPerObject << " attempts (D=" << D << ")";
            throw GenerationError(msg.str());
        }
    }
    return poses;
}

std::vector<Pose> gen_organized_goal(int n, double radius, const Workspace& w)
{
    if (n < 1) throw InvalidInput("object count must be at least 1");
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;
    const double spacing = 2.0 * radius * 1.1;
    const double grid_w = (cols - 1) * spacing;
    const double grid_h = (rows - 1) * spacing;
    if (grid_w + 2.0 * radius > w.width || grid_h + 2.0 * radius > w.height) {
        std::ostringstream msg;
        msg << "a " << rows << "x" << cols << " goal grid with radius " << radius
            << " does not fit the workspace";
        throw GenerationError(msg.str());
    }
    const double x0 = (w.width - grid_w) / 2.0;
    const double y0 = (w.height - grid_h) / 2.0;
    std::vector<Pose> poses;
    poses.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int row = i / cols;
        const int col = i % cols;
        poses.push_back({x0 + col * spacing, y0 + row * spacing});
    }
    return poses;
}

Instance gen_instance(int n, double D, double rho, const Workspace& w, std::uint64_t seed)
{
    const double r = radius_for_density(n, D, w);
    const auto starts = gen_random_start(n, D, w, seed);
    const auto goals = gen_organized_goal(n, r, w);
    std::vector<ObjectInput> objects;
    objects.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) objects.push_back({r, starts[i], goals[i]});
    return new_instance(w, rho, objects);
}

namespace {

using nlohmann::json;

json pose_json(const Pose& p) { return json::array({p.x, p.y}); }

template <typename T>
T required(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(std::string("instance document is missing \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("instance field \"") + key + "\" has the wrong type: " + e.what());
    }
}

Pose pose_from(const json& j, const char* key)
{
    const auto arr = required<std::vector<double>>(j, key);
    if (arr.size() != 2) throw InvalidInput(std::string("pose \"") + key + "\" must have two coordinates");
    return {arr[0], arr[1]};
}

} // namespace

std::string encode_instance(const Instance& inst)
{
    json doc;
    doc["workspace"] = {{"width", inst.workspace.width}, {"height", inst.workspace.height}};
    doc["rho"] = inst.regions.rho;
    json objects = json::array();
    for (const auto& o : inst.objects) {
        objects.push_back(
            {{"id", o.id}, {"radius", o.radius}, {"start", pose_json(o.start)}, {"goal", pose_json(o.goal)}});
    }
    doc["objects"] = std::move(objects);
    // nlohmann::json writes doubles with round-trip precision (17 significant digits).
    return doc.dump(2) + "\n";
}

Instance decode_instance(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed instance document: ") + e.what());
    }
    const auto ws = required<json>(doc, "workspace");
    const Workspace w{required<double>(ws, "width"), required<double>(ws, "height")};
    const double rho = required<double>(doc, "rho");
    const auto objs = required<json>(doc, "objects");
    if (!objs.is_array()) throw InvalidInput("\"objects\" must be an array");

    std::vector<ObjectInput> objects;
    int expected_id = 1;
    for (const auto& o : objs) {
        if (o.contains("id") && required<int>(o, "id") != expected_id)
            throw InvalidInput("object ids must be 1..n in list order; expected " + std::to_string(expected_id));
        objects.push_back({required<double>(o, "radius"), pose_from(o, "start"), pose_from(o, "goal")});
        ++expected_id;
    }
    return new_instance(w, rho, objects);
}

Instance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open instance file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return decode_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write instance file " + path);
    out << encode_instance(inst);
}

} // namespace cdr
