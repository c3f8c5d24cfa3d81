#include "cdr/bench.hpp"

#include "cdr/error.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>

namespace cdr {

namespace {

std::uint64_t mix(std::uint64_t x)
{
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

template <typename T>
std::vector<T> read_list(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
        throw InvalidInput(std::string("config: '") + key + "' must be a non-empty list");
    return j.at(key).get<std::vector<T>>();
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

BenchConfig parse_bench_config(const std::string& json_text)
{
    BenchConfig cfg;
    try {
        const auto j = nlohmann::json::parse(json_text);
        if (!j.is_object()) throw InvalidInput("config must be a JSON object");
        cfg.n_list = read_list<int>(j, "n_list");
        cfg.D_list = read_list<double>(j, "D_list");
        cfg.rho_list = read_list<double>(j, "rho_list");
        cfg.trials = j.value("trials", 1);
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.time_limit_sec = j.value("time_limit_sec", 300.0);
        cfg.output = j.value("output", std::string{});
        if (j.contains("planners")) {
            cfg.planners.clear();
            for (const auto& name : read_list<std::string>(j, "planners")) cfg.planners.push_back(parse_planner(name));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    if (cfg.trials < 1) throw InvalidInput("config: trials must be at least 1");
    if (!(cfg.time_limit_sec > 0.0)) throw InvalidInput("config: time_limit_sec must be positive");
    for (int n : cfg.n_list)
        if (n < 1) throw InvalidInput("config: n must be at least 1");
    for (double d : cfg.D_list)
        if (!(d > 0.0 && d < 1.0)) throw InvalidInput("config: D must lie in (0, 1)");
    for (double r : cfg.rho_list)
        if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput("config: rho must lie in [0, 1]");
    return cfg;
}

std::uint64_t instance_seed(std::uint64_t seed, int n, double D, int trial)
{
    const auto d = static_cast<std::uint64_t>(std::llround(D * 1e6));
    return mix(mix(mix(mix(seed) ^ static_cast<std::uint64_t>(n)) ^ d) ^ static_cast<std::uint64_t>(trial));
}

std::string instance_id(int n, double D, int trial)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "n%d-D%.3f-t%d", n, D, trial);
    return buf;
}

RunResult run_planner(const Instance& inst, Planner planner, std::uint64_t seed, double time_limit_sec)
{
    RunResult out;
    const auto cp = default_cost_params(inst);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        LazyOptions opts;
        opts.planner = planner;
        opts.seed = seed;
        opts.time_limit_sec = time_limit_sec;
        out.plan = plan_with_lazy_buffers(inst, cp, opts);
        out.plan_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.exec = estimate_execution(inst, cp, out.plan);
        ExecOptions point;
        point.ee_radius_fraction = 0.0;
        out.fc_makespan = estimate_execution(inst, cp, out.plan, point).makespan_sec;
        out.success = true;
    } catch (const std::exception& e) {
        out.plan_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.error = e.what();
    }
    return out;
}

std::string csv_header()
{
    return "instance_id,n,D,rho,planner,success,mc_steps,fc_makespan,exec_makespan,conflict_proportion,handoffs,buffer_moves,"
           "plan_time_sec";
}

std::string csv_row(const BenchRow& row, bool with_time)
{
    const auto& r = row.result;
    std::string s = row.instance_id + "," + std::to_string(row.n) + "," + fmt(row.D) + "," + fmt(row.rho) + "," +
                    to_string(row.planner) + "," + (r.success ? "1" : "0") + ",";
    if (r.success) {
        s += (r.plan.mc_steps >= 0 ? std::to_string(r.plan.mc_steps) : "") + "," + fmt(r.fc_makespan) + "," +
             fmt(r.exec.makespan_sec) + "," + fmt(r.exec.conflict_proportion) + "," + std::to_string(r.exec.handoff_count) +
             "," + std::to_string(r.exec.buffer_move_count) + ",";
    } else {
        s += ",,,,,,";
    }
    if (with_time) s += fmt(r.plan_time_sec);
    return s;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg, const std::function<void(const BenchRow&)>& sink)
{
    std::vector<BenchRow> rows;
    const Workspace ws{1.0, 1.0};
    for (int n : cfg.n_list) {
        for (double D : cfg.D_list) {
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const auto seed = instance_seed(cfg.seed, n, D, trial);
                for (double rho : cfg.rho_list) {
                    std::optional<Instance> inst;
                    std::string gen_error;
                    try {
                        inst = gen_instance(n, D, rho, ws, seed);
                    } catch (const GenerationError& e) {
                        gen_error = e.what();
                    }
                    for (Planner p : cfg.planners) {
                        BenchRow row{instance_id(n, D, trial), n, D, rho, p, {}};
                        if (inst) {
                            row.result = run_planner(*inst, p, seed, cfg.time_limit_sec);
                        } else {
                            row.result.error = gen_error;
                        }
                        if (sink) sink(row);
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

} // namespace cdr
