#pragma once

#include "cdr/buffers.hpp"
#include "cdr/executor.hpp"
#include "cdr/instance.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cdr {

struct BenchConfig {
    std::vector<int> n_list;
    std::vector<double> D_list;
    std::vector<double> rho_list;
    int trials = 1;
    std::uint64_t seed = 0;
    std::vector<Planner> planners{Planner::Mchs};
    double time_limit_sec = 300.0;
    std::string output;
};

/// Throws InvalidInput for malformed JSON or out-of-range values.
BenchConfig parse_bench_config(const std::string& json_text);

/// Layout seed of one trial; independent of rho so a rho sweep reuses the layout.
std::uint64_t instance_seed(std::uint64_t seed, int n, double D, int trial);
std::string instance_id(int n, double D, int trial);

struct RunResult {
    bool success = false;
    std::string error;
    ConcretePlan plan;
    ExecReport exec;
    /// Conflict-free evaluation of the final plan.
    double fc_makespan = 0.0;
    double plan_time_sec = 0.0;
};

/// Plans with lazy buffer allocation, then evaluates the concrete plan.
/// Planning failures are reported in the result, not thrown.
RunResult run_planner(const Instance& inst, Planner planner, std::uint64_t seed, double time_limit_sec = 300.0);

struct BenchRow {
    std::string instance_id;
    int n = 0;
    double D = 0.0;
    double rho = 0.0;
    Planner planner = Planner::Mchs;
    RunResult result;
};

std::string csv_header();
/// Failed runs leave the metric columns empty.
std::string csv_row(const BenchRow& row, bool with_time = true);

/// Full factorial run in (n, D, trial, rho, planner) order; each row is
/// handed to `sink` as soon as it is ready.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, const std::function<void(const BenchRow&)>& sink = {});

} // namespace cdr
