#include "cdr/bench.hpp"
#include "cdr/error.hpp"
#include "cdr/executor.hpp"
#include "cdr/instance.hpp"
#include "cdr/plan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cdr;

namespace {

enum Exit { kOk = 0, kParse = 1, kGeneration = 2, kPlanning = 3, kValidation = 4 };

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

struct GenArgs {
    int n = 10;
    double density = 0.3;
    double rho = 0.5;
    std::uint64_t seed = 0;
    std::string out;
};

struct PlanArgs {
    std::string instance;
    std::string planner = "mchs";
    std::uint64_t seed = 0;
    double time_limit = 300.0;
    std::string out;
    std::string dump;
};

struct ValidateArgs {
    std::string instance;
    std::string plan;
};

struct BenchArgs {
    std::string config;
    std::string out;
};

int cmd_gen(const GenArgs& a)
{
    const auto inst = gen_instance(a.n, a.density, a.rho, {1.0, 1.0}, a.seed);
    if (a.out.empty()) {
        std::cout << encode_instance(inst) << "\n";
    } else {
        save_instance(inst, a.out);
    }
    return kOk;
}

int cmd_plan(const PlanArgs& a)
{
    const auto inst = load_instance(a.instance);
    const Planner planner = parse_planner(a.planner);
    BenchRow row{a.instance, inst.size(), density(inst), inst.regions.rho, planner, run_planner(inst, planner, a.seed, a.time_limit)};
    if (!row.result.success) {
        std::cerr << "planning failed: " << row.result.error << "\n";
        std::cout << csv_header() << "\n" << csv_row(row) << "\n";
        return kPlanning;
    }
    if (!a.out.empty()) write_file(a.out, encode_plan(inst, row.result.plan));
    if (!a.dump.empty()) write_file(a.dump, dump_plan(row.result.plan));
    std::cout << csv_header() << "\n" << csv_row(row) << "\n";
    return kOk;
}

int cmd_validate(const ValidateArgs& a)
{
    const auto inst = load_instance(a.instance);
    const auto plan = decode_plan(inst, read_file(a.plan));
    const auto violations = validate_schedule(inst, plan);
    for (const auto& v : violations) std::cout << describe(v) << "\n";
    if (violations.empty()) {
        std::cout << "ok\n";
        return kOk;
    }
    return kValidation;
}

int cmd_bench(const BenchArgs& a)
{
    auto cfg = parse_bench_config(read_file(a.config));
    if (!a.out.empty()) cfg.output = a.out;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw InvalidInput("cannot write " + cfg.output);
    }
    std::ostream& os = cfg.output.empty() ? std::cout : file;
    os << csv_header() << "\n" << std::flush;
    run_bench(cfg, [&](const BenchRow& row) {
        os << csv_row(row) << "\n" << std::flush;
        if (!row.result.success) std::cerr << row.instance_id << " " << to_string(row.planner) << ": " << row.result.error << "\n";
    });
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dual-arm tabletop rearrangement planner"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a random instance");
    g->add_option("--n", gen.n, "Number of objects")->check(CLI::PositiveNumber);
    g->add_option("--density", gen.density, "Footprint density D");
    g->add_option("--rho", gen.rho, "Overlap ratio");
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--out", gen.out, "Instance file (stdout when omitted)");

    PlanArgs plan;
    auto* p = app.add_subcommand("plan", "Plan an instance and report metrics as CSV");
    p->add_option("--instance", plan.instance, "Instance file")->required();
    p->add_option("--planner", plan.planner, "mchs, fchs, split or greedy");
    p->add_option("--seed", plan.seed, "Buffer sampling seed");
    p->add_option("--time-limit", plan.time_limit, "Planning time limit in seconds");
    p->add_option("--out", plan.out, "Plan file (JSON)");
    p->add_option("--dump", plan.dump, "Readable schedule dump");

    ValidateArgs val;
    auto* v = app.add_subcommand("validate", "Replay a plan and list violations");
    v->add_option("--instance", val.instance, "Instance file")->required();
    v->add_option("--plan", val.plan, "Plan file")->required();

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
    b->add_option("--config", bench.config, "JSON config")->required();
    b->add_option("--out", bench.out, "CSV file (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*p) return cmd_plan(plan);
        if (*v) return cmd_validate(val);
        if (*b) return cmd_bench(bench);
    } catch (const GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kGeneration;
    } catch (const PlanningError& e) {
        std::cerr << "planning failed: " << e.what() << "\n";
        return kPlanning;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
