// spni command line: generate instances, solve them, run baselines, export
// QUBOs and run benchmark sweeps. Exit codes: 0 success, 2 usage,
// 3 input/parse, 4 capacity.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spni/bench.hpp"
#include "spni/instance.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitCapacity = 4;

spni::SubSolverKind parse_subsolver(const std::string& name) {
    if (name == "bb") return spni::SubSolverKind::bb();
    if (name == "qubo-exhaustive") return spni::SubSolverKind::exhaustive();
    if (name == "qubo-anneal") return spni::SubSolverKind::annealed();
    throw CLI::ValidationError("--subsolver", "expected bb, qubo-exhaustive or qubo-anneal");
}

std::vector<std::pair<int, int>> parse_sizes(const std::string& text) {
    std::vector<std::pair<int, int>> sizes;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        int rows = 0, cols = 0;
        const auto x = token.find('x');
        if (x == std::string::npos) {
            rows = cols = std::stoi(token);
        } else {
            rows = std::stoi(token.substr(0, x));
            cols = std::stoi(token.substr(x + 1));
        }
        sizes.emplace_back(rows, cols);
    }
    if (sizes.empty())
        throw CLI::ValidationError("--sizes", "expected a comma-separated list like 5x5,7x7");
    return sizes;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        const auto dash = token.find('-');
        if (dash == std::string::npos) {
            seeds.push_back(std::stoull(token));
        } else {
            const std::uint64_t lo = std::stoull(token.substr(0, dash));
            const std::uint64_t hi = std::stoull(token.substr(dash + 1));
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        }
    }
    if (seeds.empty())
        throw CLI::ValidationError("--seeds", "expected e.g. 0-9 or 1,2,3");
    return seeds;
}

void write_solution_file(const std::string& path, const spni::InterdictionSet& solution,
                         spni::Length length) {
    ordered_json doc;
    doc["interdicted"] = solution.ids();
    doc["length"] = length;
    doc["budget_used"] = solution.size();
    std::ofstream out(path);
    if (!out) throw spni::IoError("cannot open for writing: " + path);
    out << doc.dump(2) << "\n";
}

int cmd_generate(int rows, int cols, std::uint64_t seed, std::optional<int> budget,
                 std::optional<double> budget_frac, const std::string& out_path) {
    spni::ProblemInstance inst = spni::generate_grid(rows, cols, seed);
    const int arc_count = static_cast<int>(inst.network.arcs.size());
    if (budget)
        inst.budget = *budget;
    else if (budget_frac)
        inst.budget = std::max<int>(1, static_cast<int>(std::llround(*budget_frac * arc_count)));
    const auto violations = spni::validate(inst);
    if (!violations.empty()) throw spni::InputError("generated instance invalid: " + violations[0]);
    spni::write_instance(inst, out_path);
    std::cout << "nodes " << inst.network.node_count << " arcs " << arc_count << " budget "
              << inst.budget << "\n";
    return 0;
}

int cmd_solve(const std::string& instance_path, int n, int lambda, const std::string& subsolver,
              std::uint64_t seed, int workers, const std::string& trace_path,
              const std::string& out_path) {
    const spni::ProblemInstance inst = spni::read_instance(instance_path);
    spni::RefineConfig cfg;
    cfg.n = n;
    cfg.lambda = lambda;
    cfg.subsolver = parse_subsolver(subsolver);
    cfg.seed = seed;
    cfg.workers = workers;
    auto [solution, trace] = spni::solve_spni(inst, cfg);
    const spni::Length length = *spni::calc_length(inst, solution);
    if (!out_path.empty()) write_solution_file(out_path, solution, length);
    if (!trace_path.empty()) trace.write_csv(trace_path);
    std::cout << "length " << length << " interdicted " << solution.size() << "/" << inst.budget
              << "\n";
    return 0;
}

int cmd_baseline(const std::string& instance_path, double timeout_s, const std::string& mode,
                 const std::string& out_path) {
    const spni::ProblemInstance inst = spni::read_instance(instance_path);
    spni::InterdictionSet best;
    spni::Length value = 0;
    bool optimal = true;
    if (mode == "bruteforce") {
        auto res = spni::brute_force_optimum(inst);
        best = res.best;
        value = res.value;
    } else if (mode == "bb") {
        std::optional<std::chrono::milliseconds> timeout;
        if (timeout_s >= 0)
            timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_s * 1000));
        auto res = spni::full_bb(inst, timeout);
        best = res.best;
        value = res.value;
        optimal = res.optimal;
    } else {
        throw CLI::ValidationError("--mode", "expected bruteforce or bb");
    }
    if (!out_path.empty()) write_solution_file(out_path, best, value);
    std::cout << "f=" << value << " optimal=" << (optimal ? "true" : "false") << "\n";
    return 0;
}

int cmd_export_qubo(const std::string& instance_path, const std::string& sub,
                    const std::string& sense_name, const std::string& out_path) {
    const spni::ProblemInstance inst = spni::read_instance(instance_path);
    const spni::ExportSense sense =
        sense_name == "min" ? spni::ExportSense::Min : spni::ExportSense::Max;
    spni::Qubo q;
    if (sub.empty()) {
        q = spni::build_full_qubo(inst, spni::default_penalty(inst));
    } else {
        // "<node list>,<sink>", e.g. "1 2,2"
        const auto comma = sub.rfind(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--sub", "expected \"<node list>,<sink>\"");
        std::vector<spni::NodeId> block;
        std::istringstream nodes(sub.substr(0, comma));
        int v;
        while (nodes >> v) block.push_back(v);
        const spni::NodeId sink = std::stoi(sub.substr(comma + 1));
        const auto spec = spni::make_spec(inst, block, sink, spni::InterdictionSet());
        q = spni::build_sub_qubo(spec, spni::default_penalty(inst));
    }
    spni::export_qubo(q, out_path, sense);
    std::cout << "vars " << q.var_count << " terms " << q.linear.size() + q.quadratic.size()
              << "\n";
    return 0;
}

int cmd_bench(const std::string& sizes, double budget_frac, std::optional<int> budget, int n,
              int lambda, const std::string& seeds, const std::string& subsolver,
              const std::string& timeout_mode, std::int64_t timeout_ms, int workers,
              const std::string& out_path) {
    spni::BenchConfig config;
    config.sizes = parse_sizes(sizes);
    config.budget_fraction = budget_frac;
    if (budget) config.fixed_budget = *budget;
    config.n = n;
    config.lambda = lambda;
    config.seeds = parse_seeds(seeds);
    config.subsolver = parse_subsolver(subsolver);
    config.workers = workers;
    if (timeout_mode == "oracle")
        config.mode = spni::BaselineMode::Oracle;
    else if (timeout_mode == "matched")
        config.mode = spni::BaselineMode::Matched;
    else if (timeout_mode == "fixed")
        config.mode = spni::BaselineMode::Fixed;
    else
        throw CLI::ValidationError("--timeout-mode", "expected oracle, matched or fixed");
    config.fixed_timeout_ms = timeout_ms;

    const auto rows = spni::run_benchmark(config);
    const std::string csv = spni::bench_csv(rows);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out) throw spni::IoError("cannot open for writing: " + out_path);
        out << csv;
        std::cout << "rows " << rows.size() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shortest path network interdiction toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a random grid instance");
    int rows = 0, cols = 0;
    std::uint64_t gen_seed = 0;
    std::optional<int> budget;
    std::optional<double> budget_frac;
    std::string gen_out;
    gen->add_option("--rows", rows, "grid rows")->required()->check(CLI::Range(2, 1 << 20));
    gen->add_option("--cols", cols, "grid cols")->required()->check(CLI::Range(2, 1 << 20));
    gen->add_option("--seed", gen_seed, "generator seed");
    auto* bopt = gen->add_option("--budget", budget, "interdiction budget");
    gen->add_option("--budget-frac", budget_frac, "budget as a fraction of |A| (floored at 1)")
        ->excludes(bopt);
    gen->add_option("--out", gen_out, "instance file to write")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "run the decomposition refinement solver");
    std::string solve_instance, solve_trace, solve_out, solve_subsolver = "bb";
    int solve_n = 20, solve_lambda = 50, solve_workers = 1;
    std::uint64_t solve_seed = 0;
    solve->add_option("--instance", solve_instance, "instance file")->required();
    solve->add_option("--n", solve_n, "target block size")->check(CLI::PositiveNumber);
    solve->add_option("--lambda", solve_lambda, "refinement iterations")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--subsolver", solve_subsolver, "bb | qubo-exhaustive | qubo-anneal");
    solve->add_option("--seed", solve_seed, "run seed");
    solve->add_option("--workers", solve_workers, "sweep worker threads")
        ->check(CLI::PositiveNumber);
    solve->add_option("--trace-out", solve_trace, "iteration trace CSV");
    solve->add_option("--out", solve_out, "solution file to write");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "full-problem baseline solvers");
    std::string base_instance, base_mode = "bruteforce", base_out;
    double base_timeout = -1;
    baseline->add_option("--instance", base_instance, "instance file")->required();
    baseline->add_option("--timeout", base_timeout, "seconds before bb returns its incumbent");
    baseline->add_option("--mode", base_mode, "bruteforce | bb");
    baseline->add_option("--out", base_out, "solution file to write");

    // export-qubo
    auto* exportq = app.add_subcommand("export-qubo", "emit a QUBO text file");
    std::string q_instance, q_sub, q_sense = "max", q_out;
    exportq->add_option("--instance", q_instance, "instance file")->required();
    exportq->add_option("--sub", q_sub, "subproblem \"<node list>,<sink>\" (default: full)");
    exportq->add_option("--sense", q_sense, "max | min");
    exportq->add_option("--out", q_out, "QUBO file to write")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark the solver against a baseline");
    std::string bench_sizes, bench_seeds = "0-9", bench_subsolver = "bb",
                bench_timeout_mode = "oracle", bench_out;
    double bench_frac = 0.0025;
    std::optional<int> bench_budget;
    int bench_n = 20, bench_lambda = 50, bench_workers = 1;
    std::int64_t bench_timeout_ms = 60000;
    bench->add_option("--sizes", bench_sizes, "grids, e.g. 5x5,7x7")->required();
    bench->add_option("--budget-frac", bench_frac, "budget as a fraction of |A|");
    bench->add_option("--budget", bench_budget, "fixed budget (overrides the fraction)");
    bench->add_option("--n", bench_n, "target block size");
    bench->add_option("--lambda", bench_lambda, "refinement iterations");
    bench->add_option("--seeds", bench_seeds, "e.g. 0-9 or 1,5,7");
    bench->add_option("--subsolver", bench_subsolver, "bb | qubo-exhaustive | qubo-anneal");
    bench->add_option("--timeout-mode", bench_timeout_mode, "oracle | matched | fixed");
    bench->add_option("--timeout-ms", bench_timeout_ms, "timeout for --timeout-mode fixed");
    bench->add_option("--workers", bench_workers, "sweep worker threads");
    bench->add_option("--out", bench_out, "CSV file to write (- for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(rows, cols, gen_seed, budget, budget_frac, gen_out);
        if (solve->parsed())
            return cmd_solve(solve_instance, solve_n, solve_lambda, solve_subsolver, solve_seed,
                             solve_workers, solve_trace, solve_out);
        if (baseline->parsed())
            return cmd_baseline(base_instance, base_timeout, base_mode, base_out);
        if (exportq->parsed())
            return cmd_export_qubo(q_instance, q_sub, q_sense, q_out);
        if (bench->parsed())
            return cmd_bench(bench_sizes, bench_frac, bench_budget, bench_n, bench_lambda,
                             bench_seeds, bench_subsolver, bench_timeout_mode, bench_timeout_ms,
                             bench_workers, bench_out);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spni::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const spni::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
