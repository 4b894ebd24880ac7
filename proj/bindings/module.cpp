#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spni/bench.hpp"
#include "spni/instance.hpp"

namespace py = pybind11;
using namespace spni;

PYBIND11_MODULE(_core, m) {
    m.doc() = "shortest path network interdiction: decomposition refinement solver";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnreachableError>(m, "UnreachableError", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Arc>(m, "Arc")
        .def(py::init([](NodeId tail, NodeId head, Length c, Length d) {
                 return Arc{tail, head, c, d};
             }),
             py::arg("tail"), py::arg("head"), py::arg("c"), py::arg("d"))
        .def_readwrite("tail", &Arc::tail)
        .def_readwrite("head", &Arc::head)
        .def_readwrite("c", &Arc::c)
        .def_readwrite("d", &Arc::d)
        .def("__repr__", [](const Arc& a) {
            return "Arc(" + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                   ", c=" + std::to_string(a.c) + ", d=" + std::to_string(a.d) + ")";
        });

    py::class_<Network>(m, "Network")
        .def(py::init<>())
        .def_readwrite("node_count", &Network::node_count)
        .def_readwrite("arcs", &Network::arcs)
        .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def(py::init<>())
        .def_readwrite("network", &ProblemInstance::network)
        .def_readwrite("source", &ProblemInstance::source)
        .def_readwrite("sink", &ProblemInstance::sink)
        .def_readwrite("budget", &ProblemInstance::budget)
        .def("__eq__",
             [](const ProblemInstance& a, const ProblemInstance& b) { return a == b; });

    py::class_<InterdictionSet>(m, "InterdictionSet")
        .def(py::init<>())
        .def(py::init<std::vector<ArcId>>(), py::arg("ids"))
        .def("contains", &InterdictionSet::contains)
        .def("insert", &InterdictionSet::insert)
        .def("erase", &InterdictionSet::erase)
        .def("__len__", &InterdictionSet::size)
        .def_property_readonly("ids", &InterdictionSet::ids)
        .def("__eq__",
             [](const InterdictionSet& a, const InterdictionSet& b) { return a == b; })
        .def("__repr__", [](const InterdictionSet& s) {
            std::string out = "InterdictionSet([";
            for (std::size_t i = 0; i < s.ids().size(); ++i)
                out += (i ? "," : "") + std::to_string(s.ids()[i]);
            return out + "])";
        });

    // graph queries
    m.def("calc_length", &calc_length, py::arg("inst"), py::arg("interdicted"));
    m.def("calc_path", &calc_path, py::arg("inst"), py::arg("interdicted"));
    m.def("all_labels", &all_labels, py::arg("inst"), py::arg("interdicted"));
    m.def("is_weakly_connected", &is_weakly_connected, py::arg("net"), py::arg("nodes"));
    m.def("pi_upper_bound", &pi_upper_bound, py::arg("inst"));

    // instances
    m.def("generate_grid", &generate_grid, py::arg("rows"), py::arg("cols"), py::arg("seed"));
    m.def("validate", &validate, py::arg("inst"));
    m.def("write_instance", &write_instance, py::arg("inst"), py::arg("path"));
    m.def("read_instance", &read_instance, py::arg("path"));
    m.def("instance_to_json", &instance_to_json, py::arg("inst"));
    m.def("instance_from_json", &instance_from_json, py::arg("text"));

    // partitioning
    py::class_<Partitioning>(m, "Partitioning")
        .def(py::init<>())
        .def_readwrite("node_count", &Partitioning::node_count)
        .def_readwrite("blocks", &Partitioning::blocks)
        .def("__eq__", [](const Partitioning& a, const Partitioning& b) { return a == b; });
    m.def(
        "partition",
        [](const Network& net, int n, std::uint64_t seed) { return partition(net, n, seed); },
        py::arg("net"), py::arg("n"), py::arg("seed"));
    m.def("find_block", &find_block, py::arg("partitioning"), py::arg("node"));

    // subproblems
    py::class_<SubproblemSpec>(m, "SubproblemSpec")
        .def_readonly("nodes", &SubproblemSpec::nodes)
        .def_readonly("local_sink", &SubproblemSpec::local_sink)
        .def_readonly("base", &SubproblemSpec::base)
        .def_readonly("gamma", &SubproblemSpec::gamma)
        .def_readonly("local_budget", &SubproblemSpec::local_budget)
        .def_readonly("internal", &SubproblemSpec::internal)
        .def_readonly("entering", &SubproblemSpec::entering)
        .def_readonly("label_bound", &SubproblemSpec::label_bound)
        .def("scope_arcs", &SubproblemSpec::scope_arcs)
        .def("in_block", &SubproblemSpec::in_block);
    m.def("make_spec", &make_spec, py::arg("inst"), py::arg("block"), py::arg("local_sink"),
          py::arg("base"), py::keep_alive<0, 1>());
    m.def("local_distance", &local_distance, py::arg("spec"), py::arg("local_x"));

    // qubo
    py::enum_<VarKind>(m, "VarKind")
        .value("X", VarKind::X)
        .value("Pi", VarKind::Pi)
        .value("M", VarKind::M)
        .value("Slack", VarKind::Slack);
    py::class_<VarRole>(m, "VarRole")
        .def_readonly("kind", &VarRole::kind)
        .def_readonly("subject", &VarRole::subject)
        .def_readonly("bit", &VarRole::bit)
        .def_readonly("weight", &VarRole::weight);
    py::class_<PenaltyTerm>(m, "PenaltyTerm")
        .def_readonly("arc", &PenaltyTerm::arc)
        .def_readonly("constant", &PenaltyTerm::constant)
        .def_readonly("terms", &PenaltyTerm::terms);
    py::class_<IntegerEncoding>(m, "IntegerEncoding")
        .def_readonly("upper_bound", &IntegerEncoding::upper_bound)
        .def_readonly("coefficients", &IntegerEncoding::coefficients);
    py::class_<Qubo>(m, "Qubo")
        .def_readonly("var_count", &Qubo::var_count)
        .def_readonly("linear", &Qubo::linear)
        .def_readonly("quadratic", &Qubo::quadratic)
        .def_readonly("constant", &Qubo::constant)
        .def_readonly("registry", &Qubo::registry)
        .def_readonly("penalties", &Qubo::penalties)
        .def_readonly("penalty_weight", &Qubo::penalty_weight)
        .def_readonly("folded_source", &Qubo::folded_source)
        .def("evaluate", &Qubo::evaluate, py::arg("bits"));
    py::class_<DecodedAssignment>(m, "DecodedAssignment")
        .def_readonly("x", &DecodedAssignment::x)
        .def_readonly("pi", &DecodedAssignment::pi)
        .def_readonly("residuals", &DecodedAssignment::residuals)
        .def("feasible", &DecodedAssignment::feasible);
    py::enum_<ExportSense>(m, "ExportSense")
        .value("Max", ExportSense::Max)
        .value("Min", ExportSense::Min);
    m.def("encode_bounded", &encode_bounded, py::arg("ub"));
    m.def("default_penalty", &default_penalty, py::arg("inst"));
    m.def("build_full_qubo", &build_full_qubo, py::arg("inst"), py::arg("penalty"));
    m.def("build_sub_qubo", &build_sub_qubo, py::arg("spec"), py::arg("penalty"));
    m.def("decode", &decode, py::arg("qubo"), py::arg("bits"));
    m.def("export_qubo", &export_qubo, py::arg("qubo"), py::arg("path"), py::arg("sense"));
    m.def("read_qubo", &read_qubo, py::arg("path"));
    m.def("qubo_to_text", &qubo_to_text, py::arg("qubo"), py::arg("sense"));
    m.def("qubo_from_text", &qubo_from_text, py::arg("text"));

    // subsolvers
    py::class_<AnnealParams>(m, "AnnealParams")
        .def(py::init<>())
        .def_readwrite("sweeps", &AnnealParams::sweeps)
        .def_readwrite("restarts", &AnnealParams::restarts)
        .def_readwrite("t_start", &AnnealParams::t_start)
        .def_readwrite("t_end", &AnnealParams::t_end);
    py::class_<SubSolverKind> kind(m, "SubSolverKind");
    py::enum_<SubSolverKind::Backend>(kind, "Backend")
        .value("BbExact", SubSolverKind::Backend::BbExact)
        .value("QuboExhaustive", SubSolverKind::Backend::QuboExhaustive)
        .value("QuboAnneal", SubSolverKind::Backend::QuboAnneal);
    kind.def(py::init<>())
        .def_readwrite("backend", &SubSolverKind::backend)
        .def_readwrite("max_bits", &SubSolverKind::max_bits)
        .def_readwrite("fallback_to_bb", &SubSolverKind::fallback_to_bb)
        .def_readwrite("anneal", &SubSolverKind::anneal)
        .def_static("bb", &SubSolverKind::bb)
        .def_static("exhaustive", &SubSolverKind::exhaustive, py::arg("max_bits") = 30,
                    py::arg("fallback") = true)
        .def_static("annealed", &SubSolverKind::annealed, py::arg("params") = AnnealParams{});
    py::class_<BbResult>(m, "BbResult")
        .def_readonly("local_x", &BbResult::local_x)
        .def_readonly("value", &BbResult::value)
        .def_readonly("optimal", &BbResult::optimal);
    m.def(
        "bb_exact", [](const SubproblemSpec& spec) { return bb_exact(spec); }, py::arg("spec"));
    m.def("qubo_argmax", &qubo_argmax, py::arg("qubo"), py::arg("max_bits") = 30);
    m.def(
        "qubo_anneal",
        [](const Qubo& q, const AnnealParams& params, std::uint64_t seed) {
            SplitMix64 rng(seed);
            return qubo_anneal(q, params, rng);
        },
        py::arg("qubo"), py::arg("params"), py::arg("seed"));
    py::class_<AnnealResult>(m, "AnnealResult")
        .def_readonly("best", &AnnealResult::best)
        .def_readonly("best_value", &AnnealResult::best_value)
        .def_readonly("best_feasible", &AnnealResult::best_feasible)
        .def_readonly("best_feasible_value", &AnnealResult::best_feasible_value);
    m.def(
        "solve_sub",
        [](const SubproblemSpec& spec, const SubSolverKind& kind_, std::uint64_t seed) {
            return solve_sub(spec, kind_, seed);
        },
        py::arg("spec"), py::arg("kind"), py::arg("seed") = 0);

    // refinement
    py::class_<RefineConfig>(m, "RefineConfig")
        .def(py::init<>())
        .def_readwrite("n", &RefineConfig::n)
        .def_readwrite("lambda_", &RefineConfig::lambda)
        .def_readwrite("subsolver", &RefineConfig::subsolver)
        .def_readwrite("seed", &RefineConfig::seed)
        .def_readwrite("workers", &RefineConfig::workers);
    py::class_<TraceRow>(m, "TraceRow")
        .def_readonly("iteration", &TraceRow::iteration)
        .def_readonly("objective", &TraceRow::objective)
        .def_readonly("solution_size", &TraceRow::solution_size)
        .def_readonly("candidates", &TraceRow::candidates)
        .def_readonly("good_arcs", &TraceRow::good_arcs)
        .def_readonly("millis", &TraceRow::millis);
    py::class_<RefineTrace>(m, "RefineTrace")
        .def_readonly("rows", &RefineTrace::rows)
        .def("to_csv", &RefineTrace::to_csv)
        .def("write_csv", &RefineTrace::write_csv, py::arg("path"));
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("best_length", &SweepResult::best_length)
        .def_readonly("candidates", &SweepResult::candidates);
    m.def("sweep", &sweep, py::arg("inst"), py::arg("partitioning"), py::arg("sinks"),
          py::arg("base"), py::arg("kind"), py::arg("seed"), py::arg("workers") = 1);
    m.def("initial_solution", &initial_solution, py::arg("inst"), py::arg("config"));
    m.def(
        "refine",
        [](const ProblemInstance& inst, const RefineConfig& cfg, InterdictionSet start) {
            RefineTrace trace;
            auto solution = refine(inst, cfg, std::move(start), &trace);
            return std::make_pair(std::move(solution), std::move(trace));
        },
        py::arg("inst"), py::arg("config"), py::arg("start"));
    m.def("solve_spni", &solve_spni, py::arg("inst"), py::arg("config"));

    // baselines and benchmark
    py::class_<BruteForceResult>(m, "BruteForceResult")
        .def_readonly("best", &BruteForceResult::best)
        .def_readonly("value", &BruteForceResult::value);
    m.def("brute_force_optimum", &brute_force_optimum, py::arg("inst"),
          py::arg("cap") = std::uint64_t{5'000'000});
    py::class_<FullBbResult>(m, "FullBbResult")
        .def_readonly("best", &FullBbResult::best)
        .def_readonly("value", &FullBbResult::value)
        .def_readonly("optimal", &FullBbResult::optimal);
    m.def(
        "full_bb",
        [](const ProblemInstance& inst, std::optional<double> timeout_s) {
            std::optional<std::chrono::milliseconds> timeout;
            if (timeout_s)
                timeout = std::chrono::milliseconds(
                    static_cast<std::int64_t>(*timeout_s * 1000));
            return full_bb(inst, timeout);
        },
        py::arg("inst"), py::arg("timeout") = py::none());
    m.def("quality", &quality, py::arg("r"), py::arg("f"));

    py::enum_<BaselineMode>(m, "BaselineMode")
        .value("Oracle", BaselineMode::Oracle)
        .value("Matched", BaselineMode::Matched)
        .value("Fixed", BaselineMode::Fixed);
    py::class_<BenchConfig>(m, "BenchConfig")
        .def(py::init<>())
        .def_readwrite("sizes", &BenchConfig::sizes)
        .def_readwrite("budget_fraction", &BenchConfig::budget_fraction)
        .def_readwrite("fixed_budget", &BenchConfig::fixed_budget)
        .def_readwrite("n", &BenchConfig::n)
        .def_readwrite("lambda_", &BenchConfig::lambda)
        .def_readwrite("seeds", &BenchConfig::seeds)
        .def_readwrite("subsolver", &BenchConfig::subsolver)
        .def_readwrite("mode", &BenchConfig::mode)
        .def_readwrite("fixed_timeout_ms", &BenchConfig::fixed_timeout_ms)
        .def_readwrite("brute_cap", &BenchConfig::brute_cap)
        .def_readwrite("workers", &BenchConfig::workers);
    py::class_<BenchRow>(m, "BenchRow")
        .def_readonly("size", &BenchRow::size)
        .def_readonly("seed", &BenchRow::seed)
        .def_readonly("budget", &BenchRow::budget)
        .def_readonly("r", &BenchRow::r)
        .def_readonly("f", &BenchRow::f)
        .def_readonly("quality", &BenchRow::quality)
        .def_readonly("refine_ms", &BenchRow::refine_ms)
        .def_readonly("baseline_ms", &BenchRow::baseline_ms)
        .def_readonly("baseline_timed_out", &BenchRow::baseline_timed_out)
        .def_readonly("trace", &BenchRow::trace);
    m.def("run_benchmark", &run_benchmark, py::arg("config"));
    m.def("bench_csv", &bench_csv, py::arg("rows"));
}
