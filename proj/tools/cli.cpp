// Copyright 2026 The hsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsched/bounds.hpp"
#include "hsched/error.hpp"
#include "hsched/genlab.hpp"
#include "hsched/io.hpp"
#include "hsched/lp.hpp"
#include "hsched/schedule.hpp"

namespace hsched::cli {

namespace fs = std::filesystem;

namespace {

// Signals a failed verification so that the dispatcher can map it to exit 1.
struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::optional<double> parse_b(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("b must be \"auto\" or a number");
  }
  RoundingParams::finite(value);
  return value;
}

RoundingRule parse_rounding(const std::string& text) {
  if (text == "hlpb") return RoundingRule::Hlpb;
  if (text == "half") return RoundingRule::Half;
  throw InvalidInput("rounding must be hlpb or half");
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string instance;
  std::string rounding = "hlpb";
  std::string b = "auto";
  std::string out;
  std::string gantt;
  std::string dump_lp;
};

void cmd_solve(const SolveArgs& args, std::ostream& out) {
  PipelineOptions options;
  options.rule = parse_rounding(args.rounding);
  options.b = parse_b(args.b);
  const Instance instance = load_instance(args.instance);
  if (!args.dump_lp.empty()) write_file(args.dump_lp, to_lp_text(build_allocation_lp(instance)));
  const PipelineResult result = run_pipeline(instance, options);
  write_file(args.out, schedule_to_json(result.schedule));
  if (!args.gantt.empty()) write_file(args.gantt, gantt_csv(instance, result.schedule));
  out << diagnostics_to_json(result.diagnostics) << '\n';
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string dir;
  std::size_t generate = 0;
  std::string csv;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool timing = false;
};

struct BenchJob {
  std::string id;
  std::function<Instance()> make;
};

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string bench_row(const BenchJob& job, bool timing) {
  const auto started = std::chrono::steady_clock::now();
  std::ostringstream row;
  row << job.id;
  try {
    const Instance instance = job.make();
    FractionalSolution relaxation = solve_relaxation(instance);
    PipelineOptions half_options;
    half_options.rule = RoundingRule::Half;
    const PipelineResult half = schedule_relaxation(instance, relaxation, half_options);
    const PipelineResult hlpb = schedule_relaxation(instance, std::move(relaxation), {});
    const double bound = theoretical_ratio(instance.cpus(), instance.gpus());
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    const Diagnostics& d = hlpb.diagnostics;
    row << ',' << instance.size() << ',' << instance.cpus() << ',' << instance.gpus() << ','
        << d.b->to_string() << ',' << number(d.lp_bound) << ',' << number(d.makespan) << ','
        << number(half.diagnostics.makespan) << ',' << number(d.ratio) << ','
        << number(half.diagnostics.ratio) << ',' << number(bound) << ','
        << (timing ? elapsed.count() : 0) << ','
        << (d.ratio <= bound + 1e-6 ? "ok" : "bound_violation");
  } catch (const std::exception& e) {
    const char* kind = dynamic_cast<const InvalidInput*>(&e)       ? "invalid"
                       : dynamic_cast<const CapacityExceeded*>(&e) ? "capacity"
                                                                   : "solver";
    row << ",,,,,,,,,,,0," << kind << ": " << sanitize(e.what());
  }
  return row.str();
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYBRID_SCHED_THREADS")) {
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
    if (ec == std::errc() && cap > 0) workers = std::min(workers, cap);
  }
  return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));
}

void cmd_bench(const BenchArgs& args, std::ostream& out) {
  std::vector<BenchJob> jobs;
  if (!args.dir.empty()) {
    if (!fs::is_directory(args.dir)) throw InvalidInput("not a directory: " + args.dir);
    for (const auto& entry : fs::directory_iterator(args.dir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
      const fs::path path = entry.path();
      jobs.push_back({path.stem().string(), [path] { return load_instance(path); }});
    }
  } else {
    for (std::size_t i = 0; i < args.generate; ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "rand-%06zu", i);
      const std::uint64_t seed = args.seed;
      jobs.push_back({id, [seed, i] { return random_layered_dag(benchmark_params(seed, i)); }});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const BenchJob& a, const BenchJob& b) { return a.id < b.id; });

  std::vector<std::string> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) rows[i] = bench_row(jobs[i], args.timing);
  };
  const unsigned workers = worker_count(args.threads, jobs.size());
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::string csv = std::string(kCsvHeader) + '\n';
  for (const std::string& row : rows) csv += row + '\n';
  write_file(args.csv, csv);
  out << "wrote " << rows.size() << " rows to " << args.csv << '\n';
}

// ---------------------------------------------------------------------------
// verify / oracle

void cmd_verify(const std::string& instance_path, const std::string& schedule_path, std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  const Schedule schedule = load_schedule(schedule_path, instance.size());
  const ValidationReport report = validate_schedule(instance, allocation_of(schedule), schedule);
  out << report_to_json(report) << '\n';
  if (!report.ok()) throw VerificationFailed(std::to_string(report.violations.size()) + " violation(s)");
}

void cmd_oracle(const std::string& instance_path, const OracleLimits& limits, std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  out << bounds_to_json(compute_bounds(instance, limits)) << '\n';
}

// ---------------------------------------------------------------------------
// generate / certify / gap

struct QPartiteArgs {
  ReductionParams params{3, 4, 25, 1.0 / 16, 1.0 / 8};
  double edge_prob = 0.0;
  std::uint64_t seed = 1;
  bool corollary = false;
  std::uint64_t m_target = 0;
  std::uint64_t max_tasks = ReductionOptions{}.max_tasks;
  std::uint64_t max_arcs = ReductionOptions{}.max_arcs;
  std::string out;
  std::string graph_out;
};

void cmd_generate_qpartite(const QPartiteArgs& args, std::ostream& out) {
  const QPartiteGraph graph = qpartite_yes_graph(args.params, args.edge_prob, args.seed);
  const ReductionOptions options{args.max_tasks, args.max_arcs};
  const Instance instance = args.corollary
                                ? corollary_instance(graph, args.params, args.m_target, options)
                                : reduction_instance(graph, args.params, options);
  write_file(args.graph_out, graph_to_json(graph));
  write_file(args.out, instance_to_json(instance));
  out << "tasks " << instance.size() << ", arcs " << instance.edges().size() << ", m "
      << instance.cpus() << ", k " << instance.gpus() << '\n';
}

struct CertifyArgs {
  std::string instance;
  std::string graph;
  std::uint32_t Q = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string out;
};

void cmd_certify(const CertifyArgs& args, std::ostream& out) {
  const QPartiteGraph graph = parse_graph(read_file(args.graph));
  if (!graph.has_planted()) throw InvalidInput("graph has no planted labels");
  ReductionParams params;
  params.q = graph.layer_count;
  params.n = graph.layer_size;
  params.Q = args.Q != 0 ? args.Q : *std::max_element(graph.planted.begin(), graph.planted.end()) + 1;
  params.epsilon = args.epsilon > 0 ? args.epsilon : 1.0 / (double(params.Q) * params.Q);
  params.delta = args.delta > 0 ? args.delta : 1.0 / (2.0 * params.Q);
  const Instance instance = load_instance(args.instance);
  const Schedule schedule = yes_case_schedule(instance, graph, params);
  const ValidationReport report = validate_schedule(instance, allocation_of(schedule), schedule);
  if (!args.out.empty()) write_file(args.out, schedule_to_json(schedule));
  nlohmann::json doc = {{"makespan", schedule.makespan},
                        {"expected_makespan", params.Q * params.q / 3 + params.Q - 1},
                        {"yes_upper", gap_report(params).yes_upper},
                        {"ok", report.ok()},
                        {"violations", report.violations.size()}};
  out << doc.dump() << '\n';
  if (!report.ok()) throw VerificationFailed(std::to_string(report.violations.size()) + " violation(s)");
}

void cmd_gap(const ReductionParams& partial, std::ostream& out) {
  ReductionParams params = partial;
  params.n = params.Q + 1;
  params.epsilon = 1.0 / (double(params.Q) * params.Q);
  params.delta = 1.0 / (2.0 * params.Q);
  const GapReport r = gap_report(params);
  nlohmann::json doc = {{"yes_upper", r.yes_upper}, {"no_lower", r.no_lower}, {"ma", r.ma},
                        {"mb", r.mb}, {"mc", r.mc}, {"ratio", r.no_lower / r.yes_upper}};
  out << doc.dump() << '\n';
}

int report_error(std::ostream& err, const char* kind, const std::string& reason, int code) {
  err << "error: " << kind << ": " << reason << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Makespan scheduling on hybrid CPU/GPU platforms", "hsched"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Schedule an instance with LP rounding + list scheduling");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--rounding", solve.rounding, "hlpb | half")->capture_default_str();
  solve_cmd->add_option("--b", solve.b, "auto | threshold >= 2")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Schedule JSON output")->required();
  solve_cmd->add_option("--gantt", solve.gantt, "Optional per-machine CSV");
  solve_cmd->add_option("--dump-lp", solve.dump_lp, "Optional LP text dump");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run both roundings over a corpus, write CSV");
  auto* dir_opt = bench_cmd->add_option("--dir", bench.dir, "Directory of instance JSON files");
  auto* gen_opt = bench_cmd->add_option("--generate", bench.generate, "Generate N random instances");
  dir_opt->excludes(gen_opt);
  bench_cmd->add_option("--csv", bench.csv, "CSV output")->required();
  bench_cmd->add_option("--seed", bench.seed, "Corpus seed")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = hardware)");
  bench_cmd->add_flag("--timing", bench.timing, "Record wall_ms (makes output non-deterministic)");

  std::string verify_instance;
  std::string verify_schedule;
  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("--instance", verify_instance)->required();
  verify_cmd->add_option("--schedule", verify_schedule)->required();

  std::string oracle_instance;
  OracleLimits limits;
  auto* oracle_cmd = app.add_subcommand("oracle", "Lower bounds and exact optimum of a tiny instance");
  oracle_cmd->add_option("--instance", oracle_instance)->required();
  oracle_cmd->add_option("--max-tasks", limits.max_tasks)->capture_default_str();
  oracle_cmd->add_option("--max-machines", limits.max_machines)->capture_default_str();

  auto* generate_cmd = app.add_subcommand("generate", "Generate instances");
  generate_cmd->require_subcommand(1);
  RandomDagParams random;
  random.tasks = 20;
  random.layers = 4;
  random.edge_prob = 0.3;
  std::string random_out;
  auto* random_cmd = generate_cmd->add_subcommand("random", "Random layered DAG");
  random_cmd->add_option("--tasks", random.tasks)->capture_default_str();
  random_cmd->add_option("--layers", random.layers)->capture_default_str();
  random_cmd->add_option("--edge-prob", random.edge_prob)->capture_default_str();
  random_cmd->add_option("--m", random.m)->capture_default_str();
  random_cmd->add_option("--k", random.k)->capture_default_str();
  random_cmd->add_option("--seed", random.seed)->capture_default_str();
  random_cmd->add_option("--cpu-lo", random.cpu.lo)->capture_default_str();
  random_cmd->add_option("--cpu-hi", random.cpu.hi)->capture_default_str();
  random_cmd->add_option("--gpu-lo", random.gpu.lo)->capture_default_str();
  random_cmd->add_option("--gpu-hi", random.gpu.hi)->capture_default_str();
  random_cmd->add_option("--out", random_out)->required();

  QPartiteArgs qpartite;
  auto* qpartite_cmd = generate_cmd->add_subcommand("qpartite", "Planted layered graph and its reduction");
  qpartite_cmd->add_option("--q", qpartite.params.q)->capture_default_str();
  qpartite_cmd->add_option("--Q", qpartite.params.Q)->capture_default_str();
  qpartite_cmd->add_option("--n", qpartite.params.n)->capture_default_str();
  qpartite_cmd->add_option("--epsilon", qpartite.params.epsilon)->capture_default_str();
  qpartite_cmd->add_option("--delta", qpartite.params.delta)->capture_default_str();
  qpartite_cmd->add_option("--edge-prob", qpartite.edge_prob)->capture_default_str();
  qpartite_cmd->add_option("--seed", qpartite.seed)->capture_default_str();
  qpartite_cmd->add_flag("--corollary", qpartite.corollary, "Incompatible-times variant");
  qpartite_cmd->add_option("--m-target", qpartite.m_target, "CPU count for --corollary");
  qpartite_cmd->add_option("--max-tasks", qpartite.max_tasks)->capture_default_str();
  qpartite_cmd->add_option("--max-arcs", qpartite.max_arcs)->capture_default_str();
  qpartite_cmd->add_option("--out", qpartite.out, "Instance JSON output")->required();
  qpartite_cmd->add_option("--graph-out", qpartite.graph_out, "Graph JSON output")->required();

  auto* certify_cmd = app.add_subcommand("certify", "Build certificate schedules");
  certify_cmd->require_subcommand(1);
  CertifyArgs certify;
  auto* yes_cmd = certify_cmd->add_subcommand("yes-schedule", "Pipelined schedule of a planted reduction");
  yes_cmd->add_option("--instance", certify.instance)->required();
  yes_cmd->add_option("--graph", certify.graph)->required();
  yes_cmd->add_option("--Q", certify.Q, "Classes per layer (default: from labels)");
  yes_cmd->add_option("--epsilon", certify.epsilon);
  yes_cmd->add_option("--delta", certify.delta);
  yes_cmd->add_option("--out", certify.out, "Schedule JSON output");

  ReductionParams gap;
  auto* gap_cmd = app.add_subcommand("gap", "Completeness/soundness makespan bounds");
  gap_cmd->add_option("--q", gap.q)->required();
  gap_cmd->add_option("--Q", gap.Q)->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "input", e.what(), kInvalidInput);
  }

  try {
    if (solve_cmd->parsed()) {
      cmd_solve(solve, out);
    } else if (bench_cmd->parsed()) {
      if (bench.dir.empty() && gen_opt->count() == 0) throw InvalidInput("bench needs --dir or --generate");
      cmd_bench(bench, out);
    } else if (verify_cmd->parsed()) {
      cmd_verify(verify_instance, verify_schedule, out);
    } else if (oracle_cmd->parsed()) {
      cmd_oracle(oracle_instance, limits, out);
    } else if (random_cmd->parsed()) {
      write_file(random_out, instance_to_json(random_layered_dag(random)));
    } else if (qpartite_cmd->parsed()) {
      cmd_generate_qpartite(qpartite, out);
    } else if (yes_cmd->parsed()) {
      cmd_certify(certify, out);
    } else if (gap_cmd->parsed()) {
      cmd_gap(gap, out);
    }
  } catch (const VerificationFailed& e) {
    return report_error(err, "verification", e.what(), kVerificationFailed);
  } catch (const InvalidInput& e) {
    return report_error(err, "input", e.what(), kInvalidInput);
  } catch (const SolverFailure& e) {
    return report_error(err, "solver", e.what(), kSolverFailed);
  } catch (const CapacityExceeded& e) {
    return report_error(err, "capacity", e.what(), kCapacityExceeded);
  }
  return kOk;
}

}  // namespace hsched::cli
