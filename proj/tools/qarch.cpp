// Copyright 2026 The qarch Authors
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


#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"
#include "qarch/error.hpp"
#include "qarch/fidelity.hpp"
#include "qarch/json_io.hpp"
#include "qarch/pipeline.hpp"
#include "qarch/postopt.hpp"
#include "qarch/synthesis.hpp"

namespace {

using namespace qarch;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitInvariant = 4;

struct SolveFlags {
  int t_max = 4;
  int t_max_cap = 64;
  std::optional<int> max_alpha;
  std::optional<int> depth;
  bool keep_baseline_witness = false;
  std::optional<long> time_budget_ms;

  void attach(CLI::App* app) {
    app->add_option("--t-max", t_max, "Initial number of encoded blocks")
        ->check(CLI::PositiveNumber);
    app->add_option("--t-max-cap", t_max_cap, "Largest block count tried")
        ->check(CLI::PositiveNumber);
    app->add_option("--time-budget-ms", time_budget_ms,
                    "Wall-clock limit per SAT call");
    app->add_flag("--keep-baseline-witness", keep_baseline_witness,
                  "Skip swap minimization of the alpha = 0 baseline");
  }

  SynthesisOptions options() const {
    SynthesisOptions o;
    o.initial_t_max = t_max;
    o.t_max_cap = t_max_cap;
    o.max_alpha = max_alpha;
    o.depth_override = depth;
    o.optimize_baseline = !keep_baseline_witness;
    if (time_budget_ms) o.time_budget = std::chrono::milliseconds(*time_budget_ms);
    return o;
  }
};

struct EvalFlags {
  std::string noise;
  std::string decomposition;
  std::string lifetime = "auto";
  bool no_measure_layer = false;

  void attach(CLI::App* app) {
    app->add_option("--noise", noise, "Noise parameter JSON");
    app->add_option("--decomposition", decomposition, "Decomposition table JSON");
    app->add_option("--lifetime", lifetime, "Idle-time window")
        ->check(CLI::IsMember({"auto", "whole", "measure"}));
    app->add_flag("--no-measure-layer", no_measure_layer,
                  "Do not measure unmeasured qubits at the end");
  }

  EvaluationSettings settings() const {
    EvaluationSettings s;
    if (!noise.empty()) s.noise = load_noise(noise);
    if (!decomposition.empty()) s.table = load_decomposition_table(decomposition);
    if (lifetime == "whole") s.lifetime = LifetimeMode::WholeCircuit;
    if (lifetime == "measure") s.lifetime = LifetimeMode::UntilMeasurement;
    s.append_measurements = !no_measure_layer;
    return s;
  }
};

/// Parses "a-b" or "a" into an inclusive range.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dash = text.find('-');
  try {
    if (dash == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    const auto lo = std::stoull(text.substr(0, dash));
    const auto hi = std::stoull(text.substr(dash + 1));
    if (lo > hi) throw InputError("empty seed range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("bad seed range '" + text + "'");
  }
}

Circuit make_circuit(const std::string& kind, int n, int degree,
                     std::uint64_t seed, bool hadamards, bool measure) {
  if (kind == "qaoa") {
    return gen_qaoa_phase_splitting(gen_random_regular_graph(n, degree, seed),
                                    hadamards, measure);
  }
  if (kind == "qaoa-complete") {
    return gen_qaoa_phase_splitting(complete_graph(n), hadamards, measure);
  }
  if (kind == "qcnn") return gen_qcnn(n);
  throw InputError("unknown circuit kind " + kind);
}

int run(int argc, char** argv) {
  CLI::App app{"Architecture co-design by layout synthesis and edge selection"};
  app.require_subcommand(0, 1);
  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults,
               "Print default noise parameters and decomposition table");

  // gen-space
  auto* gen_space = app.add_subcommand("gen-space", "Write an architecture space");
  std::string space_kind = "grid";
  int rows = 4, cols = 4;
  std::string space_out;
  gen_space->add_option("--kind", space_kind)
      ->check(CLI::IsMember({"grid", "heavyhex"}));
  gen_space->add_option("--rows", rows)->check(CLI::PositiveNumber);
  gen_space->add_option("--cols", cols)->check(CLI::PositiveNumber);
  gen_space->add_option("-o,--out", space_out)->required();

  // gen-circuit
  auto* gen_circuit = app.add_subcommand("gen-circuit", "Write a benchmark circuit");
  std::string circuit_kind = "qaoa";
  int n = 8, degree = 3;
  std::uint64_t seed = 1;
  bool hadamards = false, measure = false;
  std::string circuit_out;
  gen_circuit->add_option("--kind", circuit_kind)
      ->check(CLI::IsMember({"qaoa", "qaoa-complete", "qcnn"}));
  gen_circuit->add_option("-n,--qubits", n)->check(CLI::PositiveNumber);
  gen_circuit->add_option("--degree", degree);
  gen_circuit->add_option("--seed", seed);
  gen_circuit->add_flag("--hadamards", hadamards, "Prefix a Hadamard layer");
  gen_circuit->add_flag("--measure", measure, "Append measurements");
  gen_circuit->add_option("-o,--out", circuit_out)->required();

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Sweep alpha and write results");
  std::string space_path, circuit_path, out_dir;
  SolveFlags solve;
  EvalFlags eval;
  optimize->add_option("--space", space_path)->required()->check(CLI::ExistingFile);
  optimize->add_option("--circuit", circuit_path)->required()->check(CLI::ExistingFile);
  optimize->add_option("--out", out_dir)->required();
  optimize->add_option("--max-alpha", solve.max_alpha)->check(CLI::NonNegativeNumber);
  optimize->add_option("--depth", solve.depth, "Depth for edge selection")
      ->check(CLI::NonNegativeNumber);
  solve.attach(optimize);
  eval.attach(optimize);

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Compare an architecture against the base graph");
  std::string eval_space, edges_path, result_file, seeds = "1-30", eval_out;
  std::vector<std::string> eval_circuits;
  int qaoa_n = 8, qaoa_degree = 3;
  SolveFlags eval_solve;
  EvalFlags eval_eval;
  evaluate->add_option("--space", eval_space)->required()->check(CLI::ExistingFile);
  auto* edges_opt = evaluate->add_option("--edges", edges_path,
                                         "JSON list of flexible edges to switch on");
  auto* result_opt = evaluate->add_option("--result", result_file,
                                          "Take the edges from a result file");
  edges_opt->excludes(result_opt);
  evaluate->add_option("--circuit", eval_circuits, "Circuit files");
  evaluate->add_option("--qaoa-qubits", qaoa_n);
  evaluate->add_option("--qaoa-degree", qaoa_degree);
  evaluate->add_option("--seeds", seeds, "Seed range for random QAOA, a-b");
  evaluate->add_option("-o,--out", eval_out, "CSV output path");
  eval_solve.attach(evaluate);
  eval_eval.attach(evaluate);

  // report
  auto* report = app.add_subcommand("report", "Fidelity table and DOT files");
  std::string report_dir;
  report->add_option("--dir", report_dir)->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  if (show_defaults) {
    nlohmann::json doc = {{"noise", noise_to_json(NoiseParams{})},
                          {"decomposition",
                           decomposition_table_to_json(default_decomposition_table())}};
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }

  if (*gen_space) {
    const ArchitectureSpace space =
        space_kind == "grid" ? gen_grid_space(rows, cols) : gen_heavyhex_space();
    save_space(space, space_out);
    std::cout << space.base.num_vertices() << " vertices, "
              << space.base.num_edges() << " fixed, " << space.flexible.size()
              << " flexible, " << space.collisions.size() << " collisions\n";
    return kExitOk;
  }

  if (*gen_circuit) {
    const Circuit c = make_circuit(circuit_kind, n, degree, seed, hadamards, measure);
    save_circuit(c, circuit_out);
    std::cout << c.num_qubits() << " qubits, " << c.size() << " gates\n";
    return kExitOk;
  }

  if (*optimize) {
    const ArchitectureSpace space = load_space(space_path);
    const Circuit circuit = load_circuit(circuit_path);
    const OptimizeOutcome outcome =
        run_optimize(circuit, space, solve.options(), eval.settings());
    write_optimize_outputs(outcome, circuit, space, out_dir);
    std::cout << sweep_csv(outcome.rows);
    return outcome.timed_out() ? kExitTimeout : kExitOk;
  }

  if (*evaluate) {
    const ArchitectureSpace space = load_space(eval_space);
    std::vector<Edge> used;
    if (!edges_path.empty()) {
      used = edges_from_json(read_json_file(edges_path));
    } else if (!result_file.empty()) {
      used = result_from_json(read_json_file(result_file).at("result")).used_flexible;
    } else {
      throw InputError("evaluate needs --edges or --result");
    }
    std::vector<NamedCircuit> circuits;
    for (const std::string& path : eval_circuits) {
      circuits.push_back({path, load_circuit(path)});
    }
    if (circuits.empty()) {
      const auto [lo, hi] = parse_range(seeds);
      for (std::uint64_t s = lo; s <= hi; ++s) {
        circuits.push_back(
            {"qaoa_seed" + std::to_string(s),
             make_circuit("qaoa", qaoa_n, qaoa_degree, s, false, false)});
      }
    }
    const auto table = run_cross_design(space, used, circuits,
                                        eval_solve.options(), eval_eval.settings());
    const std::string csv = cross_design_csv(table);
    if (!eval_out.empty()) write_text_file(csv, eval_out);
    std::cout << csv;
    return kExitOk;
  }

  if (*report) {
    std::cout << write_report(report_dir);
    return kExitOk;
  }

  std::cout << app.help();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SolverTimeout& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kExitTimeout;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
