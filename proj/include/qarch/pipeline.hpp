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


#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"
#include "qarch/fidelity.hpp"
#include "qarch/postopt.hpp"
#include "qarch/synthesis.hpp"

namespace qarch {

struct EvaluationSettings {
  NoiseParams noise;
  DecompositionTable table = default_decomposition_table();
  /// nullopt: until measurement when the circuit measures its own qubits,
  /// whole circuit otherwise.
  std::optional<LifetimeMode> lifetime;
  /// Measure every qubit the circuit leaves unmeasured, after the last gate.
  bool append_measurements = true;
};

struct Evaluation {
  PlacedCircuit placed;  ///< after gate absorption
  ScheduledCircuit schedule;
  LifetimeMode lifetime = LifetimeMode::WholeCircuit;
  FidelityReport report;
};

/// Placement, absorption, decomposition, scheduling and fidelity for one
/// synthesis result on the architecture it activates.
Evaluation evaluate_result(const Circuit& circuit,
                           const ArchitectureSpace& space,
                           const SynthesisResult& result,
                           const EvaluationSettings& settings);

struct SweepRow {
  int alpha = 0;
  bool timed_out = false;
  bool has_result = false;
  int depth = 0;
  int swap_count = 0;
  std::vector<Edge> used_flexible;
  FidelityReport report;
  double improvement_pct = 0.0;
};

struct OptimizeOutcome {
  EdgeSelectionOutcome selection;
  std::vector<Evaluation> evaluations;  ///< one per selection entry
  std::vector<SweepRow> rows;
  bool timed_out() const { return selection.timed_out_alpha.has_value(); }
};

/// Both synthesis stages followed by evaluation of every architecture.
/// A timeout in the depth search propagates as SolverTimeout; later
/// timeouts end the sweep with a partial outcome.
OptimizeOutcome run_optimize(const Circuit& circuit,
                             const ArchitectureSpace& space,
                             const SynthesisOptions& options,
                             const EvaluationSettings& settings);

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Writes circuit.json, space.json, sweep.csv and, per alpha,
/// result_alpha<k>.json and schedule_alpha<k>.json.
void write_optimize_outputs(const OptimizeOutcome& outcome,
                            const Circuit& circuit,
                            const ArchitectureSpace& space,
                            const std::filesystem::path& dir);

std::filesystem::path result_path(const std::filesystem::path& dir, int alpha);

struct StoredResult {
  int alpha = 0;
  SynthesisResult result;
  nlohmann::json metrics;
};

/// Reads every result file of an optimize output directory, ordered by
/// alpha, and re-validates each against the stored circuit and space.
std::vector<StoredResult> load_results(const std::filesystem::path& dir,
                                       Circuit* circuit = nullptr,
                                       ArchitectureSpace* space = nullptr);

/// Writes report.csv (fidelity against alpha) and arch_alpha<k>.dot into
/// `dir`; returns the CSV text.
std::string write_report(const std::filesystem::path& dir);

struct NamedCircuit {
  std::string name;
  Circuit circuit;
};

struct CrossDesignRow {
  std::string name;
  int base_swaps = 0;
  double base_fidelity = 0.0;
  int arch_swaps = 0;
  double arch_fidelity = 0.0;
  double improvement_pct = 0.0;
};

/// Compiles each circuit onto the base graph and onto the architecture with
/// `used` switched on; reports both fidelities.
std::vector<CrossDesignRow> run_cross_design(const ArchitectureSpace& space,
                                             const std::vector<Edge>& used,
                                             const std::vector<NamedCircuit>& circuits,
                                             const SynthesisOptions& options,
                                             const EvaluationSettings& settings);

std::string cross_design_csv(const std::vector<CrossDesignRow>& rows);

/// Shortest round-trip decimal rendering used in every CSV.
std::string format_number(double value);

}  // namespace qarch
