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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qarch {

enum class GateKind { OneQubit, TwoQubit, Measure, ControlledByMeasurement };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& text);

struct LogicalGate {
  int id = 0;
  GateKind kind = GateKind::OneQubit;
  std::vector<int> operands;
  std::string label;
  /// Id of the Measure gate whose outcome controls this gate.
  std::optional<int> control_source;

  bool is_two_qubit() const { return kind == GateKind::TwoQubit; }
  bool touches(int qubit) const;

  friend bool operator==(const LogicalGate&, const LogicalGate&) = default;
};

/// Ordered gate list over a fixed register of logical qubits.
///
/// Every mutator validates its arguments, so a Circuit is always well formed:
/// operands are in range, two-qubit gates have distinct operands, a measured
/// qubit is never touched again, and classical control always refers to an
/// earlier Measure gate.
class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<LogicalGate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const LogicalGate& operator[](std::size_t i) const { return gates_[i]; }

  int add_one_qubit(std::string label, int qubit);
  int add_two_qubit(std::string label, int a, int b);
  int add_measure(int qubit);
  int add_controlled(std::string label, int qubit, int measure_id);

  /// Generic entry point used by the loaders; performs the same checks.
  int add(GateKind kind, std::string label, std::vector<int> operands,
          std::optional<int> control_source = std::nullopt);

  std::size_t count(GateKind kind) const;
  std::size_t count_label(const std::string& label) const;
  bool is_measured(int qubit) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_;
  std::vector<LogicalGate> gates_;
  std::vector<bool> measured_;
};

using Dependency = std::pair<int, int>;

/// All ordered pairs (g, g') with g before g' that share a logical qubit or
/// where g' is classically controlled by the measurement g.
std::vector<Dependency> build_dependency_list(const Circuit& circuit);

struct SimpleGraph {
  int n = 0;
  /// Normalized (min, max), sorted lexicographically, no duplicates.
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const;
  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};

SimpleGraph make_simple_graph(int n, std::vector<std::pair<int, int>> edges);
SimpleGraph complete_graph(int n);

/// Seeded pairing-model generator; restarts on self-loops or multi-edges.
SimpleGraph gen_random_regular_graph(int n, int d, std::uint64_t seed);

Circuit gen_qaoa_phase_splitting(const SimpleGraph& graph,
                                 bool include_hadamard = false,
                                 bool include_measure = false);

/// Eight-qubit convolutional network: three conv/pool stages then a final
/// measurement on qubit 0.
Circuit gen_qcnn(int n = 8);

/// Appends a Measure on every qubit that has not been measured yet.
Circuit with_final_measurements(const Circuit& circuit);

nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);
Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& circuit, const std::filesystem::path& path);

}  // namespace qarch
