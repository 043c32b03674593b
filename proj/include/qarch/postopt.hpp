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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"
#include "qarch/synthesis.hpp"

namespace qarch {

struct PlacedGate {
  std::string label;
  GateKind kind = GateKind::OneQubit;
  std::vector<int> qubits;   ///< physical vertices, operand order
  std::vector<int> sources;  ///< original gate ids folded into this entry
  int swaps_absorbed = 0;    ///< inserted SWAPs folded into this entry
  /// Whether the entry exchanges the states of its two qubits (odd number
  /// of folded SWAPs).
  bool exchanges = false;
  std::optional<int> control_source;  ///< original id of the controlling Measure
  /// Starts only after every earlier gate on any qubit has finished.
  bool barrier = false;

  bool is_two_qubit() const { return qubits.size() == 2; }
  bool touches(int v) const;
};

/// Mapped circuit on a concrete coupling graph, SWAPs explicit.
struct PlacedCircuit {
  CouplingGraph graph;
  int num_logical = 0;
  std::vector<int> initial_layout;  ///< logical -> physical before the first gate
  std::vector<PlacedGate> gates;
};

/// Orders the mapped gates block by block (gate-list order inside a block,
/// then that block's SWAP layer). With `append_measurements`, every logical
/// qubit not measured by the circuit gets a Measure in one final layer.
PlacedCircuit make_placed_circuit(const Circuit& circuit,
                                  const ArchitectureSpace& space,
                                  const SynthesisResult& result,
                                  bool append_measurements = false);

/// Merges consecutive two-qubit gates on the same qubit pair with nothing in
/// between on either qubit: ZZ+ZZ gives ZZ, any pair with a U4 or SWAP gives
/// U4. Greedy left-to-right until no merge applies.
PlacedCircuit absorb_gates(const PlacedCircuit& placed);

struct DecompositionRule {
  int two_qubit_natives = 0;
  int one_qubit_layers = 0;
  friend bool operator==(const DecompositionRule&,
                         const DecompositionRule&) = default;
};

using DecompositionTable = std::map<std::string, DecompositionRule>;

DecompositionTable default_decomposition_table();
DecompositionTable decomposition_table_from_json(const nlohmann::json& doc);
nlohmann::json decomposition_table_to_json(const DecompositionTable& table);
DecompositionTable load_decomposition_table(const std::filesystem::path& path);

struct GateDurations {
  double two_qubit_ns = 10.0;
  double one_qubit_ns = 25.0;
  double measure_ns = 4000.0;
};

enum class NativeKind { Native2Q, Native1Q, Measurement };

std::string to_string(NativeKind kind);

struct NativeOp {
  NativeKind kind = NativeKind::Native1Q;
  std::vector<int> qubits;  ///< physical vertices
  double duration_ns = 0.0;
  std::vector<int> deps;    ///< indices of ops that must finish first
  std::vector<int> owners;  ///< logical qubits held by `qubits` at this point
  int source = -1;          ///< index into the placed circuit
};

struct NativeCircuit {
  int num_physical = 0;
  int num_logical = 0;
  std::vector<NativeOp> ops;

  std::size_t count(NativeKind kind) const;
};

/// Expands every placed gate into native ops. Two-qubit gates alternate
/// single-qubit layers and native two-qubit ops starting with a layer;
/// dependencies chain ops per physical qubit, and a classically controlled
/// gate also waits for its measurement.
NativeCircuit decompose(const PlacedCircuit& placed,
                        const DecompositionTable& table = default_decomposition_table(),
                        const GateDurations& durations = {});

struct ScheduledCircuit {
  NativeCircuit circuit;
  std::vector<std::vector<int>> moments;  ///< op indices per moment
  std::vector<double> moment_duration;    ///< ns, max over the moment's ops
  std::vector<double> moment_start;       ///< ns
  std::vector<int> op_moment;
  double total_duration = 0.0;            ///< ns

  double op_start(int op) const {
    return moment_start[static_cast<std::size_t>(op_moment[static_cast<std::size_t>(op)])];
  }
  double op_end(int op) const {
    return op_start(op) +
           circuit.ops[static_cast<std::size_t>(op)].duration_ns;
  }
};

/// ASAP list scheduling into moments: each op goes to the earliest moment
/// after all of its dependencies in which its qubits are free.
ScheduledCircuit schedule(const NativeCircuit& native);

enum class LifetimeMode { WholeCircuit, UntilMeasurement };

/// Idle time per logical qubit, in microseconds.
std::vector<double> idle_times(const ScheduledCircuit& schedule,
                               LifetimeMode mode);

nlohmann::json schedule_to_json(const ScheduledCircuit& schedule);

}  // namespace qarch
