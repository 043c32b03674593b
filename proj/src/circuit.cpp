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


#include "qarch/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qarch/error.hpp"
#include "qarch/json_io.hpp"

namespace qarch {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::OneQubit:
      return "one_qubit";
    case GateKind::TwoQubit:
      return "two_qubit";
    case GateKind::Measure:
      return "measure";
    case GateKind::ControlledByMeasurement:
      return "controlled";
  }
  return "unknown";
}

GateKind gate_kind_from_string(const std::string& text) {
  if (text == "one_qubit") return GateKind::OneQubit;
  if (text == "two_qubit") return GateKind::TwoQubit;
  if (text == "measure") return GateKind::Measure;
  if (text == "controlled") return GateKind::ControlledByMeasurement;
  throw InputError("unknown gate kind '" + text + "'");
}

bool LogicalGate::touches(int qubit) const {
  return std::find(operands.begin(), operands.end(), qubit) != operands.end();
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw InputError("circuit needs at least one qubit");
  measured_.assign(static_cast<std::size_t>(num_qubits), false);
}

int Circuit::add(GateKind kind, std::string label, std::vector<int> operands,
                 std::optional<int> control_source) {
  const int id = static_cast<int>(gates_.size());
  const std::string where = "gate " + std::to_string(id) + ": ";
  const std::size_t arity = kind == GateKind::TwoQubit ? 2 : 1;
  if (operands.size() != arity) {
    throw InputError(where + to_string(kind) + " expects " +
                     std::to_string(arity) + " operand(s)");
  }
  for (int q : operands) {
    if (q < 0 || q >= num_qubits_) {
      throw InputError(where + "operand " + std::to_string(q) +
                       " out of range for " + std::to_string(num_qubits_) +
                       " qubits");
    }
    if (measured_[static_cast<std::size_t>(q)]) {
      throw InputError(where + "qubit " + std::to_string(q) +
                       " used after its measurement");
    }
  }
  if (arity == 2 && operands[0] == operands[1]) {
    throw InputError(where + "two-qubit gate on a single qubit");
  }
  if (kind == GateKind::ControlledByMeasurement) {
    if (!control_source) throw InputError(where + "missing control_source");
    const int src = *control_source;
    if (src < 0 || src >= id) {
      throw InputError(where + "control_source " + std::to_string(src) +
                       " does not refer to an earlier gate");
    }
    if (gates_[static_cast<std::size_t>(src)].kind != GateKind::Measure) {
      throw InputError(where + "control_source " + std::to_string(src) +
                       " is not a measurement");
    }
  } else if (control_source) {
    throw InputError(where + "control_source only allowed on controlled gates");
  }
  if (label.empty()) throw InputError(where + "empty label");

  if (kind == GateKind::Measure) {
    measured_[static_cast<std::size_t>(operands[0])] = true;
  }
  gates_.push_back(LogicalGate{id, kind, std::move(operands), std::move(label),
                               control_source});
  return id;
}

int Circuit::add_one_qubit(std::string label, int qubit) {
  return add(GateKind::OneQubit, std::move(label), {qubit});
}

int Circuit::add_two_qubit(std::string label, int a, int b) {
  return add(GateKind::TwoQubit, std::move(label), {a, b});
}

int Circuit::add_measure(int qubit) {
  return add(GateKind::Measure, "M", {qubit});
}

int Circuit::add_controlled(std::string label, int qubit, int measure_id) {
  return add(GateKind::ControlledByMeasurement, std::move(label), {qubit},
             measure_id);
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(),
      [kind](const LogicalGate& g) { return g.kind == kind; }));
}

std::size_t Circuit::count_label(const std::string& label) const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(),
      [&label](const LogicalGate& g) { return g.label == label; }));
}

bool Circuit::is_measured(int qubit) const {
  return measured_.at(static_cast<std::size_t>(qubit));
}

std::vector<Dependency> build_dependency_list(const Circuit& circuit) {
  std::vector<Dependency> deps;
  const auto& gates = circuit.gates();
  for (std::size_t j = 0; j < gates.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      bool shared = false;
      for (int q : gates[i].operands) shared = shared || gates[j].touches(q);
      if (gates[j].control_source &&
          *gates[j].control_source == static_cast<int>(i)) {
        shared = true;
      }
      if (shared) deps.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return deps;
}

std::vector<int> SimpleGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

SimpleGraph make_simple_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InputError("negative vertex count");
  std::set<std::pair<int, int>> unique;
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge endpoint out of range");
    }
    if (!unique.insert({std::min(u, v), std::max(u, v)}).second) {
      throw InputError("duplicate edge");
    }
  }
  return SimpleGraph{n, {unique.begin(), unique.end()}};
}

SimpleGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return make_simple_graph(n, std::move(edges));
}

SimpleGraph gen_random_regular_graph(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0) throw InputError("regular graph needs n >= 1, d >= 0");
  if (d >= n) throw InputError("regular graph needs d < n");
  if ((n * d) % 2 != 0) throw InputError("n*d must be even");

  // mt19937_64 has a fully specified output sequence; draws use plain modulo
  // so results do not depend on the standard library's distributions.
  std::mt19937_64 rng(seed);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n * d));
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < d; ++k) points.push_back(v);
    }
    for (std::size_t i = points.size(); i > 1; --i) {
      std::swap(points[i - 1], points[rng() % i]);
    }
    std::set<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
      int u = points[i];
      int v = points[i + 1];
      if (u == v || !edges.insert({std::min(u, v), std::max(u, v)}).second) {
        ok = false;
        break;
      }
    }
    if (ok) return SimpleGraph{n, {edges.begin(), edges.end()}};
  }
  throw InputError("regular graph generation did not converge");
}

Circuit gen_qaoa_phase_splitting(const SimpleGraph& graph,
                                 bool include_hadamard, bool include_measure) {
  Circuit circuit(std::max(graph.n, 1));
  if (include_hadamard) {
    for (int q = 0; q < graph.n; ++q) circuit.add_one_qubit("H", q);
  }
  auto edges = graph.edges;
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) circuit.add_two_qubit("ZZ", u, v);
  if (include_measure) {
    for (int q = 0; q < graph.n; ++q) circuit.add_measure(q);
  }
  return circuit;
}

Circuit gen_qcnn(int n) {
  if (n != 8) {
    throw InputError("QCNN generator supports n = 8 only, got " +
                     std::to_string(n));
  }
  Circuit c(8);
  for (int q : {0, 2, 4, 6}) c.add_two_qubit("U4", q, q + 1);
  for (int q : {1, 3, 5}) c.add_two_qubit("U4", q, q + 1);
  for (int q : {1, 3, 5, 7}) {
    const int m = c.add_measure(q);
    c.add_controlled("V", q - 1, m);
  }
  for (int q : {0, 2, 4}) c.add_two_qubit("U4", q, q + 2);
  for (int q : {2, 6}) {
    const int m = c.add_measure(q);
    c.add_controlled("V", q - 2, m);
  }
  c.add_two_qubit("U4", 0, 4);
  const int m = c.add_measure(4);
  c.add_controlled("V", 0, m);
  c.add_measure(0);
  return c;
}

Circuit with_final_measurements(const Circuit& circuit) {
  Circuit out = circuit;
  for (int q = 0; q < circuit.num_qubits(); ++q) {
    if (!out.is_measured(q)) out.add_measure(q);
  }
  return out;
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates()) {
    nlohmann::json entry{{"kind", to_string(g.kind)},
                         {"label", g.label},
                         {"operands", g.operands}};
    if (g.control_source) entry["control_source"] = *g.control_source;
    gates.push_back(std::move(entry));
  }
  return {{"qubits", circuit.num_qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("qubits") || !doc.contains("gates")) {
      throw InputError("circuit: expected object with 'qubits' and 'gates'");
    }
    Circuit circuit(doc.at("qubits").get<int>());
    std::size_t index = 0;
    for (const auto& entry : doc.at("gates")) {
      try {
        std::optional<int> control;
        if (entry.contains("control_source")) {
          control = entry.at("control_source").get<int>();
        }
        circuit.add(gate_kind_from_string(entry.at("kind").get<std::string>()),
                    entry.at("label").get<std::string>(),
                    entry.at("operands").get<std::vector<int>>(), control);
      } catch (const nlohmann::json::exception& e) {
        throw InputError("circuit: gates[" + std::to_string(index) +
                         "]: " + e.what());
      } catch (const InputError& e) {
        throw InputError("circuit: gates[" + std::to_string(index) +
                         "]: " + e.what());
      }
      ++index;
    }
    return circuit;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("circuit: ") + e.what());
  }
}

Circuit load_circuit(const std::filesystem::path& path) {
  try {
    return circuit_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
  write_json_file(circuit_to_json(circuit), path);
}

}  // namespace qarch
