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


#include "qarch/postopt.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "qarch/error.hpp"
#include "qarch/json_io.hpp"

namespace qarch {

bool PlacedGate::touches(int v) const {
  return std::find(qubits.begin(), qubits.end(), v) != qubits.end();
}

PlacedCircuit make_placed_circuit(const Circuit& circuit,
                                  const ArchitectureSpace& space,
                                  const SynthesisResult& result,
                                  bool append_measurements) {
  if (result.placements.size() != circuit.size() ||
      result.mapping.size() != static_cast<std::size_t>(result.depth) + 1) {
    throw InputError("result does not match the circuit");
  }
  PlacedCircuit placed;
  placed.graph = activate(space, result.used_flexible);
  placed.num_logical = circuit.num_qubits();
  placed.initial_layout = result.mapping.front();

  std::vector<std::vector<int>> gates_in_block(
      static_cast<std::size_t>(result.depth) + 1);
  for (const GatePlacement& p : result.placements) {
    gates_in_block.at(static_cast<std::size_t>(p.block)).push_back(p.gate);
  }
  std::vector<std::vector<Edge>> swaps_in_block(gates_in_block.size());
  for (const SwapPlacement& s : result.swaps) {
    swaps_in_block.at(static_cast<std::size_t>(s.block)).push_back(s.edge);
  }

  for (std::size_t t = 0; t < gates_in_block.size(); ++t) {
    const std::vector<int>& layout = result.mapping[t];
    std::sort(gates_in_block[t].begin(), gates_in_block[t].end());
    for (int id : gates_in_block[t]) {
      const LogicalGate& g = circuit[static_cast<std::size_t>(id)];
      PlacedGate pg;
      pg.label = g.label;
      pg.kind = g.kind;
      for (int q : g.operands) {
        pg.qubits.push_back(layout[static_cast<std::size_t>(q)]);
      }
      pg.sources = {id};
      pg.control_source = g.control_source;
      placed.gates.push_back(std::move(pg));
    }
    std::sort(swaps_in_block[t].begin(), swaps_in_block[t].end());
    for (const Edge& e : swaps_in_block[t]) {
      PlacedGate pg;
      pg.label = "SWAP";
      pg.kind = GateKind::TwoQubit;
      pg.qubits = {e.u, e.v};
      pg.swaps_absorbed = 1;
      pg.exchanges = true;
      placed.gates.push_back(std::move(pg));
    }
  }

  if (append_measurements) {
    const std::vector<int>& last = result.mapping.back();
    for (int q = 0; q < circuit.num_qubits(); ++q) {
      if (circuit.is_measured(q)) continue;
      PlacedGate pg;
      pg.label = "M";
      pg.kind = GateKind::Measure;
      pg.qubits = {last[static_cast<std::size_t>(q)]};
      pg.barrier = true;
      placed.gates.push_back(std::move(pg));
    }
  }
  return placed;
}

namespace {

bool same_pair(const PlacedGate& a, const PlacedGate& b) {
  return a.is_two_qubit() && b.is_two_qubit() && a.touches(b.qubits[0]) &&
         a.touches(b.qubits[1]);
}

std::optional<std::string> merged_label(const std::string& a,
                                        const std::string& b) {
  if (a == "ZZ" && b == "ZZ") return "ZZ";
  auto generic = [](const std::string& s) { return s == "U4" || s == "SWAP"; };
  if (generic(a) || generic(b)) return "U4";
  return std::nullopt;
}

}  // namespace

PlacedCircuit absorb_gates(const PlacedCircuit& placed) {
  PlacedCircuit out = placed;
  std::vector<PlacedGate>& gates = out.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (!gates[i].is_two_qubit()) continue;
      std::size_t j = i + 1;
      while (j < gates.size() && !gates[j].touches(gates[i].qubits[0]) &&
             !gates[j].touches(gates[i].qubits[1])) {
        ++j;
      }
      if (j == gates.size() || !same_pair(gates[i], gates[j])) continue;
      std::optional<std::string> label =
          merged_label(gates[i].label, gates[j].label);
      if (!label) continue;
      PlacedGate& a = gates[i];
      const PlacedGate& b = gates[j];
      a.label = *label;
      a.kind = GateKind::TwoQubit;
      a.sources.insert(a.sources.end(), b.sources.begin(), b.sources.end());
      a.swaps_absorbed += b.swaps_absorbed;
      a.exchanges = a.exchanges != b.exchanges;
      gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
      --i;  // retry the merged gate against its new successor
    }
  }
  return out;
}

DecompositionTable default_decomposition_table() {
  DecompositionTable t;
  t["ZZ"] = {2, 3};
  t["U4"] = {3, 4};
  t["SWAP"] = {3, 4};
  for (const char* label :
       {"H", "X", "Y", "Z", "S", "SDG", "T", "TDG", "V", "RX", "RY", "RZ", "U3"}) {
    t[label] = {0, 1};
  }
  return t;
}

DecompositionTable decomposition_table_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("decomposition table must be an object");
  DecompositionTable t;
  for (const auto& [label, rule] : doc.items()) {
    try {
      DecompositionRule r{rule.at("two_qubit").get<int>(),
                          rule.at("one_qubit_layers").get<int>()};
      if (r.two_qubit_natives < 0 || r.one_qubit_layers < 0) {
        throw InputError("counts must be non-negative");
      }
      t[label] = r;
    } catch (const nlohmann::json::exception& e) {
      throw InputError("decomposition entry '" + label + "': " + e.what());
    } catch (const InputError& e) {
      throw InputError("decomposition entry '" + label + "': " + e.what());
    }
  }
  return t;
}

nlohmann::json decomposition_table_to_json(const DecompositionTable& table) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [label, r] : table) {
    doc[label] = {{"two_qubit", r.two_qubit_natives},
                  {"one_qubit_layers", r.one_qubit_layers}};
  }
  return doc;
}

DecompositionTable load_decomposition_table(const std::filesystem::path& path) {
  return decomposition_table_from_json(read_json_file(path));
}

std::string to_string(NativeKind kind) {
  switch (kind) {
    case NativeKind::Native2Q: return "native_2q";
    case NativeKind::Native1Q: return "native_1q";
    case NativeKind::Measurement: return "measurement";
  }
  return "?";
}

std::size_t NativeCircuit::count(NativeKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      ops.begin(), ops.end(), [&](const NativeOp& op) { return op.kind == kind; }));
}

NativeCircuit decompose(const PlacedCircuit& placed,
                        const DecompositionTable& table,
                        const GateDurations& durations) {
  NativeCircuit out;
  out.num_physical = placed.graph.num_vertices();
  out.num_logical = placed.num_logical;

  std::vector<int> holder(static_cast<std::size_t>(out.num_physical), -1);
  for (int q = 0; q < placed.num_logical; ++q) {
    holder.at(static_cast<std::size_t>(placed.initial_layout.at(
        static_cast<std::size_t>(q)))) = q;
  }
  std::vector<int> last(static_cast<std::size_t>(out.num_physical), -1);
  std::map<int, int> measurement_op;  // original Measure id -> op index
  std::vector<int> frontier;

  for (std::size_t gi = 0; gi < placed.gates.size(); ++gi) {
    const PlacedGate& g = placed.gates[gi];
    for (int v : g.qubits) {
      if (v < 0 || v >= out.num_physical) {
        throw InputError("placed gate on unknown vertex " + std::to_string(v));
      }
    }
    std::vector<int> owners;
    for (int v : g.qubits) {
      int q = holder[static_cast<std::size_t>(v)];
      if (q >= 0) owners.push_back(q);
    }
    std::vector<int> extra_deps;
    if (g.control_source) {
      auto it = measurement_op.find(*g.control_source);
      if (it == measurement_op.end()) {
        throw InputError("controlled gate precedes its measurement");
      }
      extra_deps.push_back(it->second);
    }
    if (g.barrier) {
      // Consecutive barrier gates form one layer behind the same frontier.
      if (gi == 0 || !placed.gates[gi - 1].barrier) frontier = last;
      for (int prev : frontier) {
        if (prev >= 0) extra_deps.push_back(prev);
      }
    }

    auto emit = [&](NativeKind kind, std::vector<int> qubits, double duration) {
      NativeOp op;
      op.kind = kind;
      op.duration_ns = duration;
      for (int v : qubits) {
        int prev = last[static_cast<std::size_t>(v)];
        if (prev >= 0 &&
            std::find(op.deps.begin(), op.deps.end(), prev) == op.deps.end()) {
          op.deps.push_back(prev);
        }
      }
      op.deps.insert(op.deps.end(), extra_deps.begin(), extra_deps.end());
      extra_deps.clear();
      std::sort(op.deps.begin(), op.deps.end());
      op.deps.erase(std::unique(op.deps.begin(), op.deps.end()), op.deps.end());
      op.qubits = std::move(qubits);
      op.owners = owners;
      op.source = static_cast<int>(gi);
      int index = static_cast<int>(out.ops.size());
      for (int v : op.qubits) last[static_cast<std::size_t>(v)] = index;
      out.ops.push_back(std::move(op));
      return index;
    };

    if (g.kind == GateKind::Measure) {
      int index = emit(NativeKind::Measurement, g.qubits, durations.measure_ns);
      for (int id : g.sources) measurement_op[id] = index;
      continue;
    }
    auto rule = table.find(g.label);
    if (rule == table.end()) {
      throw InputError("no decomposition rule for gate label '" + g.label + "'");
    }
    const DecompositionRule& r = rule->second;
    if (!g.is_two_qubit() && r.two_qubit_natives > 0) {
      throw InputError("single-qubit gate '" + g.label +
                       "' decomposes into two-qubit natives");
    }
    int rounds = std::max(r.two_qubit_natives, r.one_qubit_layers);
    for (int k = 0; k < rounds; ++k) {
      if (k < r.one_qubit_layers) {
        for (int v : g.qubits) emit(NativeKind::Native1Q, {v}, durations.one_qubit_ns);
      }
      if (k < r.two_qubit_natives) {
        emit(NativeKind::Native2Q, g.qubits, durations.two_qubit_ns);
      }
    }
    if (g.is_two_qubit() && g.exchanges) {
      std::swap(holder[static_cast<std::size_t>(g.qubits[0])],
                holder[static_cast<std::size_t>(g.qubits[1])]);
    }
  }
  return out;
}

ScheduledCircuit schedule(const NativeCircuit& native) {
  const std::size_t n = native.ops.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int d : native.ops[i].deps) {
      if (d < 0 || static_cast<std::size_t>(d) >= n ||
          static_cast<std::size_t>(d) == i) {
        throw InputError("op " + std::to_string(i) + " has an invalid dependency");
      }
      succ[static_cast<std::size_t>(d)].push_back(static_cast<int>(i));
      ++indegree[i];
    }
  }
  // Kahn's algorithm, smallest index first.
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(static_cast<int>(i));
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int s : succ[static_cast<std::size_t>(i)]) {
      if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push(s);
    }
  }
  if (order.size() != n) throw InputError("dependency graph has a cycle");

  ScheduledCircuit out;
  out.circuit = native;
  out.op_moment.assign(n, -1);
  std::vector<std::set<int>> busy;
  for (int i : order) {
    const NativeOp& op = native.ops[static_cast<std::size_t>(i)];
    int m = 0;
    for (int d : op.deps) {
      m = std::max(m, out.op_moment[static_cast<std::size_t>(d)] + 1);
    }
    auto clashes = [&](int moment) {
      if (static_cast<std::size_t>(moment) >= busy.size()) return false;
      const std::set<int>& used = busy[static_cast<std::size_t>(moment)];
      return std::any_of(op.qubits.begin(), op.qubits.end(),
                         [&](int v) { return used.count(v) > 0; });
    };
    while (clashes(m)) ++m;
    if (static_cast<std::size_t>(m) >= busy.size()) {
      busy.resize(static_cast<std::size_t>(m) + 1);
      out.moments.resize(static_cast<std::size_t>(m) + 1);
    }
    busy[static_cast<std::size_t>(m)].insert(op.qubits.begin(), op.qubits.end());
    out.moments[static_cast<std::size_t>(m)].push_back(i);
    out.op_moment[static_cast<std::size_t>(i)] = m;
  }

  double t = 0.0;
  for (auto& moment : out.moments) {
    std::sort(moment.begin(), moment.end());
    double d = 0.0;
    for (int i : moment) d = std::max(d, native.ops[static_cast<std::size_t>(i)].duration_ns);
    out.moment_start.push_back(t);
    out.moment_duration.push_back(d);
    t += d;
  }
  out.total_duration = t;
  return out;
}

std::vector<double> idle_times(const ScheduledCircuit& schedule,
                               LifetimeMode mode) {
  const NativeCircuit& c = schedule.circuit;
  const std::size_t nq = static_cast<std::size_t>(c.num_logical);
  std::vector<double> end(nq, schedule.total_duration);
  if (mode == LifetimeMode::UntilMeasurement) {
    std::vector<bool> measured(nq, false);
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
      const NativeOp& op = c.ops[i];
      if (op.kind != NativeKind::Measurement) continue;
      for (int q : op.owners) {
        end[static_cast<std::size_t>(q)] = schedule.op_end(static_cast<int>(i));
        measured[static_cast<std::size_t>(q)] = true;
      }
    }
    for (std::size_t q = 0; q < nq; ++q) {
      if (!measured[q]) {
        throw InputError("logical qubit " + std::to_string(q) +
                         " is never measured");
      }
    }
  }
  std::vector<double> busy(nq, 0.0);
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const NativeOp& op = c.ops[i];
    for (int q : op.owners) {
      if (schedule.op_end(static_cast<int>(i)) <= end[static_cast<std::size_t>(q)]) {
        busy[static_cast<std::size_t>(q)] += op.duration_ns;
      }
    }
  }
  std::vector<double> idle(nq);
  for (std::size_t q = 0; q < nq; ++q) idle[q] = (end[q] - busy[q]) / 1000.0;
  return idle;
}

nlohmann::json schedule_to_json(const ScheduledCircuit& schedule) {
  nlohmann::json moments = nlohmann::json::array();
  for (std::size_t m = 0; m < schedule.moments.size(); ++m) {
    nlohmann::json ops = nlohmann::json::array();
    for (int i : schedule.moments[m]) {
      const NativeOp& op = schedule.circuit.ops[static_cast<std::size_t>(i)];
      ops.push_back({{"op", i},
                     {"kind", to_string(op.kind)},
                     {"qubits", op.qubits},
                     {"owners", op.owners},
                     {"duration_ns", op.duration_ns}});
    }
    moments.push_back({{"start_ns", schedule.moment_start[m]},
                       {"duration_ns", schedule.moment_duration[m]},
                       {"ops", ops}});
  }
  return {{"total_duration_ns", schedule.total_duration}, {"moments", moments}};
}

}  // namespace qarch
