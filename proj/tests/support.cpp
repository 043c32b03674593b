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


#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace qarch::testing {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Circuit random_circuit(std::mt19937_64& rng, int qubits, int gates,
                       int one_qubit_weight) {
  // A gate is single-qubit with probability w / (w + 2).
  Circuit c(qubits);
  for (int i = 0; i < gates; ++i) {
    if (qubits >= 2 && uniform(rng, 0, 1 + one_qubit_weight) > one_qubit_weight - 1) {
      const int a = uniform(rng, 0, qubits - 1);
      int b = uniform(rng, 0, qubits - 2);
      if (b >= a) ++b;
      c.add_two_qubit("ZZ", a, b);
    } else {
      c.add_one_qubit("H", uniform(rng, 0, qubits - 1));
    }
  }
  return c;
}

TinyInstance random_tiny_instance(std::mt19937_64& rng) {
  TinyInstance inst;
  const int n = uniform(rng, 3, 6);
  std::vector<Vertex> vertices;
  for (int v = 0; v < n; ++v) vertices.push_back({v, v % 3, v / 3});
  // Random spanning tree, then a few extra couplings.
  std::set<Edge> fixed;
  for (int v = 1; v < n; ++v) fixed.emplace(v, uniform(rng, 0, v - 1));
  std::vector<Edge> spare;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!fixed.count(Edge(a, b))) spare.emplace_back(a, b);
    }
  }
  std::shuffle(spare.begin(), spare.end(), rng);
  // Sparse couplings with nearly every vertex occupied force routing.
  const int extra = std::min<int>(uniform(rng, 0, 3) == 0 ? 1 : 0,
                                  static_cast<int>(spare.size()));
  for (int i = 0; i < extra; ++i) fixed.insert(spare[static_cast<std::size_t>(i)]);
  spare.erase(spare.begin(), spare.begin() + extra);
  const int flex = std::min<int>(uniform(rng, 0, 3), static_cast<int>(spare.size()));

  inst.space.base = CouplingGraph(vertices, {fixed.begin(), fixed.end()});
  inst.space.flexible.assign(spare.begin(), spare.begin() + flex);
  std::sort(inst.space.flexible.begin(), inst.space.flexible.end());
  if (flex >= 2 && uniform(rng, 0, 1) == 1) inst.space.collisions.emplace_back(0, 1);
  inst.space.validate();

  const int qubits = std::max(2, std::min(5, n - uniform(rng, 0, 1)));
  inst.circuit = random_circuit(rng, qubits, uniform(rng, 4, 6), 0);
  inst.depth = uniform(rng, 1, 2);
  inst.alpha = uniform(rng, 0, flex);
  return inst;
}

std::optional<int> solver_min_swaps(const Circuit& circuit,
                                    const ArchitectureSpace& space, int depth,
                                    std::optional<int> alpha) {
  LayoutEncoding enc(circuit, space, depth + 1);
  if (enc.check(depth, alpha, std::nullopt) == sat::Status::Unsat) {
    return std::nullopt;
  }
  for (int limit = 0;; ++limit) {
    const sat::Status st = enc.check(depth, alpha, limit);
    if (st == sat::Status::Unknown) throw std::runtime_error("solver gave up");
    if (st == sat::Status::Sat) {
      const SynthesisResult r = enc.extract(depth);
      const ValidationVerdict v = validate_result(circuit, space, r, alpha);
      if (!v.ok()) {
        throw std::runtime_error("invalid model: " + to_string(v.violation) +
                                 ": " + v.witness);
      }
      if (r.swap_count > limit) throw std::runtime_error("swap bound ignored");
      return r.swap_count;
    }
  }
}

ArchitectureSpace fixed_space(const CouplingGraph& graph) {
  ArchitectureSpace s;
  s.base = graph;
  return s;
}

CouplingGraph line_graph(int n) {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    vertices.push_back({v, v, 0});
    if (v > 0) edges.emplace_back(v - 1, v);
  }
  return CouplingGraph(vertices, edges);
}

int edge_distance_by_bfs(const CouplingGraph& g, const Edge& a, const Edge& b) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::queue<int> queue;
  for (int s : {a.u, a.v}) {
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push(s);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (const Edge& e : g.edges()) {
      if (!e.touches(v)) continue;
      const int w = e.other(v);
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push(w);
      }
    }
  }
  int best = -1;
  for (int t : {b.u, b.v}) {
    const int d = dist[static_cast<std::size_t>(t)];
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

std::vector<double> reference_gate_fidelities(const ScheduledCircuit& s,
                                              const CouplingGraph& g,
                                              const NoiseParams& p) {
  const auto& ops = s.circuit.ops;
  std::vector<double> out;
  for (const auto& moment : s.moments) {
    for (int i : moment) {
      if (ops[static_cast<std::size_t>(i)].kind != NativeKind::Native2Q) continue;
      const auto& qi = ops[static_cast<std::size_t>(i)].qubits;
      double f = 1.0 - p.p_g;
      for (int j : moment) {
        if (j == i || ops[static_cast<std::size_t>(j)].kind != NativeKind::Native2Q) continue;
        const auto& qj = ops[static_cast<std::size_t>(j)].qubits;
        const int d = edge_distance_by_bfs(g, Edge(qi[0], qi[1]), Edge(qj[0], qj[1]));
        if (d >= 1 && d <= p.n_max) f -= p.p_ct_1 * std::pow(p.decay_base, -(d - 1));
      }
      out.push_back(std::max(f, 0.0));
    }
  }
  return out;
}

std::string data_path(const std::string& name) {
  return std::string(QARCH_DATA_DIR) + "/" + name;
}

std::string cli_path() { return QARCH_CLI_PATH; }

}  // namespace qarch::testing
