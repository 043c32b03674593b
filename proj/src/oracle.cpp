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


#include "qarch/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

#include "qarch/error.hpp"

namespace qarch {

namespace {

void all_matchings(const std::vector<Edge>& edges, std::size_t from,
                   std::vector<Edge>& current, std::vector<bool>& busy,
                   std::vector<std::vector<Edge>>& out) {
  out.push_back(current);
  for (std::size_t i = from; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (busy[static_cast<std::size_t>(e.u)] ||
        busy[static_cast<std::size_t>(e.v)]) {
      continue;
    }
    busy[static_cast<std::size_t>(e.u)] = busy[static_cast<std::size_t>(e.v)] = true;
    current.push_back(e);
    all_matchings(edges, i + 1, current, busy, out);
    current.pop_back();
    busy[static_cast<std::size_t>(e.u)] = busy[static_cast<std::size_t>(e.v)] = false;
  }
}

// Greedy earliest-block assignment in gate order; optimal because each
// gate's lower bound only grows with its predecessors' blocks.
bool schedulable(const Circuit& circuit, const CouplingGraph& graph,
                 const std::vector<std::vector<int>>& layouts) {
  const auto& gates = circuit.gates();
  std::vector<int> block(gates.size(), 0);
  std::vector<int> last_on_qubit(static_cast<std::size_t>(circuit.num_qubits()), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    int lo = 0;
    for (int q : g.operands) lo = std::max(lo, last_on_qubit[static_cast<std::size_t>(q)]);
    if (g.control_source) {
      lo = std::max(lo, block[static_cast<std::size_t>(*g.control_source)]);
    }
    int b = lo;
    if (g.is_two_qubit()) {
      while (b < static_cast<int>(layouts.size())) {
        const auto& pi = layouts[static_cast<std::size_t>(b)];
        if (graph.has_edge(Edge(pi[static_cast<std::size_t>(g.operands[0])],
                                pi[static_cast<std::size_t>(g.operands[1])]))) {
          break;
        }
        ++b;
      }
      if (b == static_cast<int>(layouts.size())) return false;
    }
    block[i] = b;
    for (int q : g.operands) last_on_qubit[static_cast<std::size_t>(q)] = b;
  }
  return true;
}

}  // namespace

std::optional<int> brute_force_min_swaps(const Circuit& circuit,
                                         const CouplingGraph& graph,
                                         int depth) {
  const int nq = circuit.num_qubits();
  const int nv = graph.num_vertices();
  if (nq > 5 || circuit.size() > 6 || nv > 6 || depth > 2 || depth < 0) {
    throw InputError("brute-force oracle limited to Q<=5, 6 gates, 6 vertices, T<=2");
  }
  if (nq > nv) return std::nullopt;

  std::vector<std::vector<Edge>> matchings;
  {
    std::vector<Edge> current;
    std::vector<bool> busy(static_cast<std::size_t>(nv), false);
    all_matchings(graph.edges(), 0, current, busy, matchings);
  }

  std::optional<int> best;
  std::vector<int> initial(static_cast<std::size_t>(nq));
  std::vector<bool> taken(static_cast<std::size_t>(nv), false);
  std::vector<std::vector<int>> layouts;

  std::function<void(int)> layers = [&](int swaps_so_far) {
    if (best && swaps_so_far >= *best) return;
    if (schedulable(circuit, graph, layouts)) {
      best = swaps_so_far;
      return;
    }
    if (static_cast<int>(layouts.size()) == depth + 1) return;
    for (const auto& m : matchings) {
      if (m.empty()) continue;
      std::vector<int> next = layouts.back();
      for (int& v : next) {
        for (const Edge& e : m) {
          if (e.touches(v)) {
            v = e.other(v);
            break;
          }
        }
      }
      layouts.push_back(std::move(next));
      layers(swaps_so_far + static_cast<int>(m.size()));
      layouts.pop_back();
    }
  };

  // An empty layer keeps the layout, so sequences with fewer layers cover
  // every placement of empty layers among the `depth` transitions.
  std::function<void(int)> place = [&](int q) {
    if (q == nq) {
      layouts.assign(1, initial);
      layers(0);
      return;
    }
    for (int v = 0; v < nv; ++v) {
      if (taken[static_cast<std::size_t>(v)]) continue;
      taken[static_cast<std::size_t>(v)] = true;
      initial[static_cast<std::size_t>(q)] = v;
      place(q + 1);
      taken[static_cast<std::size_t>(v)] = false;
    }
  };
  place(0);
  return best;
}

std::optional<int> brute_force_min_swaps(const Circuit& circuit,
                                         const ArchitectureSpace& space,
                                         int alpha, int depth) {
  const std::size_t nf = space.flexible.size();
  if (nf > 16) throw InputError("too many flexible edges for enumeration");
  std::optional<int> best;
  for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
    if (std::popcount(mask) > alpha) continue;
    bool collides = false;
    for (auto [a, b] : space.collisions) {
      if ((mask >> a & 1u) && (mask >> b & 1u)) collides = true;
    }
    if (collides) continue;
    std::vector<Edge> used;
    for (std::size_t i = 0; i < nf; ++i) {
      if (mask >> i & 1u) used.push_back(space.flexible[i]);
    }
    const auto r = brute_force_min_swaps(circuit, activate(space, used), depth);
    if (r && (!best || *r < *best)) best = r;
  }
  return best;
}

}  // namespace qarch
