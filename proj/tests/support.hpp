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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"
#include "qarch/fidelity.hpp"
#include "qarch/postopt.hpp"
#include "qarch/synthesis.hpp"

namespace qarch::testing {

struct TinyInstance {
  Circuit circuit{1};
  ArchitectureSpace space;
  int depth = 0;
  int alpha = 0;
};

/// Random connected graph on `n` vertices laid out on a 3-column grid of
/// coordinates, with a few spare pairs offered as flexible edges.
TinyInstance random_tiny_instance(std::mt19937_64& rng);

/// Random circuit over `qubits` logical qubits with `gates` gates, roughly
/// two thirds of them two-qubit ZZ gates.
Circuit random_circuit(std::mt19937_64& rng, int qubits, int gates,
                       int one_qubit_weight = 1);

/// Minimum swap count from the raw encoding by a linear scan over the swap
/// limit; nullopt when unsatisfiable. Every model is checked with
/// validate_result.
std::optional<int> solver_min_swaps(const Circuit& circuit,
                                    const ArchitectureSpace& space, int depth,
                                    std::optional<int> alpha);

/// Space with the given base graph and no flexible edges.
ArchitectureSpace fixed_space(const CouplingGraph& graph);

CouplingGraph line_graph(int n);

/// Hop distance between two couplings by a BFS over the raw edge list from
/// both endpoints of `a`; -1 when unreachable.
int edge_distance_by_bfs(const CouplingGraph& g, const Edge& a, const Edge& b);

/// Two-qubit gate fidelities recomputed moment by moment without distance
/// tables, in the same order as gate_fidelities reports them.
std::vector<double> reference_gate_fidelities(const ScheduledCircuit& s,
                                              const CouplingGraph& g,
                                              const NoiseParams& p);

std::string data_path(const std::string& name);
std::string cli_path();

}  // namespace qarch::testing
