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

#include <optional>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"

namespace qarch {

/// Exhaustive minimum SWAP count for running `circuit` on `graph` within
/// `depth` transitions: every injective initial mapping times every
/// sequence of vertex-disjoint swap layers. Shares no code with the SAT
/// encoding. Returns nullopt when no layout exists.
///
/// Limited to 5 logical qubits, 6 gates, 6 vertices and depth 2.
std::optional<int> brute_force_min_swaps(const Circuit& circuit,
                                         const CouplingGraph& graph, int depth);

/// Minimum over every collision-free subset of at most `alpha` flexible
/// edges of `brute_force_min_swaps` on the activated graph.
std::optional<int> brute_force_min_swaps(const Circuit& circuit,
                                         const ArchitectureSpace& space,
                                         int alpha, int depth);

}  // namespace qarch
