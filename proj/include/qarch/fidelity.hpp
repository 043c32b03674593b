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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qarch/arch.hpp"
#include "qarch/postopt.hpp"

namespace qarch {

/// Error and coherence parameters of the crosstalk-aware fidelity model.
struct NoiseParams {
  double p_g = 0.009;      ///< isolated two-qubit gate error
  double p_ct_1 = 0.005;   ///< crosstalk error from a gate one hop away
  double decay_base = 10;  ///< r_i = decay_base^-(i-1)
  int n_max = 2;           ///< farthest hop distance with crosstalk
  double f_1 = 0.999;      ///< single-qubit gate fidelity
  double t_1_us = 15.0;
  double t_phi_us = 25.0;
  GateDurations durations;

  /// Relative crosstalk strength at hop distance i; 0 beyond n_max.
  double decay(int i) const;
  void validate() const;
};

nlohmann::json noise_to_json(const NoiseParams& params);
NoiseParams noise_from_json(const nlohmann::json& doc);
NoiseParams load_noise(const std::filesystem::path& path);

struct GateFidelities {
  std::vector<int> ops;         ///< Native2Q op indices, schedule order
  std::vector<double> values;   ///< fidelity of each op in `ops`
  bool clamped = false;         ///< some value fell below 0 and was clamped
};

/// Per-gate fidelity of every native two-qubit op, charging crosstalk from
/// the other two-qubit ops of the same moment by their hop distance.
/// `with_crosstalk = false` gives every op 1 - p_g.
GateFidelities gate_fidelities(const ScheduledCircuit& schedule,
                               const EdgeDistanceTables& tables,
                               const NoiseParams& params,
                               bool with_crosstalk = true);

/// Product of single-qubit, two-qubit and idle decoherence factors. Throws
/// InputError when an idle factor would be negative.
double circuit_fidelity(std::size_t g1, std::span<const double> f_g,
                        std::span<const double> idle_us,
                        const NoiseParams& params);

/// Whether a nearest-neighbour crosstalk rate is below the squared average
/// gate error, the regime in which the crosstalk terms stay small.
bool crosstalk_threshold_ok(double p_ct, double p_ave);

/// Nearest-neighbour crosstalk rate from a parallel benchmark:
/// (p_parallel - p_isolated) / sum_i r_i N_i, with N_i the number of
/// concurrent gates at distance i.
double calibrate_crosstalk(double p_parallel, double p_isolated,
                           std::span<const int> neighbours_at_distance,
                           const NoiseParams& params);

struct FidelityReport {
  double duration_ns = 0.0;
  std::size_t g1 = 0;
  std::size_t native_2q = 0;
  double mean_fg = 1.0;
  double total_idle_us = 0.0;
  double fidelity = 0.0;
  double fidelity_no_crosstalk = 0.0;
  bool clamped = false;
};

FidelityReport evaluate_fidelity(const ScheduledCircuit& schedule,
                                 const CouplingGraph& graph,
                                 const NoiseParams& params, LifetimeMode mode);

}  // namespace qarch
