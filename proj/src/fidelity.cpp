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


#include "qarch/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qarch/error.hpp"
#include "qarch/json_io.hpp"

namespace qarch {

double NoiseParams::decay(int i) const {
  if (i < 1 || i > n_max) return 0.0;
  return std::pow(decay_base, -(i - 1));
}

void NoiseParams::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError(std::string(name) + " must lie in [0, 1]");
    }
  };
  probability(p_g, "p_g");
  probability(p_ct_1, "p_ct_1");
  probability(f_1, "f_1");
  if (!(decay_base >= 1.0)) throw InputError("decay_base must be >= 1");
  if (n_max < 0) throw InputError("n_max must be non-negative");
  if (!(t_1_us > 0.0) || !(t_phi_us > 0.0)) {
    throw InputError("coherence times must be positive");
  }
  if (!(durations.two_qubit_ns >= 0.0) || !(durations.one_qubit_ns >= 0.0) ||
      !(durations.measure_ns >= 0.0)) {
    throw InputError("durations must be non-negative");
  }
}

nlohmann::json noise_to_json(const NoiseParams& p) {
  return {{"p_g", p.p_g},
          {"p_ct_1", p.p_ct_1},
          {"decay_base", p.decay_base},
          {"n_max", p.n_max},
          {"f_1", p.f_1},
          {"t_1_us", p.t_1_us},
          {"t_phi_us", p.t_phi_us},
          {"durations_ns",
           {{"two_qubit", p.durations.two_qubit_ns},
            {"one_qubit", p.durations.one_qubit_ns},
            {"measure", p.durations.measure_ns}}}};
}

NoiseParams noise_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("noise parameters must be an object");
  NoiseParams p;
  try {
    p.p_g = doc.value("p_g", p.p_g);
    p.p_ct_1 = doc.value("p_ct_1", p.p_ct_1);
    p.decay_base = doc.value("decay_base", p.decay_base);
    p.n_max = doc.value("n_max", p.n_max);
    p.f_1 = doc.value("f_1", p.f_1);
    p.t_1_us = doc.value("t_1_us", p.t_1_us);
    p.t_phi_us = doc.value("t_phi_us", p.t_phi_us);
    if (doc.contains("durations_ns")) {
      const nlohmann::json& d = doc.at("durations_ns");
      p.durations.two_qubit_ns = d.value("two_qubit", p.durations.two_qubit_ns);
      p.durations.one_qubit_ns = d.value("one_qubit", p.durations.one_qubit_ns);
      p.durations.measure_ns = d.value("measure", p.durations.measure_ns);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("noise parameters: ") + e.what());
  }
  p.validate();
  return p;
}

NoiseParams load_noise(const std::filesystem::path& path) {
  return noise_from_json(read_json_file(path));
}

GateFidelities gate_fidelities(const ScheduledCircuit& schedule,
                               const EdgeDistanceTables& tables,
                               const NoiseParams& params, bool with_crosstalk) {
  if (with_crosstalk && tables.max_distance() < params.n_max) {
    throw InputError("distance tables are shallower than n_max");
  }
  GateFidelities out;
  const auto& ops = schedule.circuit.ops;
  for (const std::vector<int>& moment : schedule.moments) {
    std::vector<int> two_q;
    std::vector<int> edge_ids;
    for (int i : moment) {
      const NativeOp& op = ops[static_cast<std::size_t>(i)];
      if (op.kind != NativeKind::Native2Q) continue;
      Edge e(op.qubits.at(0), op.qubits.at(1));
      std::optional<int> id = tables.index_of(e);
      if (!id) throw InputError("two-qubit op on missing coupling " + to_string(e));
      two_q.push_back(i);
      edge_ids.push_back(*id);
    }
    for (std::size_t a = 0; a < two_q.size(); ++a) {
      double f = 1.0 - params.p_g;
      if (with_crosstalk) {
        for (std::size_t b = 0; b < two_q.size(); ++b) {
          if (a == b) continue;
          std::optional<int> d = tables.distance(edge_ids[a], edge_ids[b]);
          if (d) f -= params.p_ct_1 * params.decay(*d);
        }
      }
      if (f < 0.0) {
        f = 0.0;
        out.clamped = true;
      }
      out.ops.push_back(two_q[a]);
      out.values.push_back(f);
    }
  }
  return out;
}

double circuit_fidelity(std::size_t g1, std::span<const double> f_g,
                        std::span<const double> idle_us,
                        const NoiseParams& params) {
  double f = std::pow(params.f_1, static_cast<double>(g1));
  for (double x : f_g) f *= x;
  const double rate = (1.0 / params.t_1_us + 1.0 / params.t_phi_us) / 3.0;
  for (std::size_t q = 0; q < idle_us.size(); ++q) {
    double factor = 1.0 - rate * idle_us[q];
    if (factor < 0.0) {
      throw InputError("idle time of qubit " + std::to_string(q) +
                       " exceeds the validity range of the decoherence model");
    }
    f *= factor;
  }
  return f;
}

bool crosstalk_threshold_ok(double p_ct, double p_ave) {
  return p_ct < p_ave * p_ave;
}

double calibrate_crosstalk(double p_parallel, double p_isolated,
                           std::span<const int> neighbours_at_distance,
                           const NoiseParams& params) {
  if (p_parallel < p_isolated) {
    throw InputError("parallel error rate is below the isolated rate");
  }
  double weight = 0.0;
  for (std::size_t i = 0; i < neighbours_at_distance.size(); ++i) {
    if (neighbours_at_distance[i] < 0) throw InputError("negative neighbour count");
    weight += params.decay(static_cast<int>(i) + 1) * neighbours_at_distance[i];
  }
  if (!(weight > 0.0)) throw InputError("no concurrent gate within n_max");
  return (p_parallel - p_isolated) / weight;
}

FidelityReport evaluate_fidelity(const ScheduledCircuit& schedule,
                                 const CouplingGraph& graph,
                                 const NoiseParams& params, LifetimeMode mode) {
  params.validate();
  EdgeDistanceTables tables = build_distance_tables(graph, std::max(params.n_max, 1));
  GateFidelities with = gate_fidelities(schedule, tables, params, true);
  GateFidelities without = gate_fidelities(schedule, tables, params, false);
  std::vector<double> idle = idle_times(schedule, mode);

  FidelityReport r;
  r.duration_ns = schedule.total_duration;
  r.g1 = schedule.circuit.count(NativeKind::Native1Q);
  r.native_2q = with.values.size();
  if (!with.values.empty()) {
    r.mean_fg = std::accumulate(with.values.begin(), with.values.end(), 0.0) /
                static_cast<double>(with.values.size());
  }
  r.total_idle_us = std::accumulate(idle.begin(), idle.end(), 0.0);
  r.fidelity = circuit_fidelity(r.g1, with.values, idle, params);
  r.fidelity_no_crosstalk = circuit_fidelity(r.g1, without.values, idle, params);
  r.clamped = with.clamped;
  return r;
}

}  // namespace qarch
