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


#include <gtest/gtest.h>

#include <random>

#include "qarch/error.hpp"
#include "qarch/fidelity.hpp"
#include "support.hpp"

namespace qarch {
namespace {

constexpr double kTol = 1e-12;

ScheduledCircuit one_moment(int vertices, const std::vector<Edge>& gates) {
  NativeCircuit n;
  n.num_physical = vertices;
  for (const Edge& e : gates) {
    n.ops.push_back({NativeKind::Native2Q, {e.u, e.v}, 10.0, {}, {}, -1});
  }
  return schedule(n);
}

double isolated_or_pair(const CouplingGraph& g, std::vector<Edge> gates) {
  const auto s = one_moment(g.num_vertices(), gates);
  return gate_fidelities(s, build_distance_tables(g), NoiseParams{}).values.at(0);
}

TEST(GateFidelity, HandCases) {
  const CouplingGraph line = testing::line_graph(6);
  EXPECT_NEAR(isolated_or_pair(line, {Edge(0, 1)}), 0.991, kTol);
  EXPECT_NEAR(isolated_or_pair(line, {Edge(0, 1), Edge(2, 3)}), 0.986, kTol);
  EXPECT_NEAR(isolated_or_pair(line, {Edge(0, 1), Edge(3, 4)}), 0.9905, kTol);
  EXPECT_NEAR(isolated_or_pair(line, {Edge(0, 1), Edge(4, 5)}), 0.991, kTol);
}

TEST(GateFidelity, ClampsAtZero) {
  NoiseParams p;
  p.p_ct_1 = 0.6;
  const CouplingGraph line = testing::line_graph(6);
  const auto s = one_moment(6, {Edge(0, 1), Edge(2, 3), Edge(4, 5)});
  const auto f = gate_fidelities(s, build_distance_tables(line), p);
  EXPECT_TRUE(f.clamped);
  EXPECT_EQ(f.values[1], 0.0);
}

TEST(GateFidelity, MissingCouplingIsAnInputError) {
  const CouplingGraph line = testing::line_graph(3);
  const auto s = one_moment(3, {Edge(0, 2)});
  EXPECT_THROW(gate_fidelities(s, build_distance_tables(line), NoiseParams{}),
               InputError);
}

TEST(GateFidelity, MatchesTableFreeRecomputation) {
  std::mt19937_64 rng(31);
  const NoiseParams p;
  for (int round = 0; round < 50; ++round) {
    const int n = 4 + static_cast<int>(rng() % 17);
    std::vector<Vertex> vertices;
    for (int v = 0; v < n; ++v) vertices.push_back({v, v, 0});
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 4 == 0) edges.emplace_back(a, b);
    if (edges.empty()) edges.emplace_back(0, 1);
    const CouplingGraph g(vertices, edges);

    NativeCircuit c;
    c.num_physical = n;
    for (int i = 0; i < 30; ++i) {
      const Edge& e = edges[rng() % edges.size()];
      c.ops.push_back({NativeKind::Native2Q, {e.u, e.v}, 10.0, {}, {}, -1});
      if (rng() % 3 == 0) c.ops.push_back({NativeKind::Native1Q, {e.u}, 25.0, {}, {}, -1});
    }
    const ScheduledCircuit s = schedule(c);
    const GateFidelities got = gate_fidelities(s, build_distance_tables(g), p);

    const std::vector<double> expected = testing::reference_gate_fidelities(s, g, p);
    ASSERT_EQ(got.values.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_NEAR(got.values[k], expected[k], kTol);
    }
  }
}

TEST(CircuitFidelity, HandExamples) {
  const NoiseParams p;
  const std::vector<double> fg{0.991};
  EXPECT_NEAR(circuit_fidelity(2, fg, {}, p), 0.999 * 0.999 * 0.991, kTol);
  EXPECT_NEAR(circuit_fidelity(2, fg, {}, p), 0.989018991, 1e-12);
  const std::vector<double> idle{1.0};
  EXPECT_NEAR(circuit_fidelity(0, {}, idle, p), 1.0 - (1.0 / 15 + 1.0 / 25) / 3, kTol);
  EXPECT_NEAR(circuit_fidelity(0, {}, idle, p), 0.964444444444, 1e-12);
  EXPECT_EQ(circuit_fidelity(0, {}, {}, p), 1.0);
  const std::vector<double> huge{100.0};
  EXPECT_THROW(circuit_fidelity(0, {}, huge, p), InputError);
}

TEST(CircuitFidelity, EmptyScheduleIsOne) {
  const FidelityReport r =
      evaluate_fidelity(schedule(NativeCircuit{}), testing::line_graph(2),
                        NoiseParams{}, LifetimeMode::WholeCircuit);
  EXPECT_EQ(r.fidelity, 1.0);
  EXPECT_EQ(r.fidelity_no_crosstalk, 1.0);
}

TEST(Crosstalk, ThresholdAndCalibration) {
  EXPECT_TRUE(crosstalk_threshold_ok(0.00005, 0.009));
  EXPECT_FALSE(crosstalk_threshold_ok(0.005, 0.009));
  const NoiseParams p;
  const std::vector<int> counts{2, 4};
  // (0.03 - 0.01) / (1 * 2 + 0.1 * 4)
  EXPECT_NEAR(calibrate_crosstalk(0.03, 0.01, counts, p), 0.02 / 2.4, kTol);
  EXPECT_THROW(calibrate_crosstalk(0.01, 0.03, counts, p), InputError);
  EXPECT_THROW(calibrate_crosstalk(0.03, 0.01, std::vector<int>{0, 0}, p), InputError);
}

TEST(Noise, JsonRoundTripAndValidation) {
  NoiseParams p;
  p.p_g = 0.02;
  p.durations.measure_ns = 1000;
  const NoiseParams back = noise_from_json(noise_to_json(p));
  EXPECT_EQ(back.p_g, 0.02);
  EXPECT_EQ(back.durations.measure_ns, 1000);
  EXPECT_THROW(noise_from_json({{"p_g", 1.5}}), InputError);
  EXPECT_THROW(noise_from_json({{"t_1_us", 0}}), InputError);
  EXPECT_DOUBLE_EQ(p.decay(1), 1.0);
  EXPECT_DOUBLE_EQ(p.decay(2), 0.1);
  EXPECT_DOUBLE_EQ(p.decay(3), 0.0);
}

TEST(Fidelity, CrosstalkNeverHelps) {
  const ArchitectureSpace space = gen_grid_space(3, 3);
  const Circuit c = gen_qaoa_phase_splitting(gen_random_regular_graph(8, 3, 5));
  const auto out = optimize_architecture(c, space, {.max_alpha = 2});
  for (const auto& e : out.entries) {
    const CouplingGraph g = activate(space, e.used_flexible);
    const auto s = schedule(decompose(absorb_gates(make_placed_circuit(c, space, e.result, true))));
    const auto r = evaluate_fidelity(s, g, NoiseParams{}, LifetimeMode::WholeCircuit);
    EXPECT_GE(r.fidelity_no_crosstalk, r.fidelity);
    EXPECT_GT(r.fidelity, 0.0);
  }
}

}  // namespace
}  // namespace qarch
