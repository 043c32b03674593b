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
#include <set>

#include "qarch/error.hpp"
#include "qarch/postopt.hpp"
#include "support.hpp"

namespace qarch {
namespace {

PlacedGate two(const std::string& label, int a, int b) {
  PlacedGate g;
  g.label = label;
  g.kind = GateKind::TwoQubit;
  g.qubits = {a, b};
  if (label == "SWAP") {
    g.swaps_absorbed = 1;
    g.exchanges = true;
  }
  return g;
}

PlacedGate one(const std::string& label, int v) {
  PlacedGate g;
  g.label = label;
  g.qubits = {v};
  return g;
}

PlacedCircuit on_line(int n, std::vector<PlacedGate> gates) {
  PlacedCircuit p;
  p.graph = testing::line_graph(n);
  p.num_logical = n;
  for (int q = 0; q < n; ++q) p.initial_layout.push_back(q);
  p.gates = std::move(gates);
  return p;
}

TEST(Absorption, ZzThenSwapBecomesOneU4) {
  const PlacedCircuit p = on_line(2, {two("ZZ", 0, 1), two("SWAP", 1, 0)});
  EXPECT_EQ(decompose(p).count(NativeKind::Native2Q), 5u);
  const PlacedCircuit a = absorb_gates(p);
  ASSERT_EQ(a.gates.size(), 1u);
  EXPECT_EQ(a.gates[0].label, "U4");
  EXPECT_TRUE(a.gates[0].exchanges);
  EXPECT_EQ(decompose(a).count(NativeKind::Native2Q), 3u);
  const PlacedCircuit again = absorb_gates(a);
  ASSERT_EQ(again.gates.size(), a.gates.size());
  EXPECT_EQ(again.gates[0].label, a.gates[0].label);
}

TEST(Absorption, MergeRules) {
  auto merged = [](std::vector<PlacedGate> gates) {
    return absorb_gates(on_line(3, std::move(gates))).gates;
  };
  auto zz = merged({two("ZZ", 0, 1), two("ZZ", 0, 1)});
  ASSERT_EQ(zz.size(), 1u);
  EXPECT_EQ(zz[0].label, "ZZ");

  auto swaps = merged({two("SWAP", 0, 1), two("SWAP", 0, 1)});
  ASSERT_EQ(swaps.size(), 1u);
  EXPECT_EQ(swaps[0].label, "U4");
  EXPECT_FALSE(swaps[0].exchanges);
  EXPECT_EQ(swaps[0].swaps_absorbed, 2);

  // An intervening gate on either qubit blocks the merge.
  EXPECT_EQ(merged({two("ZZ", 0, 1), one("H", 1), two("SWAP", 0, 1)}).size(), 3u);
  EXPECT_EQ(merged({two("ZZ", 0, 1), two("ZZ", 1, 2), two("ZZ", 0, 1)}).size(), 3u);
  // A gate on an unrelated qubit does not.
  EXPECT_EQ(merged({two("ZZ", 0, 1), one("H", 2), two("SWAP", 0, 1)}).size(), 2u);

  auto chain = merged({two("ZZ", 0, 1), two("ZZ", 1, 0), two("SWAP", 0, 1)});
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].label, "U4");
}

TEST(Decompose, LayersAndCounts) {
  const PlacedCircuit p = on_line(2, {two("ZZ", 0, 1), one("H", 0)});
  const NativeCircuit n = decompose(p);
  EXPECT_EQ(n.count(NativeKind::Native2Q), 2u);
  EXPECT_EQ(n.count(NativeKind::Native1Q), 3u * 2 + 1);
  // 1q layer first, then alternate.
  EXPECT_EQ(n.ops[0].kind, NativeKind::Native1Q);
  EXPECT_EQ(n.ops[1].kind, NativeKind::Native1Q);
  EXPECT_EQ(n.ops[2].kind, NativeKind::Native2Q);
  EXPECT_EQ(n.ops[2].deps, (std::vector<int>{0, 1}));
}

TEST(Decompose, UnknownLabelIsAnInputError) {
  EXPECT_THROW(decompose(on_line(2, {two("CPHASE", 0, 1)})), InputError);
}

TEST(Decompose, OwnersFollowSwaps) {
  // Logical 0 starts on vertex 0 and moves to vertex 1 after the SWAP.
  const PlacedCircuit p = on_line(3, {two("SWAP", 0, 1), one("H", 1), one("H", 0)});
  const NativeCircuit n = decompose(p);
  const NativeOp& h1 = n.ops[n.ops.size() - 2];
  const NativeOp& h0 = n.ops.back();
  EXPECT_EQ(h1.owners, std::vector<int>{0});
  EXPECT_EQ(h0.owners, std::vector<int>{1});
}

TEST(Decompose, TableJsonRoundTrip) {
  const DecompositionTable t = default_decomposition_table();
  EXPECT_EQ(decomposition_table_from_json(decomposition_table_to_json(t)), t);
  EXPECT_THROW(decomposition_table_from_json({{"ZZ", {{"two_qubit", -1}, {"one_qubit_layers", 1}}}}),
               InputError);
}

TEST(Schedule, IdleTimeHandCase) {
  NativeCircuit n;
  n.num_physical = 2;
  n.num_logical = 2;
  n.ops.push_back({NativeKind::Native1Q, {0}, 25.0, {}, {0}, -1});
  n.ops.push_back({NativeKind::Measurement, {1}, 4000.0, {0}, {1}, -1});
  const ScheduledCircuit s = schedule(n);
  ASSERT_EQ(s.moments.size(), 2u);
  EXPECT_DOUBLE_EQ(s.total_duration, 4025.0);
  const auto idle = idle_times(s, LifetimeMode::WholeCircuit);
  EXPECT_DOUBLE_EQ(idle[0], 4.0);
  EXPECT_DOUBLE_EQ(idle[1], 0.025);
  EXPECT_THROW(idle_times(s, LifetimeMode::UntilMeasurement), InputError);
}

TEST(Schedule, LifetimeEndsAtMeasurement) {
  NativeCircuit n;
  n.num_physical = 2;
  n.num_logical = 2;
  n.ops.push_back({NativeKind::Measurement, {0}, 4000.0, {}, {0}, -1});
  n.ops.push_back({NativeKind::Native1Q, {1}, 25.0, {0}, {1}, -1});
  n.ops.push_back({NativeKind::Measurement, {1}, 4000.0, {1}, {1}, -1});
  const ScheduledCircuit s = schedule(n);
  const auto idle = idle_times(s, LifetimeMode::UntilMeasurement);
  EXPECT_DOUBLE_EQ(idle[0], 0.0);
  EXPECT_DOUBLE_EQ(idle[1], 4.0);
  const auto whole = idle_times(s, LifetimeMode::WholeCircuit);
  EXPECT_DOUBLE_EQ(whole[0], 4.025);
}

TEST(Schedule, CycleIsAnInputError) {
  NativeCircuit n;
  n.num_physical = 1;
  n.ops.push_back({NativeKind::Native1Q, {0}, 25.0, {1}, {}, -1});
  n.ops.push_back({NativeKind::Native1Q, {0}, 25.0, {0}, {}, -1});
  EXPECT_THROW(schedule(n), InputError);
}

// Checks the ASAP property directly: dependencies land in earlier moments,
// no vertex is used twice in a moment, and no op could move one moment
// earlier.
TEST(Schedule, AsapPropertiesOnRandomCircuits) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 50; ++round) {
    const int nv = 2 + round % 6;
    NativeCircuit n;
    n.num_physical = nv;
    std::vector<int> last(nv, -1);
    for (int i = 0; i < 40; ++i) {
      NativeOp op;
      const int a = static_cast<int>(rng() % nv);
      op.qubits = {a};
      if (rng() % 2 && nv > 1) {
        int b = static_cast<int>(rng() % (nv - 1));
        if (b >= a) ++b;
        op.qubits.push_back(b);
        op.kind = NativeKind::Native2Q;
        op.duration_ns = 10;
      } else {
        op.kind = NativeKind::Native1Q;
        op.duration_ns = 25;
      }
      for (int v : op.qubits) {
        if (last[v] >= 0) op.deps.push_back(last[v]);
      }
      if (i > 0 && rng() % 5 == 0) op.deps.push_back(static_cast<int>(rng() % i));
      std::sort(op.deps.begin(), op.deps.end());
      op.deps.erase(std::unique(op.deps.begin(), op.deps.end()), op.deps.end());
      for (int v : op.qubits) last[v] = i;
      n.ops.push_back(op);
    }
    const ScheduledCircuit s = schedule(n);
    for (const auto& moment : s.moments) {
      std::set<int> used;
      for (int i : moment) {
        for (int v : n.ops[i].qubits) EXPECT_TRUE(used.insert(v).second);
      }
    }
    for (std::size_t i = 0; i < n.ops.size(); ++i) {
      const int m = s.op_moment[i];
      int earliest = 0;
      for (int d : n.ops[i].deps) {
        EXPECT_LT(s.op_moment[d], m);
        earliest = std::max(earliest, s.op_moment[d] + 1);
      }
      EXPECT_GE(m, earliest);
      // Every skipped moment must have been blocked by an op that was
      // scheduled before this one.
      for (int k = earliest; k < m; ++k) {
        bool blocked = false;
        for (int j : s.moments[k]) {
          for (int v : n.ops[j].qubits) {
            for (int w : n.ops[i].qubits) blocked = blocked || v == w;
          }
        }
        EXPECT_TRUE(blocked) << "op " << i << " could run at moment " << k;
      }
    }
    double total = 0;
    for (double d : s.moment_duration) total += d;
    EXPECT_DOUBLE_EQ(total, s.total_duration);
  }
}

TEST(Placed, OrderAndFinalMeasurementLayer) {
  const ArchitectureSpace space = testing::fixed_space(testing::line_graph(3));
  Circuit c(3);
  c.add_two_qubit("ZZ", 0, 1);
  c.add_two_qubit("ZZ", 1, 2);
  c.add_two_qubit("ZZ", 0, 2);
  const auto out = optimize_architecture(c, space);
  const SynthesisResult& r = out.entries[0].result;
  const PlacedCircuit p = make_placed_circuit(c, space, r, true);
  ASSERT_EQ(p.gates.size(), 3u + 1 + 3);
  int measures = 0;
  for (const PlacedGate& g : p.gates) measures += g.kind == GateKind::Measure;
  EXPECT_EQ(measures, 3);
  // The three measurements share one moment after decomposition.
  const ScheduledCircuit s = schedule(decompose(absorb_gates(p)));
  std::set<int> measure_moments;
  for (std::size_t i = 0; i < s.circuit.ops.size(); ++i) {
    if (s.circuit.ops[i].kind == NativeKind::Measurement) {
      measure_moments.insert(s.op_moment[i]);
    }
  }
  EXPECT_EQ(measure_moments.size(), 1u);
  EXPECT_EQ(*measure_moments.begin(), static_cast<int>(s.moments.size()) - 1);
}

TEST(Placed, QcnnControlWaitsForMeasurement) {
  const ArchitectureSpace space = gen_grid_space(3, 3);
  const Circuit c = gen_qcnn(8);
  const auto out = optimize_architecture(c, space, {.max_alpha = 0});
  const PlacedCircuit p = make_placed_circuit(c, space, out.entries[0].result);
  const NativeCircuit n = decompose(absorb_gates(p));
  const ScheduledCircuit s = schedule(n);
  for (std::size_t i = 0; i < n.ops.size(); ++i) {
    for (int d : n.ops[i].deps) EXPECT_LT(s.op_moment[d], s.op_moment[i]);
  }
  EXPECT_EQ(n.count(NativeKind::Measurement), 8u);
  EXPECT_NO_THROW(idle_times(s, LifetimeMode::UntilMeasurement));
}

}  // namespace
}  // namespace qarch
