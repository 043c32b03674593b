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
#include <vector>

#include "qarch/sat.hpp"

namespace qarch::sat {
namespace {

using Clause = std::vector<Lit>;

bool satisfies(const std::vector<Clause>& cnf, std::uint32_t assignment) {
  for (const Clause& c : cnf) {
    bool ok = false;
    for (Lit l : c) ok = ok || (((assignment >> l.var()) & 1u) != 0) != l.negative();
    if (!ok) return false;
  }
  return true;
}

bool brute_force_sat(const std::vector<Clause>& cnf, int vars,
                     const std::vector<Lit>& assumptions = {}) {
  for (std::uint32_t a = 0; a < (1u << vars); ++a) {
    bool ok = true;
    for (Lit l : assumptions) ok = ok && (((a >> l.var()) & 1u) != 0) != l.negative();
    if (ok && satisfies(cnf, a)) return true;
  }
  return false;
}

std::vector<Clause> random_cnf(std::mt19937_64& rng, int vars, int clauses) {
  std::uniform_int_distribution<int> var(0, vars - 1);
  std::uniform_int_distribution<int> len(1, 3);
  std::bernoulli_distribution sign(0.5);
  std::vector<Clause> cnf;
  for (int i = 0; i < clauses; ++i) {
    Clause c;
    const int k = len(rng);
    for (int j = 0; j < k; ++j) c.push_back(Lit::make(var(rng), sign(rng)));
    cnf.push_back(c);
  }
  return cnf;
}

TEST(Sat, RandomCnfAgreesWithEnumeration) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 400; ++round) {
    const int vars = 3 + round % 10;
    const auto cnf = random_cnf(rng, vars, vars * 4);
    Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const Clause& c : cnf) s.add_clause(c);
    const Status st = s.solve();
    ASSERT_NE(st, Status::Unknown);
    EXPECT_EQ(st == Status::Sat, brute_force_sat(cnf, vars)) << "round " << round;
    if (st == Status::Sat) {
      std::uint32_t a = 0;
      for (int v = 0; v < vars; ++v) a |= (s.model_value(v) ? 1u : 0u) << v;
      EXPECT_TRUE(satisfies(cnf, a));
    }
  }
}

TEST(Sat, IncrementalAssumptionsAgreeWithEnumeration) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 100; ++round) {
    const int vars = 8;
    auto cnf = random_cnf(rng, vars, 20);
    Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const Clause& c : cnf) s.add_clause(c);
    for (int probe = 0; probe < 6; ++probe) {
      std::vector<Lit> assumptions;
      for (int v = 0; v < vars; ++v) {
        if (rng() % 3 == 0) assumptions.push_back(Lit::make(v, rng() % 2 == 0));
      }
      const Status st = s.solve(assumptions);
      EXPECT_EQ(st == Status::Sat, brute_force_sat(cnf, vars, assumptions));
      // Grow the formula between calls.
      auto extra = random_cnf(rng, vars, 1);
      cnf.push_back(extra[0]);
      s.add_clause(extra[0]);
    }
  }
}

void pigeonhole(Solver& s, int pigeons, int holes) {
  std::vector<std::vector<Lit>> x(pigeons);
  for (int p = 0; p < pigeons; ++p) {
    for (int h = 0; h < holes; ++h) x[p].push_back(Lit::make(s.new_var()));
    s.add_clause(x[p]);
  }
  for (int h = 0; h < holes; ++h) {
    for (int a = 0; a < pigeons; ++a) {
      for (int b = a + 1; b < pigeons; ++b) s.add_clause({~x[a][h], ~x[b][h]});
    }
  }
}

TEST(Sat, PigeonholeIsUnsatisfiable) {
  Solver s;
  pigeonhole(s, 6, 5);
  EXPECT_EQ(s.solve(), Status::Unsat);
  Solver t;
  pigeonhole(t, 5, 5);
  EXPECT_EQ(t.solve(), Status::Sat);
}

TEST(Sat, TimeBudgetYieldsUnknown) {
  Solver s;
  pigeonhole(s, 11, 10);
  s.set_time_budget(std::chrono::milliseconds(0));
  EXPECT_EQ(s.solve(), Status::Unknown);
}

TEST(Sat, DeterministicAcrossRuns) {
  // Planted 3-SAT: every clause agrees with a hidden assignment.
  std::mt19937_64 rng(9);
  std::vector<bool> hidden(40);
  for (int v = 0; v < 40; ++v) hidden[v] = rng() % 2 == 0;
  std::vector<Clause> cnf;
  while (cnf.size() < 160) {
    Clause c;
    for (int j = 0; j < 3; ++j) c.push_back(Lit::make(static_cast<int>(rng() % 40), rng() % 2 == 0));
    bool agrees = false;
    for (Lit l : c) agrees = agrees || hidden[l.var()] != l.negative();
    if (agrees) cnf.push_back(c);
  }
  std::vector<bool> first;
  for (int run = 0; run < 2; ++run) {
    Solver s;
    for (int v = 0; v < 40; ++v) s.new_var();
    for (const Clause& c : cnf) s.add_clause(c);
    ASSERT_EQ(s.solve(), Status::Sat);
    std::vector<bool> model;
    for (int v = 0; v < 40; ++v) model.push_back(s.model_value(v));
    if (run == 0) first = model;
    else EXPECT_EQ(model, first);
  }
}

TEST(Sat, EmptyClauseMakesSolverUnsat) {
  Solver s;
  const int v = s.new_var();
  s.add_clause({Lit::make(v)});
  s.add_clause({Lit::make(v, true)});
  EXPECT_EQ(s.solve(), Status::Unsat);
  EXPECT_FALSE(s.okay());
}

}  // namespace
}  // namespace qarch::sat
