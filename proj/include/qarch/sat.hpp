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

#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qarch::sat {

/// Literal over variable `var()`, negated when `negative()`.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit make(int var, bool negative = false) {
    return Lit(2 * var + (negative ? 1 : 0));
  }

  constexpr int var() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1) != 0; }
  constexpr int code() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1); }
  constexpr bool valid() const { return code_ >= 0; }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  constexpr explicit Lit(int code) : code_(code) {}
  int code_ = -1;
};

enum class Status { Sat, Unsat, Unknown };

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

/// Incremental CDCL solver: two watched literals, first-UIP learning with
/// recursive minimization, VSIDS, phase saving, Luby restarts and LBD-based
/// learnt-clause reduction. Assumptions are decided first, so clauses added
/// between calls and retractable assumption literals give nested scopes.
/// Fully deterministic: no randomness anywhere in the search.
class Solver {
 public:
  Solver() = default;

  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  std::size_t num_clauses() const { return num_original_; }
  std::size_t num_learnts() const { return num_learnt_; }

  /// Returns false once the clause set is unsatisfiable at level 0.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Status solve(std::span<const Lit> assumptions = {});
  Status solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Wall-clock limit applied to each subsequent `solve` call.
  void set_time_budget(std::optional<std::chrono::milliseconds> budget) {
    budget_ = budget;
  }

  /// Model access after a Sat answer.
  bool model_value(Lit l) const;
  bool model_value(int var) const { return model_value(Lit::make(var)); }

  bool okay() const { return ok_; }
  const SolverStats& stats() const { return stats_; }

 private:
  using CRef = int;
  static constexpr CRef kNoReason = -1;

  // Literals live contiguously in `pool_`; ids stay stable across
  // compaction.
  struct Clause {
    std::uint32_t start = 0;
    std::uint32_t size = 0;
    float activity = 0.0f;
    int lbd = 0;
    bool learnt = false;
    bool removed = false;
  };

  struct Watcher {
    CRef cref;
    Lit blocker;
  };
  struct BinaryWatcher {
    CRef cref;
    Lit other;
  };

  // lbool encoding: 1 true, -1 false, 0 undefined.
  int value(Lit l) const {
    const int a = assigns_[static_cast<std::size_t>(l.var())];
    return l.negative() ? -a : a;
  }
  int level(int var) const { return level_[static_cast<std::size_t>(var)]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level,
               int& lbd);
  bool literal_redundant(Lit p, unsigned abstract_levels);
  unsigned abstract_level(int var) const {
    return 1u << (static_cast<unsigned>(level(var)) & 31u);
  }
  void cancel_until(int level);
  Lit pick_branch();
  CRef attach(std::vector<Lit> lits, bool learnt, int lbd);
  bool locked(CRef cref) const;
  void reduce_db();
  Status search(int conflict_limit, std::span<const Lit> assumptions);
  bool out_of_time();

  void bump_var(int var);
  void decay_var() { var_inc_ /= 0.95; }
  void bump_clause(CRef cref);
  void compact_pool();
  Lit* lits(CRef cref) {
    return pool_.data() + db_[static_cast<std::size_t>(cref)].start;
  }
  const Lit* lits(CRef cref) const {
    return pool_.data() + db_[static_cast<std::size_t>(cref)].start;
  }
  void decay_clause() { cla_inc_ /= 0.999; }

  void heap_insert(int var);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  int heap_pop();
  bool heap_contains(int var) const {
    return heap_index_[static_cast<std::size_t>(var)] >= 0;
  }

  bool ok_ = true;
  std::vector<int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<bool> polarity_;
  std::vector<double> activity_;
  std::vector<int8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<Clause> db_;
  std::vector<Lit> pool_;
  std::size_t wasted_ = 0;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::vector<BinaryWatcher>> binary_watches_;
  std::size_t num_original_ = 0;
  std::size_t num_learnt_ = 0;
  double max_learnts_ = 0;

  std::vector<int> heap_;
  std::vector<int> heap_index_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;

  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_clear_;

  std::vector<int8_t> model_;
  std::optional<std::chrono::milliseconds> budget_;
  std::chrono::steady_clock::time_point deadline_{};
  SolverStats stats_;
};

}  // namespace qarch::sat
