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
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qarch/arch.hpp"
#include "qarch/circuit.hpp"
#include "qarch/error.hpp"
#include "qarch/sat.hpp"

namespace qarch {

/// No layout exists within the block cap for this circuit/space pair.
class UnroutableError : public InputError {
 public:
  using InputError::InputError;
};

struct EncodingBounds {
  int t_max = 4;       ///< number of coarse blocks in the encoding
  int alpha = 0;       ///< flexible-edge budget
  int swap_limit = 0;  ///< SWAP count limit
  int depth = 0;       ///< current depth bound, depth <= t_max - 1
};

struct GatePlacement {
  int gate = 0;
  int block = 0;
  /// Physical vertex for single-qubit gates, coupling for two-qubit gates.
  std::variant<int, Edge> location;

  friend bool operator==(const GatePlacement&, const GatePlacement&) = default;
};

struct SwapPlacement {
  Edge edge;
  int block = 0;  ///< the swap layer between block and block + 1
  friend bool operator==(const SwapPlacement&, const SwapPlacement&) = default;
};

struct SynthesisResult {
  int depth = 0;
  /// mapping[t][q] = physical vertex of logical qubit q in block t, t = 0..depth.
  std::vector<std::vector<int>> mapping;
  std::vector<GatePlacement> placements;  ///< indexed by gate id
  std::vector<SwapPlacement> swaps;
  std::vector<Edge> used_flexible;  ///< sorted
  int swap_count = 0;

  friend bool operator==(const SynthesisResult&,
                         const SynthesisResult&) = default;
};

struct EdgeSelectionEntry {
  int alpha = 0;
  std::vector<Edge> used_flexible;
  SynthesisResult result;
};

struct EdgeSelectionOutcome {
  int depth = 0;
  std::vector<EdgeSelectionEntry> entries;  ///< entries[0] is alpha = 0
  /// Set when a SAT call ran out of time; the sweep stops there. At alpha 0
  /// the baseline entry is then the unminimized depth-search witness.
  std::optional<int> timed_out_alpha;
};

/// Declared variable counts per family of the formulation. Each variable is
/// backed by several boolean literals in the SAT instance.
struct FormulationSize {
  std::size_t mapping = 0;     ///< one per logical qubit per block
  std::size_t gate_coords = 0; ///< space and time coordinate per gate
  std::size_t swaps = 0;       ///< one per coupling per block
  std::size_t usage = 0;       ///< one per flexible edge

  std::size_t total() const { return mapping + gate_coords + swaps + usage; }
};

/// Joint layout-synthesis and edge-selection constraints over `t_max`
/// coarse blocks, compiled to CNF for an incremental SAT solver.
///
/// The depth bound, the flexible-edge budget and the SWAP limit are passed
/// as retractable assumptions, so one encoding serves the whole depth search
/// and every binary-search probe of the edge-selection loop.
class LayoutEncoding {
 public:
  LayoutEncoding(const Circuit& circuit, const ArchitectureSpace& space,
                 int t_max);
  ~LayoutEncoding();
  LayoutEncoding(const LayoutEncoding&) = delete;
  LayoutEncoding& operator=(const LayoutEncoding&) = delete;

  int t_max() const { return t_max_; }
  FormulationSize formulation_size() const { return size_; }
  std::size_t variable_count() const { return size_.total(); }
  int sat_variables() const { return solver_.num_vars(); }
  std::size_t sat_clauses() const { return solver_.num_clauses(); }

  void set_time_budget(std::optional<std::chrono::milliseconds> budget) {
    solver_.set_time_budget(budget);
  }

  /// Satisfiability under depth <= `depth`, at most `alpha` activated
  /// flexible edges (unbounded when nullopt) and at most `swap_limit` swaps.
  sat::Status check(int depth, std::optional<int> alpha,
                    std::optional<int> swap_limit);

  /// Forbids every flexible edge outside `allowed` in all later checks.
  void restrict_flexible(std::span<const Edge> allowed);

  /// Decodes the last satisfying assignment for the given depth bound.
  SynthesisResult extract(int depth) const;

  /// The clause database as an SMT-LIB 2 script over Boolean constants.
  std::string to_smtlib() const;

  const sat::SolverStats& solver_stats() const { return solver_.stats(); }

 private:
  class Totalizer;

  sat::Lit map_lit(int t, int q, int v) const;
  sat::Lit le_lit(int g, int t) const;  // t_g <= t; invalid when always true
  sat::Lit swap_lit(int t, int k) const;
  sat::Lit depth_lit(int depth);
  sat::Lit at_least(std::unique_ptr<Totalizer>& counter,
                    const std::vector<sat::Lit>& inputs, int k);
  void add(std::initializer_list<sat::Lit> lits);
  void add(const std::vector<sat::Lit>& lits);
  void at_most_one(const std::vector<sat::Lit>& lits);
  void build();
  void add_distance_bounds(const std::vector<sat::Lit>& at_least);

  Circuit circuit_;
  ArchitectureSpace space_;
  std::vector<Edge> edges_;  // fixed then flexible
  int num_fixed_ = 0;
  int t_max_ = 0;
  int num_qubits_ = 0;
  int num_vertices_ = 0;

  sat::Solver solver_;
  std::vector<std::vector<sat::Lit>> clauses_;  // mirror for SMT-LIB export
  int map_base_ = 0;
  std::vector<int> le_base_;
  std::vector<int> loc_base_;
  int swap_base_ = 0;
  int use_base_ = 0;
  std::vector<std::optional<sat::Lit>> depth_lits_;
  std::vector<sat::Lit> swap_inputs_;
  std::vector<sat::Lit> use_inputs_;
  std::vector<bool> allowed_flexible_;
  std::vector<std::vector<int>> distance_;
  std::vector<std::pair<int, int>> pairs_;
  std::unique_ptr<Totalizer> swap_counter_;
  std::unique_ptr<Totalizer> use_counter_;
  FormulationSize size_;
};

struct SynthesisOptions {
  int initial_t_max = 4;
  int t_max_cap = 64;
  /// Upper bound on alpha in the sweep; nullopt means |E_f|.
  std::optional<int> max_alpha;
  /// Depth used during edge selection; nullopt pins it to the minimum depth.
  std::optional<int> depth_override;
  /// Binary-search the alpha = 0 swap count before the sweep instead of
  /// keeping the depth search's witness as the baseline.
  bool optimize_baseline = true;
  std::optional<std::chrono::milliseconds> time_budget;
  /// Compile onto exactly these flexible edges (none when empty) with no
  /// budget instead of sweeping alpha.
  std::optional<std::vector<Edge>> fixed_architecture;
};

struct DepthSearchResult {
  int t_min = 0;
  SynthesisResult baseline;
};

/// Owns one incremental solver session for a circuit/space pair.
class Synthesizer {
 public:
  Synthesizer(const Circuit& circuit, const ArchitectureSpace& space,
              SynthesisOptions options = {});

  /// Linear search T = 0, 1, ... with no flexible edge; the block count
  /// doubles (re-encoding) whenever T exhausts it.
  DepthSearchResult minimize_depth();

  /// Binary search on the SWAP limit for alpha = 1, 2, ... at fixed depth.
  EdgeSelectionOutcome iterative_edge_selection(const DepthSearchResult& stage1);

  /// Smallest swap count at (depth, alpha) given a feasible upper bound.
  SynthesisResult minimize_swaps(int depth, std::optional<int> alpha,
                                 int upper);

  /// Minimum depth, then minimum swaps, on the fixed architecture given in
  /// the options. With an empty edge set this reproduces the alpha = 0
  /// baseline of the sweep.
  SynthesisResult compile_fixed();

  const LayoutEncoding& encoding() const { return *encoding_; }

 private:
  std::optional<int> base_alpha() const;
  sat::Status checked(int depth, std::optional<int> alpha,
                      std::optional<int> swap_limit);
  SynthesisResult accepted(SynthesisResult result,
                           std::optional<int> alpha) const;
  void ensure_blocks(int t_max);

  Circuit circuit_;
  ArchitectureSpace space_;
  SynthesisOptions options_;
  std::unique_ptr<LayoutEncoding> encoding_;
};

DepthSearchResult minimize_depth(const Circuit& circuit,
                                 const ArchitectureSpace& space,
                                 const SynthesisOptions& options = {});

EdgeSelectionOutcome iterative_edge_selection(
    const Circuit& circuit, const ArchitectureSpace& space,
    const DepthSearchResult& stage1, const SynthesisOptions& options = {});

/// Both stages in one solver session.
EdgeSelectionOutcome optimize_architecture(const Circuit& circuit,
                                           const ArchitectureSpace& space,
                                           const SynthesisOptions& options = {});

enum class Violation {
  None,
  Shape,
  MappingRange,
  MappingNotInjective,
  GateMapping,
  NotAdjacent,
  Dependency,
  SwapOutOfRange,
  SwapNotOnEdge,
  SwapOverlap,
  MappingChangedWithoutSwap,
  SwapNotApplied,
  UsedFlexibleMismatch,
  AlphaExceeded,
  Collision,
  SwapCountMismatch,
};

std::string to_string(Violation v);

struct ValidationVerdict {
  Violation violation = Violation::None;
  std::string witness;

  bool ok() const { return violation == Violation::None; }
};

/// Semantic re-check of a result without the solver. Gates sharing a block
/// are taken to run in gate-list order.
ValidationVerdict validate_result(const Circuit& circuit,
                                  const ArchitectureSpace& space,
                                  const SynthesisResult& result,
                                  std::optional<int> alpha = std::nullopt);

nlohmann::json result_to_json(const SynthesisResult& result);
SynthesisResult result_from_json(const nlohmann::json& doc);

}  // namespace qarch
