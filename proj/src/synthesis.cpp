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


#include "qarch/synthesis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qarch {

using sat::Lit;
using sat::Status;

/// Incremental totalizer: outputs()[i] is implied whenever at least i + 1
/// inputs are true. Counting saturates at `cap`.
class LayoutEncoding::Totalizer {
 public:
  Totalizer(LayoutEncoding& enc, const std::vector<Lit>& inputs, int cap)
      : cap_(cap) {
    if (!inputs.empty()) outputs_ = build(enc, inputs, 0, inputs.size());
  }

  int cap() const { return cap_; }
  const std::vector<Lit>& outputs() const { return outputs_; }

 private:
  std::vector<Lit> build(LayoutEncoding& enc, const std::vector<Lit>& inputs,
                         std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {inputs[lo]};
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto a = build(enc, inputs, lo, mid);
    const auto b = build(enc, inputs, mid, hi);
    const std::size_t width =
        std::min(a.size() + b.size(), static_cast<std::size_t>(cap_));
    std::vector<Lit> r;
    r.reserve(width);
    for (std::size_t k = 0; k < width; ++k) {
      r.push_back(Lit::make(enc.solver_.new_var()));
    }
    for (std::size_t i = 0; i <= a.size(); ++i) {
      for (std::size_t j = 0; j <= b.size(); ++j) {
        if (i + j == 0) continue;
        const std::size_t s = std::min(i + j, width);
        std::vector<Lit> clause;
        if (i > 0) clause.push_back(~a[i - 1]);
        if (j > 0) clause.push_back(~b[j - 1]);
        clause.push_back(r[s - 1]);
        enc.add(clause);
      }
    }
    return r;
  }

  int cap_;
  std::vector<Lit> outputs_;
};

LayoutEncoding::~LayoutEncoding() = default;

LayoutEncoding::LayoutEncoding(const Circuit& circuit,
                               const ArchitectureSpace& space, int t_max)
    : circuit_(circuit), space_(space), t_max_(t_max) {
  if (t_max < 1) throw InputError("t_max must be at least one block");
  num_qubits_ = circuit.num_qubits();
  num_vertices_ = space.base.num_vertices();
  if (num_qubits_ > num_vertices_) {
    throw InputError("circuit has " + std::to_string(num_qubits_) +
                     " qubits but the architecture only " +
                     std::to_string(num_vertices_));
  }
  space_.validate();
  edges_ = space_.all_edges();
  num_fixed_ = space_.base.num_edges();
  build();
}

void LayoutEncoding::add(std::initializer_list<Lit> lits) {
  add(std::vector<Lit>(lits));
}

void LayoutEncoding::add(const std::vector<Lit>& lits) {
  std::vector<Lit> kept;
  kept.reserve(lits.size());
  for (Lit l : lits) {
    if (l.valid()) kept.push_back(l);
  }
  solver_.add_clause(kept);
  clauses_.push_back(std::move(kept));
}

void LayoutEncoding::at_most_one(const std::vector<Lit>& lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      add({~lits[i], ~lits[j]});
    }
  }
}

Lit LayoutEncoding::map_lit(int t, int q, int v) const {
  return Lit::make(map_base_ + (t * num_qubits_ + q) * num_vertices_ + v);
}

Lit LayoutEncoding::le_lit(int g, int t) const {
  if (t >= t_max_ - 1) return Lit();
  return Lit::make(le_base_[static_cast<std::size_t>(g)] + t);
}

Lit LayoutEncoding::swap_lit(int t, int k) const {
  return Lit::make(swap_base_ + t * static_cast<int>(edges_.size()) + k);
}

void LayoutEncoding::build() {
  const auto& gates = circuit_.gates();
  const int num_edges = static_cast<int>(edges_.size());
  const int num_flex = static_cast<int>(space_.flexible.size());
  auto fresh = [this](int count) {
    const int first = solver_.num_vars();
    for (int i = 0; i < count; ++i) solver_.new_var();
    return first;
  };

  // Variables.
  map_base_ = fresh(t_max_ * num_qubits_ * num_vertices_);
  for (const auto& g : gates) {
    le_base_.push_back(fresh(t_max_ - 1));
    loc_base_.push_back(fresh(g.is_two_qubit() ? num_edges : num_vertices_));
  }
  swap_base_ = fresh(t_max_ * num_edges);
  use_base_ = fresh(num_flex);
  size_.mapping = static_cast<std::size_t>(num_qubits_ * t_max_);
  size_.gate_coords = 2 * gates.size();
  size_.swaps = static_cast<std::size_t>(num_edges * t_max_);
  size_.usage = static_cast<std::size_t>(num_flex);

  // Each logical qubit sits on exactly one vertex; vertices hold at most one.
  for (int t = 0; t < t_max_; ++t) {
    for (int q = 0; q < num_qubits_; ++q) {
      std::vector<Lit> row;
      for (int v = 0; v < num_vertices_; ++v) row.push_back(map_lit(t, q, v));
      add(row);
      at_most_one(row);
    }
    for (int v = 0; v < num_vertices_; ++v) {
      std::vector<Lit> col;
      for (int q = 0; q < num_qubits_; ++q) col.push_back(map_lit(t, q, v));
      at_most_one(col);
    }
  }

  std::vector<std::vector<int>> incident(static_cast<std::size_t>(num_vertices_));
  for (int k = 0; k < num_edges; ++k) {
    incident[static_cast<std::size_t>(edges_[static_cast<std::size_t>(k)].u)]
        .push_back(k);
    incident[static_cast<std::size_t>(edges_[static_cast<std::size_t>(k)].v)]
        .push_back(k);
  }

  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const auto& g = gates[gi];
    const int id = static_cast<int>(gi);
    // Order encoding of the block index.
    for (int t = 0; t + 1 < t_max_ - 1; ++t) {
      add({~le_lit(id, t), le_lit(id, t + 1)});
    }
    const int width = g.is_two_qubit() ? num_edges : num_vertices_;
    std::vector<Lit> loc;
    for (int j = 0; j < width; ++j) {
      loc.push_back(Lit::make(loc_base_[gi] + j));
    }
    add(loc);
    at_most_one(loc);

    for (int t = 0; t < t_max_; ++t) {
      // Block t selected: t_g <= t and not t_g <= t - 1.
      const Lit not_le = le_lit(id, t).valid() ? ~le_lit(id, t) : Lit();
      const Lit before = t > 0 ? le_lit(id, t - 1) : Lit();
      if (g.is_two_qubit()) {
        const int q0 = g.operands[0];
        const int q1 = g.operands[1];
        for (int k = 0; k < num_edges; ++k) {
          const Edge& e = edges_[static_cast<std::size_t>(k)];
          for (int q : {q0, q1}) {
            add({~loc[static_cast<std::size_t>(k)], not_le, before,
                 map_lit(t, q, e.u), map_lit(t, q, e.v)});
          }
        }
        // Implied: the partner of an operand sits next to it.
        for (auto [qa, qb] : {std::pair{q0, q1}, std::pair{q1, q0}}) {
          for (int v = 0; v < num_vertices_; ++v) {
            std::vector<Lit> near{not_le, before, ~map_lit(t, qa, v)};
            for (int k : incident[static_cast<std::size_t>(v)]) {
              near.push_back(
                  map_lit(t, qb, edges_[static_cast<std::size_t>(k)].other(v)));
            }
            add(near);
          }
        }
      } else {
        const int q = g.operands[0];
        for (int v = 0; v < num_vertices_; ++v) {
          add({~loc[static_cast<std::size_t>(v)], not_le, before,
               map_lit(t, q, v)});
        }
      }
    }
    if (g.is_two_qubit()) {
      for (int f = 0; f < num_flex; ++f) {
        add({~loc[static_cast<std::size_t>(num_fixed_ + f)],
             Lit::make(use_base_ + f)});
      }
    }
  }

  for (auto [a, b] : build_dependency_list(circuit_)) {
    for (int t = 0; t < t_max_ - 1; ++t) {
      add({~le_lit(b, t), le_lit(a, t)});
    }
  }

  for (int t = 0; t < t_max_; ++t) {
    // Swaps in one layer are vertex-disjoint.
    for (const auto& inc : incident) {
      std::vector<Lit> layer;
      for (int k : inc) layer.push_back(swap_lit(t, k));
      at_most_one(layer);
    }
    for (int k = num_fixed_; k < num_edges; ++k) {
      add({~swap_lit(t, k), Lit::make(use_base_ + k - num_fixed_)});
    }
    if (t == t_max_ - 1) {
      // No block follows the last layer.
      for (int k = 0; k < num_edges; ++k) add({~swap_lit(t, k)});
      continue;
    }
    for (int q = 0; q < num_qubits_; ++q) {
      for (int v = 0; v < num_vertices_; ++v) {
        std::vector<Lit> stay{~map_lit(t, q, v)};
        for (int k : incident[static_cast<std::size_t>(v)]) {
          stay.push_back(swap_lit(t, k));
          const int w = edges_[static_cast<std::size_t>(k)].other(v);
          add({~map_lit(t, q, v), ~swap_lit(t, k), map_lit(t + 1, q, w)});
        }
        stay.push_back(map_lit(t + 1, q, v));
        add(stay);
      }
    }
    for (int k = 0; k < num_edges; ++k) swap_inputs_.push_back(swap_lit(t, k));
  }

  for (auto [a, b] : space_.collisions) {
    add({~Lit::make(use_base_ + a), ~Lit::make(use_base_ + b)});
  }
  for (int f = 0; f < num_flex; ++f) use_inputs_.push_back(Lit::make(use_base_ + f));
  depth_lits_.assign(static_cast<std::size_t>(t_max_), std::nullopt);
  allowed_flexible_.assign(static_cast<std::size_t>(num_flex), true);

  // Hop distances with every flexible edge present bound the real ones
  // from below.
  distance_.assign(static_cast<std::size_t>(num_vertices_),
                   std::vector<int>(static_cast<std::size_t>(num_vertices_),
                                    num_vertices_));
  for (int src = 0; src < num_vertices_; ++src) {
    auto& row = distance_[static_cast<std::size_t>(src)];
    std::vector<int> queue{src};
    row[static_cast<std::size_t>(src)] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int v = queue[i];
      for (int k : incident[static_cast<std::size_t>(v)]) {
        const int w = edges_[static_cast<std::size_t>(k)].other(v);
        if (row[static_cast<std::size_t>(w)] > row[static_cast<std::size_t>(v)] + 1) {
          row[static_cast<std::size_t>(w)] = row[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& g : gates) {
    if (!g.is_two_qubit()) continue;
    pairs.insert(std::minmax(g.operands[0], g.operands[1]));
  }
  pairs_.assign(pairs.begin(), pairs.end());

  // A gate placed in blocks lo..hi keeps its operands within
  // 1 + 2 (hi - lo) hops at either end of that window.
  int diameter = 0;
  for (const auto& row : distance_) {
    for (int d : row) diameter = std::max(diameter, d);
  }
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const auto& g = gates[gi];
    if (!g.is_two_qubit()) continue;
    const int id = static_cast<int>(gi);
    for (int lo = 0; lo < t_max_; ++lo) {
      for (int hi = lo + 1; hi < t_max_; ++hi) {
        const int reach = 1 + 2 * (hi - lo);
        if (reach >= diameter) break;
        const Lit late = lo > 0 ? le_lit(id, lo - 1) : Lit();
        const Lit early = le_lit(id, hi).valid() ? ~le_lit(id, hi) : Lit();
        for (int t : {lo, hi}) {
          for (auto [qa, qb] : {std::pair{g.operands[0], g.operands[1]},
                                std::pair{g.operands[1], g.operands[0]}}) {
            for (int v = 0; v < num_vertices_; ++v) {
              const auto& row = distance_[static_cast<std::size_t>(v)];
              std::vector<Lit> clause{late, early, ~map_lit(t, qa, v)};
              for (int w = 0; w < num_vertices_; ++w) {
                if (w != v && row[static_cast<std::size_t>(w)] <= reach) {
                  clause.push_back(map_lit(t, qb, w));
                }
              }
              add(clause);
            }
          }
        }
      }
    }
  }
}

void LayoutEncoding::add_distance_bounds(const std::vector<Lit>& at_least) {
  // With at most k swaps, two interacting qubits never drift more than
  // k + 1 hops apart.
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const int reach = static_cast<int>(k) + 1;
    for (auto [q0, q1] : pairs_) {
      for (auto [qa, qb] : {std::pair{q0, q1}, std::pair{q1, q0}}) {
        for (int t = 0; t < t_max_; ++t) {
          for (int v = 0; v < num_vertices_; ++v) {
            const auto& row = distance_[static_cast<std::size_t>(v)];
            std::vector<Lit> clause{at_least[k], ~map_lit(t, qa, v)};
            bool pruned = false;
            for (int w = 0; w < num_vertices_; ++w) {
              if (row[static_cast<std::size_t>(w)] <= reach) {
                if (w != v) clause.push_back(map_lit(t, qb, w));
              } else {
                pruned = true;
              }
            }
            if (pruned) add(clause);
          }
        }
      }
    }
  }
}

void LayoutEncoding::restrict_flexible(std::span<const Edge> allowed) {
  allowed_flexible_.assign(allowed_flexible_.size(), false);
  for (const Edge& e : allowed) {
    std::optional<int> f = space_.flexible_index(e);
    if (!f) throw InputError("edge " + to_string(e) + " is not flexible");
    allowed_flexible_[static_cast<std::size_t>(*f)] = true;
  }
}

Lit LayoutEncoding::depth_lit(int depth) {
  if (depth >= t_max_ - 1) return Lit();
  auto& slot = depth_lits_[static_cast<std::size_t>(depth)];
  if (slot) return *slot;
  const Lit d = Lit::make(solver_.new_var());
  for (std::size_t g = 0; g < circuit_.size(); ++g) {
    add({~d, le_lit(static_cast<int>(g), depth)});
  }
  for (int t = depth; t < t_max_ - 1; ++t) {
    for (int k = 0; k < static_cast<int>(edges_.size()); ++k) {
      add({~d, ~swap_lit(t, k)});
    }
  }
  slot = d;
  return d;
}

Lit LayoutEncoding::at_least(std::unique_ptr<Totalizer>& counter,
                             const std::vector<Lit>& inputs, int k) {
  if (k > static_cast<int>(inputs.size())) return Lit();
  if (!counter || counter->cap() < k) {
    const int cap = std::min(static_cast<int>(inputs.size()),
                             std::max(k, counter ? 2 * counter->cap() : k));
    counter = std::make_unique<Totalizer>(*this, inputs, cap);
    if (&counter == &swap_counter_) add_distance_bounds(counter->outputs());
  }
  return counter->outputs()[static_cast<std::size_t>(k - 1)];
}

Status LayoutEncoding::check(int depth, std::optional<int> alpha,
                             std::optional<int> swap_limit) {
  if (depth < 0 || depth > t_max_ - 1) {
    throw InputError("depth bound " + std::to_string(depth) +
                     " outside encoded range 0.." + std::to_string(t_max_ - 1));
  }
  std::vector<Lit> assumptions;
  if (Lit d = depth_lit(depth); d.valid()) assumptions.push_back(d);
  if (alpha && *alpha < 0) throw InputError("alpha must be non-negative");
  for (std::size_t f = 0; f < use_inputs_.size(); ++f) {
    if (!allowed_flexible_[f] || alpha == 0) assumptions.push_back(~use_inputs_[f]);
  }
  if (alpha && *alpha > 0) {
    if (Lit l = at_least(use_counter_, use_inputs_, *alpha + 1); l.valid()) {
      assumptions.push_back(~l);
    }
  }
  if (swap_limit) {
    if (*swap_limit < 0) throw InputError("swap limit must be non-negative");
    if (Lit l = at_least(swap_counter_, swap_inputs_, *swap_limit + 1);
        l.valid()) {
      assumptions.push_back(~l);
    }
  }
  return solver_.solve(assumptions);
}

SynthesisResult LayoutEncoding::extract(int depth) const {
  SynthesisResult r;
  r.depth = depth;
  for (int t = 0; t <= depth; ++t) {
    std::vector<int> row(static_cast<std::size_t>(num_qubits_), -1);
    for (int q = 0; q < num_qubits_; ++q) {
      for (int v = 0; v < num_vertices_; ++v) {
        if (solver_.model_value(map_lit(t, q, v))) {
          row[static_cast<std::size_t>(q)] = v;
          break;
        }
      }
    }
    r.mapping.push_back(std::move(row));
  }
  std::set<Edge> used;
  const auto& gates = circuit_.gates();
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const int id = static_cast<int>(gi);
    int block = t_max_ - 1;
    for (int t = 0; t < t_max_ - 1; ++t) {
      if (solver_.model_value(le_lit(id, t))) {
        block = t;
        break;
      }
    }
    GatePlacement p{id, block, -1};
    const int width = gates[gi].is_two_qubit()
                          ? static_cast<int>(edges_.size())
                          : num_vertices_;
    for (int j = 0; j < width; ++j) {
      if (!solver_.model_value(Lit::make(loc_base_[gi] + j))) continue;
      if (gates[gi].is_two_qubit()) {
        p.location = edges_[static_cast<std::size_t>(j)];
        if (j >= num_fixed_) used.insert(edges_[static_cast<std::size_t>(j)]);
      } else {
        p.location = j;
      }
      break;
    }
    r.placements.push_back(p);
  }
  for (int t = 0; t < depth; ++t) {
    for (int k = 0; k < static_cast<int>(edges_.size()); ++k) {
      if (solver_.model_value(swap_lit(t, k))) {
        r.swaps.push_back({edges_[static_cast<std::size_t>(k)], t});
        if (k >= num_fixed_) used.insert(edges_[static_cast<std::size_t>(k)]);
      }
    }
  }
  r.used_flexible.assign(used.begin(), used.end());
  r.swap_count = static_cast<int>(r.swaps.size());
  return r;
}

std::string LayoutEncoding::to_smtlib() const {
  std::ostringstream out;
  out << "(set-logic QF_UF)\n";
  for (int v = 0; v < solver_.num_vars(); ++v) {
    out << "(declare-const b" << v << " Bool)\n";
  }
  for (const auto& clause : clauses_) {
    out << "(assert (or";
    if (clause.empty()) out << " false";
    for (Lit l : clause) {
      if (l.negative()) {
        out << " (not b" << l.var() << ")";
      } else {
        out << " b" << l.var();
      }
    }
    out << "))\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

// ---------------------------------------------------------------------------

Synthesizer::Synthesizer(const Circuit& circuit, const ArchitectureSpace& space,
                         SynthesisOptions options)
    : circuit_(circuit), space_(space), options_(std::move(options)) {
  if (options_.initial_t_max < 1) {
    throw InputError("initial t_max must be at least 1");
  }
  if (options_.t_max_cap < options_.initial_t_max) {
    throw InputError("t_max cap below initial t_max");
  }
  if (circuit_.num_qubits() > space_.base.num_vertices()) {
    throw InputError("circuit has more qubits than the architecture");
  }
}

void Synthesizer::ensure_blocks(int t_max) {
  if (encoding_ && encoding_->t_max() >= t_max) return;
  encoding_ = std::make_unique<LayoutEncoding>(circuit_, space_, t_max);
  encoding_->set_time_budget(options_.time_budget);
  if (options_.fixed_architecture) {
    encoding_->restrict_flexible(*options_.fixed_architecture);
  }
}

std::optional<int> Synthesizer::base_alpha() const {
  if (options_.fixed_architecture) return std::nullopt;
  return 0;
}

Status Synthesizer::checked(int depth, std::optional<int> alpha,
                            std::optional<int> swap_limit) {
  const Status st = encoding_->check(depth, alpha, swap_limit);
  if (st == Status::Unknown) {
    throw SolverTimeout("SAT call exceeded its time budget (depth " +
                        std::to_string(depth) + ")");
  }
  return st;
}

SynthesisResult Synthesizer::accepted(SynthesisResult result,
                                      std::optional<int> alpha) const {
  const auto verdict = validate_result(circuit_, space_, result, alpha);
  if (!verdict.ok()) {
    throw InvariantViolation("solver result failed validation: " +
                             to_string(verdict.violation) + ": " +
                             verdict.witness);
  }
  return result;
}

DepthSearchResult Synthesizer::minimize_depth() {
  int t_max = options_.initial_t_max;
  int depth = 0;
  for (;;) {
    ensure_blocks(t_max);
    for (; depth <= encoding_->t_max() - 1; ++depth) {
      if (checked(depth, base_alpha(), std::nullopt) == Status::Sat) {
        return {depth, accepted(encoding_->extract(depth), base_alpha())};
      }
    }
    if (t_max >= options_.t_max_cap) {
      throw UnroutableError("no layout within " +
                            std::to_string(options_.t_max_cap) + " blocks");
    }
    t_max = std::min(2 * t_max, options_.t_max_cap);
  }
}

SynthesisResult Synthesizer::minimize_swaps(int depth, std::optional<int> alpha,
                                            int upper) {
  ensure_blocks(depth + 1);
  int lo = 0;
  int hi = upper;
  std::optional<SynthesisResult> best;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (checked(depth, alpha, mid) == Status::Sat) {
      best = encoding_->extract(depth);
      hi = best->swap_count;
    } else {
      lo = mid + 1;
    }
  }
  if (!best || best->swap_count != hi) {
    if (checked(depth, alpha, hi) != Status::Sat) {
      throw InvariantViolation("no solution at the swap upper bound " +
                               std::to_string(hi));
    }
    best = encoding_->extract(depth);
  }
  return accepted(std::move(*best), alpha);
}

EdgeSelectionOutcome Synthesizer::iterative_edge_selection(
    const DepthSearchResult& stage1) {
  const int depth = options_.depth_override.value_or(stage1.t_min);
  if (depth < stage1.t_min) {
    throw InputError("depth override below the minimum depth");
  }
  ensure_blocks(depth + 1);

  SynthesisResult baseline = stage1.baseline;
  if (depth != stage1.t_min) {
    if (checked(depth, 0, std::nullopt) != Status::Sat) {
      throw InvariantViolation("no baseline layout at depth " +
                               std::to_string(depth));
    }
    baseline = accepted(encoding_->extract(depth), 0);
  }
  EdgeSelectionOutcome out;
  out.depth = depth;
  if (options_.optimize_baseline) {
    try {
      baseline = minimize_swaps(depth, 0, baseline.swap_count);
    } catch (const SolverTimeout&) {
      out.timed_out_alpha = 0;
    }
  }
  out.entries.push_back({0, baseline.used_flexible, baseline});
  if (out.timed_out_alpha) return out;

  const int num_flex = static_cast<int>(space_.flexible.size());
  const int max_alpha = std::min(options_.max_alpha.value_or(num_flex), num_flex);
  int previous = baseline.swap_count;
  for (int alpha = 1; alpha <= max_alpha && previous > 0; ++alpha) {
    SynthesisResult r;
    try {
      r = minimize_swaps(depth, alpha, previous);
    } catch (const SolverTimeout&) {
      out.timed_out_alpha = alpha;
      break;
    }
    if (static_cast<int>(r.used_flexible.size()) < alpha) break;
    previous = r.swap_count;
    auto used = r.used_flexible;
    out.entries.push_back({alpha, std::move(used), std::move(r)});
  }
  return out;
}

SynthesisResult Synthesizer::compile_fixed() {
  if (!options_.fixed_architecture) {
    throw InputError("compile_fixed needs a fixed architecture");
  }
  const DepthSearchResult stage1 = minimize_depth();
  SynthesisResult r =
      options_.optimize_baseline
          ? minimize_swaps(stage1.t_min, base_alpha(), stage1.baseline.swap_count)
          : stage1.baseline;
  const auto& allowed = *options_.fixed_architecture;
  for (const Edge& e : r.used_flexible) {
    if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) {
      throw InvariantViolation("result uses edge " + to_string(e) +
                               " outside the fixed architecture");
    }
  }
  return r;
}

DepthSearchResult minimize_depth(const Circuit& circuit,
                                 const ArchitectureSpace& space,
                                 const SynthesisOptions& options) {
  return Synthesizer(circuit, space, options).minimize_depth();
}

EdgeSelectionOutcome iterative_edge_selection(const Circuit& circuit,
                                              const ArchitectureSpace& space,
                                              const DepthSearchResult& stage1,
                                              const SynthesisOptions& options) {
  return Synthesizer(circuit, space, options).iterative_edge_selection(stage1);
}

EdgeSelectionOutcome optimize_architecture(const Circuit& circuit,
                                           const ArchitectureSpace& space,
                                           const SynthesisOptions& options) {
  Synthesizer synth(circuit, space, options);
  const auto stage1 = synth.minimize_depth();
  return synth.iterative_edge_selection(stage1);
}

// ---------------------------------------------------------------------------

std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "ok";
    case Violation::Shape: return "malformed result";
    case Violation::MappingRange: return "mapping out of range";
    case Violation::MappingNotInjective: return "mapping not injective";
    case Violation::GateMapping: return "gate placement disagrees with mapping";
    case Violation::NotAdjacent: return "two-qubit gate on a non-edge";
    case Violation::Dependency: return "dependency order violated";
    case Violation::SwapOutOfRange: return "swap block out of range";
    case Violation::SwapNotOnEdge: return "swap on a non-edge";
    case Violation::SwapOverlap: return "swap overlap";
    case Violation::MappingChangedWithoutSwap: return "mapping changed without swap";
    case Violation::SwapNotApplied: return "swap not applied to mapping";
    case Violation::UsedFlexibleMismatch: return "used flexible edges mismatch";
    case Violation::AlphaExceeded: return "flexible-edge budget exceeded";
    case Violation::Collision: return "colliding flexible edges both used";
    case Violation::SwapCountMismatch: return "swap count mismatch";
  }
  return "unknown";
}

ValidationVerdict validate_result(const Circuit& circuit,
                                  const ArchitectureSpace& space,
                                  const SynthesisResult& r,
                                  std::optional<int> alpha) {
  auto fail = [](Violation v, std::string w) {
    return ValidationVerdict{v, std::move(w)};
  };
  const int nq = circuit.num_qubits();
  const int nv = space.base.num_vertices();
  const auto& gates = circuit.gates();

  if (r.depth < 0 || r.mapping.size() != static_cast<std::size_t>(r.depth + 1)) {
    return fail(Violation::Shape, "mapping must have depth + 1 rows");
  }
  if (r.placements.size() != gates.size()) {
    return fail(Violation::Shape, "one placement per gate required");
  }
  for (std::size_t t = 0; t < r.mapping.size(); ++t) {
    const auto& row = r.mapping[t];
    if (row.size() != static_cast<std::size_t>(nq)) {
      return fail(Violation::Shape, "block " + std::to_string(t) +
                                        " maps the wrong number of qubits");
    }
    std::set<int> seen;
    for (int q = 0; q < nq; ++q) {
      const int v = row[static_cast<std::size_t>(q)];
      if (v < 0 || v >= nv) {
        return fail(Violation::MappingRange,
                    "block " + std::to_string(t) + " qubit " + std::to_string(q));
      }
      if (!seen.insert(v).second) {
        return fail(Violation::MappingNotInjective,
                    "block " + std::to_string(t) + " vertex " + std::to_string(v));
      }
    }
  }

  std::set<Edge> touched_flexible;
  auto on_architecture = [&space](const Edge& e) {
    return space.base.has_edge(e) || space.is_flexible(e);
  };

  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const auto& g = gates[gi];
    const auto& p = r.placements[gi];
    const std::string who = "gate " + std::to_string(gi);
    if (p.gate != static_cast<int>(gi)) {
      return fail(Violation::Shape, who + " placement out of order");
    }
    if (p.block < 0 || p.block > r.depth) {
      return fail(Violation::Shape, who + " block out of range");
    }
    const auto& row = r.mapping[static_cast<std::size_t>(p.block)];
    if (g.is_two_qubit()) {
      const Edge* e = std::get_if<Edge>(&p.location);
      if (!e) return fail(Violation::Shape, who + " needs an edge location");
      const Edge expect(row[static_cast<std::size_t>(g.operands[0])],
                        row[static_cast<std::size_t>(g.operands[1])]);
      if (*e != expect) {
        return fail(Violation::GateMapping,
                    who + " on " + to_string(*e) + ", qubits at " +
                        to_string(expect));
      }
      if (!on_architecture(*e)) {
        return fail(Violation::NotAdjacent, who + " on " + to_string(*e));
      }
      if (space.is_flexible(*e)) touched_flexible.insert(*e);
    } else {
      const int* v = std::get_if<int>(&p.location);
      if (!v) return fail(Violation::Shape, who + " needs a vertex location");
      if (*v != row[static_cast<std::size_t>(g.operands[0])]) {
        return fail(Violation::GateMapping,
                    who + " on vertex " + std::to_string(*v));
      }
    }
  }

  for (auto [a, b] : build_dependency_list(circuit)) {
    if (r.placements[static_cast<std::size_t>(a)].block >
        r.placements[static_cast<std::size_t>(b)].block) {
      return fail(Violation::Dependency,
                  "gate " + std::to_string(a) + " after gate " + std::to_string(b));
    }
  }

  std::map<int, std::vector<Edge>> layers;
  for (const auto& s : r.swaps) {
    const std::string who = "swap " + to_string(s.edge) + "@" + std::to_string(s.block);
    if (s.block < 0 || s.block >= r.depth) {
      return fail(Violation::SwapOutOfRange, who);
    }
    if (!on_architecture(s.edge)) return fail(Violation::SwapNotOnEdge, who);
    for (const Edge& other : layers[s.block]) {
      if (other.shares_vertex(s.edge)) {
        return fail(Violation::SwapOverlap, who + " and " + to_string(other));
      }
    }
    layers[s.block].push_back(s.edge);
    if (space.is_flexible(s.edge)) touched_flexible.insert(s.edge);
  }

  for (int t = 0; t < r.depth; ++t) {
    std::map<int, int> moves;
    for (const Edge& e : layers[t]) {
      moves[e.u] = e.v;
      moves[e.v] = e.u;
    }
    for (int q = 0; q < nq; ++q) {
      const int v = r.mapping[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
      const int next =
          r.mapping[static_cast<std::size_t>(t + 1)][static_cast<std::size_t>(q)];
      auto it = moves.find(v);
      const int expect = it == moves.end() ? v : it->second;
      if (next != expect) {
        return fail(it == moves.end() ? Violation::MappingChangedWithoutSwap
                                      : Violation::SwapNotApplied,
                    "qubit " + std::to_string(q) + " block " + std::to_string(t) +
                        ": " + std::to_string(v) + " -> " + std::to_string(next));
      }
    }
  }

  std::set<Edge> declared(r.used_flexible.begin(), r.used_flexible.end());
  if (declared != touched_flexible ||
      declared.size() != r.used_flexible.size()) {
    return fail(Violation::UsedFlexibleMismatch,
                std::to_string(declared.size()) + " declared, " +
                    std::to_string(touched_flexible.size()) + " touched");
  }
  if (alpha && static_cast<int>(declared.size()) > *alpha) {
    return fail(Violation::AlphaExceeded,
                std::to_string(declared.size()) + " > " + std::to_string(*alpha));
  }
  for (auto [a, b] : space.collisions) {
    const Edge& ea = space.flexible[static_cast<std::size_t>(a)];
    const Edge& eb = space.flexible[static_cast<std::size_t>(b)];
    if (declared.count(ea) && declared.count(eb)) {
      return fail(Violation::Collision, to_string(ea) + " and " + to_string(eb));
    }
  }
  if (r.swap_count != static_cast<int>(r.swaps.size())) {
    return fail(Violation::SwapCountMismatch,
                std::to_string(r.swap_count) + " vs " +
                    std::to_string(r.swaps.size()));
  }
  return {};
}

nlohmann::json result_to_json(const SynthesisResult& r) {
  nlohmann::json placements = nlohmann::json::array();
  for (const auto& p : r.placements) {
    nlohmann::json entry{{"gate", p.gate}, {"block", p.block}};
    if (const Edge* e = std::get_if<Edge>(&p.location)) {
      entry["edge"] = {e->u, e->v};
    } else {
      entry["vertex"] = std::get<int>(p.location);
    }
    placements.push_back(std::move(entry));
  }
  nlohmann::json swaps = nlohmann::json::array();
  for (const auto& s : r.swaps) {
    swaps.push_back({{"edge", {s.edge.u, s.edge.v}}, {"block", s.block}});
  }
  return {{"depth", r.depth},
          {"mapping", r.mapping},
          {"placements", std::move(placements)},
          {"swaps", std::move(swaps)},
          {"used_flexible", edges_to_json(r.used_flexible)},
          {"swap_count", r.swap_count}};
}

SynthesisResult result_from_json(const nlohmann::json& doc) {
  try {
    SynthesisResult r;
    r.depth = doc.at("depth").get<int>();
    r.mapping = doc.at("mapping").get<std::vector<std::vector<int>>>();
    for (const auto& p : doc.at("placements")) {
      GatePlacement gp{p.at("gate").get<int>(), p.at("block").get<int>(), -1};
      if (p.contains("edge")) {
        const auto e = p.at("edge").get<std::vector<int>>();
        if (e.size() != 2) throw InputError("placement edge needs two ends");
        gp.location = Edge(e[0], e[1]);
      } else {
        gp.location = p.at("vertex").get<int>();
      }
      r.placements.push_back(gp);
    }
    for (const auto& s : doc.at("swaps")) {
      const auto e = s.at("edge").get<std::vector<int>>();
      if (e.size() != 2) throw InputError("swap edge needs two ends");
      r.swaps.push_back({Edge(e[0], e[1]), s.at("block").get<int>()});
    }
    r.used_flexible = edges_from_json(doc.at("used_flexible"));
    r.swap_count = doc.at("swap_count").get<int>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("result: ") + e.what());
  }
}

}  // namespace qarch
