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


#include "qarch/sat.hpp"

#include <algorithm>
#include <cassert>

namespace qarch::sat {

namespace {

// Luby sequence element i (0-based) for restart scheduling.
double luby(double y, int i) {
  int size = 1;
  int seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  double r = 1.0;
  for (int k = 0; k < seq; ++k) r *= y;
  return r;
}

}  // namespace

int Solver::new_var() {
  const int v = num_vars();
  assigns_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  polarity_.push_back(true);  // prefer false
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  binary_watches_.emplace_back();
  binary_watches_.emplace_back();
  heap_insert(v);
  return v;
}

bool Solver::model_value(Lit l) const {
  const int a = model_.at(static_cast<std::size_t>(l.var()));
  return (l.negative() ? -a : a) > 0;
}

void Solver::enqueue(Lit l, CRef reason) {
  const auto v = static_cast<std::size_t>(l.var());
  assigns_[v] = l.negative() ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::attach(std::vector<Lit> lits, bool learnt, int lbd) {
  const CRef cref = static_cast<CRef>(db_.size());
  if (lits.size() == 2) {
    binary_watches_[static_cast<std::size_t>(lits[0].code())].push_back(
        {cref, lits[1]});
    binary_watches_[static_cast<std::size_t>(lits[1].code())].push_back(
        {cref, lits[0]});
  } else {
    watches_[static_cast<std::size_t>(lits[0].code())].push_back(
        {cref, lits[1]});
    watches_[static_cast<std::size_t>(lits[1].code())].push_back(
        {cref, lits[0]});
  }
  db_.push_back(Clause{static_cast<std::uint32_t>(pool_.size()),
                       static_cast<std::uint32_t>(lits.size()), 0.0f, lbd,
                       learnt, false});
  pool_.insert(pool_.end(), lits.begin(), lits.end());
  if (learnt) {
    learnts_.push_back(cref);
    ++num_learnt_;
  } else {
    ++num_original_;
  }
  return cref;
}

bool Solver::add_clause(std::span<const Lit> input) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits(input.begin(), input.end());
  for (Lit l : lits) {
    assert(l.valid() && l.var() < num_vars());
    (void)l;
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  Lit prev;
  for (Lit l : lits) {
    if (value(l) > 0 || (prev.valid() && l == ~prev)) return true;
    if (value(l) < 0 || (prev.valid() && l == prev)) continue;
    kept.push_back(l);
    prev = l;
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    ok_ = propagate() == kNoReason;
    return ok_;
  }
  attach(std::move(kept), false, 0);
  return true;
}

Solver::CRef Solver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    ++stats_.propagations;
    for (const BinaryWatcher& b :
         binary_watches_[static_cast<std::size_t>(false_lit.code())]) {
      const int val = value(b.other);
      if (val > 0) continue;
      Lit* c = lits(b.cref);
      if (c[0] != b.other) std::swap(c[0], c[1]);
      if (val < 0) {
        conflict = b.cref;
        break;
      }
      enqueue(b.other, b.cref);
    }
    if (conflict != kNoReason) {
      qhead_ = trail_.size();
      break;
    }
    auto& ws = watches_[static_cast<std::size_t>(false_lit.code())];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i++];
      if (value(w.blocker) > 0) {
        ws[j++] = w;
        continue;
      }
      const Clause& c = db_[static_cast<std::size_t>(w.cref)];
      Lit* cl = pool_.data() + c.start;
      if (cl[0] == false_lit) std::swap(cl[0], cl[1]);
      const Lit first = cl[0];
      if (first != w.blocker && value(first) > 0) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::uint32_t k = 2; k < c.size; ++k) {
        if (value(cl[k]) >= 0) {
          std::swap(cl[1], cl[k]);
          watches_[static_cast<std::size_t>(cl[1].code())].push_back(
              {w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) < 0) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

void Solver::analyze(CRef conflict, std::vector<Lit>& learnt,
                     int& backtrack_level, int& lbd) {
  int path_count = 0;
  Lit p;
  learnt.clear();
  learnt.push_back(Lit());
  auto index = static_cast<std::ptrdiff_t>(trail_.size()) - 1;

  do {
    const Clause& c = db_[static_cast<std::size_t>(conflict)];
    if (c.learnt) bump_clause(conflict);
    const Lit* cl = lits(conflict);
    for (std::uint32_t k = p.valid() ? 1 : 0; k < c.size; ++k) {
      const Lit q = cl[k];
      const auto v = static_cast<std::size_t>(q.var());
      if (!seen_[v] && level(q.var()) > 0) {
        bump_var(q.var());
        seen_[v] = 1;
        if (level(q.var()) >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[static_cast<std::size_t>(
        trail_[static_cast<std::size_t>(index)].var())]) {
      --index;
    }
    p = trail_[static_cast<std::size_t>(index)];
    --index;
    conflict = reason_[static_cast<std::size_t>(p.var())];
    seen_[static_cast<std::size_t>(p.var())] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = ~p;

  // Recursive minimization.
  analyze_clear_.assign(learnt.begin(), learnt.end());
  unsigned abstract = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    abstract |= abstract_level(learnt[k].var());
  }
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const Lit q = learnt[k];
    if (reason_[static_cast<std::size_t>(q.var())] == kNoReason ||
        !literal_redundant(q, abstract)) {
      learnt[keep++] = q;
    }
  }
  learnt.resize(keep);

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level(learnt[k].var()) > level(learnt[max_i].var())) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level(learnt[1].var());
  }

  std::vector<int> levels;
  levels.reserve(learnt.size());
  for (Lit q : learnt) levels.push_back(level(q.var()));
  std::sort(levels.begin(), levels.end());
  lbd = static_cast<int>(std::unique(levels.begin(), levels.end()) -
                         levels.begin());

  for (Lit q : analyze_clear_) seen_[static_cast<std::size_t>(q.var())] = 0;
}

bool Solver::literal_redundant(Lit p, unsigned abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const CRef reason = reason_[static_cast<std::size_t>(q.var())];
    const Lit* cl = lits(reason);
    const std::uint32_t size = db_[static_cast<std::size_t>(reason)].size;
    for (std::uint32_t k = 1; k < size; ++k) {
      const Lit r = cl[k];
      const auto v = static_cast<std::size_t>(r.var());
      if (seen_[v] || level(r.var()) == 0) continue;
      if (reason_[v] != kNoReason &&
          (abstract_level(r.var()) & abstract_levels) != 0) {
        seen_[v] = 1;
        analyze_stack_.push_back(r);
        analyze_clear_.push_back(r);
      } else {
        for (std::size_t j = top; j < analyze_clear_.size(); ++j) {
          seen_[static_cast<std::size_t>(analyze_clear_[j].var())] = 0;
        }
        analyze_clear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void Solver::cancel_until(int target) {
  if (decision_level() <= target) return;
  const auto stop = static_cast<std::size_t>(
      trail_lim_[static_cast<std::size_t>(target)]);
  for (std::size_t k = trail_.size(); k-- > stop;) {
    const int v = trail_[k].var();
    assigns_[static_cast<std::size_t>(v)] = 0;
    reason_[static_cast<std::size_t>(v)] = kNoReason;
    polarity_[static_cast<std::size_t>(v)] = trail_[k].negative();
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(target));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == 0) {
      return Lit::make(v, polarity_[static_cast<std::size_t>(v)]);
    }
  }
  return Lit();
}

bool Solver::locked(CRef cref) const {
  const Lit first = lits(cref)[0];
  return value(first) > 0 &&
         reason_[static_cast<std::size_t>(first.var())] == cref;
}

void Solver::reduce_db() {
  std::vector<CRef> candidates;
  std::vector<CRef> kept;
  for (CRef cr : learnts_) {
    const Clause& c = db_[static_cast<std::size_t>(cr)];
    if (c.removed) continue;
    if (c.lbd <= 2 || c.size <= 2 || locked(cr)) {
      kept.push_back(cr);
    } else {
      candidates.push_back(cr);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [this](CRef a, CRef b) {
                     const Clause& ca = db_[static_cast<std::size_t>(a)];
                     const Clause& cb = db_[static_cast<std::size_t>(b)];
                     if (ca.lbd != cb.lbd) return ca.lbd > cb.lbd;
                     return ca.activity < cb.activity;
                   });
  const std::size_t drop = candidates.size() / 2;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (k < drop) {
      Clause& c = db_[static_cast<std::size_t>(candidates[k])];
      c.removed = true;
      wasted_ += c.size;
      --num_learnt_;
    } else {
      kept.push_back(candidates[k]);
    }
  }
  std::sort(kept.begin(), kept.end());
  learnts_ = std::move(kept);
  for (auto& ws : watches_) {
    std::erase_if(ws, [this](const Watcher& w) {
      return db_[static_cast<std::size_t>(w.cref)].removed;
    });
  }
  if (2 * wasted_ > pool_.size()) compact_pool();
}

void Solver::compact_pool() {
  std::vector<Lit> pool;
  pool.reserve(pool_.size() - wasted_);
  for (Clause& c : db_) {
    if (c.removed) {
      c.size = 0;
      continue;
    }
    const auto first = pool_.begin() + c.start;
    c.start = static_cast<std::uint32_t>(pool.size());
    pool.insert(pool.end(), first, first + c.size);
  }
  pool_ = std::move(pool);
  wasted_ = 0;
}

bool Solver::out_of_time() {
  return budget_ && std::chrono::steady_clock::now() >= deadline_;
}

Status Solver::search(int conflict_limit, std::span<const Lit> assumptions) {
  int conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const CRef conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        return Status::Unsat;
      }
      int backtrack = 0;
      int lbd = 0;
      analyze(conflict, learnt, backtrack, lbd);
      cancel_until(backtrack);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const CRef cr = attach(learnt, true, lbd);
        bump_clause(cr);
        enqueue(learnt[0], cr);
      }
      decay_var();
      decay_clause();
      if ((stats_.conflicts & 255u) == 0 && out_of_time()) {
        return Status::Unknown;
      }
      continue;
    }

    if (conflicts >= conflict_limit) {
      cancel_until(0);
      return Status::Unknown;
    }
    if (static_cast<double>(num_learnt_) -
            static_cast<double>(trail_.size()) >=
        max_learnts_) {
      reduce_db();
      max_learnts_ *= 1.1;
    }

    Lit next;
    while (decision_level() < static_cast<int>(assumptions.size())) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      if (value(a) > 0) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) < 0) {
        return Status::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (!next.valid()) {
      ++stats_.decisions;
      next = pick_branch();
      if (!next.valid()) return Status::Sat;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

Status Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  model_.clear();
  if (!ok_) return Status::Unsat;
  cancel_until(0);
  if (budget_) deadline_ = std::chrono::steady_clock::now() + *budget_;
  max_learnts_ = std::max(max_learnts_,
                          static_cast<double>(num_original_) / 3.0 + 2000.0);

  Status status = Status::Unknown;
  for (int restart = 0; status == Status::Unknown; ++restart) {
    if (out_of_time()) break;
    const int limit = static_cast<int>(luby(2.0, restart) * 100.0);
    status = search(limit, assumptions);
    if (status == Status::Unknown) ++stats_.restarts;
    if (status == Status::Unknown && out_of_time()) break;
  }
  if (status == Status::Sat) model_.assign(assigns_.begin(), assigns_.end());
  cancel_until(0);
  return status;
}

void Solver::bump_var(int var) {
  auto& act = activity_[static_cast<std::size_t>(var)];
  act += var_inc_;
  if (act > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(var)) {
    heap_up(static_cast<std::size_t>(heap_index_[static_cast<std::size_t>(var)]));
  }
}

void Solver::bump_clause(CRef cref) {
  Clause& c = db_[static_cast<std::size_t>(cref)];
  c.activity += static_cast<float>(cla_inc_);
  if (c.activity > 1e20f) {
    for (CRef cr : learnts_) db_[static_cast<std::size_t>(cr)].activity *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(int var) {
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(heap_.size());
  heap_.push_back(var);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const int var = heap_[i];
  const double act = activity_[static_cast<std::size_t>(var)];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    const int pv = heap_[parent];
    const double pact = activity_[static_cast<std::size_t>(pv)];
    // Ties go to the lower variable index for a stable order.
    if (pact > act || (pact == act && pv < var)) break;
    heap_[i] = pv;
    heap_index_[static_cast<std::size_t>(pv)] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = var;
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const int var = heap_[i];
  const double act = activity_[static_cast<std::size_t>(var)];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size()) {
      const int a = heap_[child];
      const int b = heap_[child + 1];
      const double aa = activity_[static_cast<std::size_t>(a)];
      const double ab = activity_[static_cast<std::size_t>(b)];
      if (ab > aa || (ab == aa && b < a)) ++child;
    }
    const int cv = heap_[child];
    const double cact = activity_[static_cast<std::size_t>(cv)];
    if (act > cact || (act == cact && var < cv)) break;
    heap_[i] = cv;
    heap_index_[static_cast<std::size_t>(cv)] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = var;
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(i);
}

int Solver::heap_pop() {
  const int top = heap_.front();
  heap_index_[static_cast<std::size_t>(top)] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace qarch::sat
