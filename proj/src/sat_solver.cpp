/*
 unigen -- almost-uniform SAT witness sampler

 Copyright (c) 2026, the unigen authors. All rights reserved.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
 */

#include "sat_solver.hpp"

#include <algorithm>
#include <cassert>

namespace unigen::detail {

SatSolver::SatSolver(uint32_t num_vars, uint64_t seed) : rng_(seed) {
  assigns_.assign(num_vars, 0);
  level_.assign(num_vars, 0);
  reason_.assign(num_vars, kNoReason);
  polarity_.assign(num_vars, 0);
  activity_.assign(num_vars, 0.0);
  seen_.assign(num_vars, 0);
  watches_.resize(2 * num_vars);
  heap_pos_.assign(num_vars, -1);
  heap_.reserve(num_vars);
  for (uint32_t v = 0; v < num_vars; v++) heap_insert(v);
  trail_.reserve(num_vars);
}

uint32_t SatSolver::new_var() {
  assigns_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  polarity_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(num_vars() - 1);
  return num_vars();
}

void SatSolver::add_clause(const std::vector<int>& ext_lits) {
  assert(decision_level() == 0);
  if (!ok_) return;
  // Drop literals already false at root; a root-true literal satisfies the
  // clause outright.
  std::vector<Lit> lits;
  lits.reserve(ext_lits.size());
  for (int e : ext_lits) {
    Lit p = from_dimacs(e);
    int8_t v = value(p);
    if (v > 0) return;
    if (v == 0) lits.push_back(p);
  }
  if (lits.empty()) {
    ok_ = false;
    return;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  attach_clause(std::move(lits), false);
}

uint32_t SatSolver::attach_clause(std::vector<Lit> lits, bool learnt) {
  uint32_t cref = static_cast<uint32_t>(clauses_.size());
  Clause c{static_cast<uint32_t>(pool_.size()),
           static_cast<uint32_t>(lits.size()), 0.0f, learnt};
  pool_.insert(pool_.end(), lits.begin(), lits.end());
  clauses_.push_back(c);
  watches_[neg(lits[0])].push_back({cref, lits[1]});
  watches_[neg(lits[1])].push_back({cref, lits[0]});
  if (learnt) learnt_refs_.push_back(cref);
  return cref;
}

void SatSolver::enqueue(Lit p, uint32_t reason) {
  uint32_t v = var_of(p);
  assert(assigns_[v] == 0);
  assigns_[v] = (p & 1) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  polarity_[v] = (p & 1) ? 0 : 1;
  trail_.push_back(p);
}

uint32_t SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];  // p became true; visit clauses watching ~p
    auto& ws = watches_[p];
    size_t i = 0, j = 0;
    uint32_t confl = kNoReason;
    while (i < ws.size()) {
      Watch w = ws[i];
      if (value(w.blocker) > 0) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      Lit* lits = pool_.data() + c.start;
      Lit false_lit = neg(p);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      if (value(lits[0]) > 0) {
        ws[j++] = {w.cref, lits[0]};
        i++;
        continue;
      }
      bool moved = false;
      for (uint32_t k = 2; k < c.size; k++) {
        if (value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[neg(lits[1])].push_back({w.cref, lits[0]});
          moved = true;
          break;
        }
      }
      if (moved) {
        i++;
        continue;
      }
      // unit or conflict
      if (value(lits[0]) < 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
        break;
      }
      enqueue(lits[0], w.cref);
      ws[j++] = ws[i++];
    }
    ws.resize(j);
    if (confl != kNoReason) return confl;
  }
  return kNoReason;
}

void SatSolver::analyze(uint32_t confl, std::vector<Lit>& out_learnt,
                        uint32_t& out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(0);  // placeholder for the asserting literal
  uint32_t path_count = 0;
  Lit p = UINT32_MAX;
  size_t index = trail_.size();

  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    Lit* lits = pool_.data() + c.start;
    for (uint32_t k = (p == UINT32_MAX ? 0 : 1); k < c.size; k++) {
      Lit q = lits[k];
      uint32_t v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= decision_level())
          path_count++;
        else
          out_learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    path_count--;
  } while (path_count > 0);
  out_learnt[0] = neg(p);
  std::vector<Lit> to_clear = out_learnt;

  // Cheap self-subsumption: drop literals whose reason clause is fully seen.
  size_t keep = 1;
  for (size_t k = 1; k < out_learnt.size(); k++) {
    uint32_t v = var_of(out_learnt[k]);
    uint32_t r = reason_[v];
    bool redundant = false;
    if (r != kNoReason) {
      redundant = true;
      Clause& rc = clauses_[r];
      Lit* rl = pool_.data() + rc.start;
      for (uint32_t t = 0; t < rc.size; t++) {
        uint32_t rv = var_of(rl[t]);
        if (rv == v || level_[rv] == 0) continue;
        if (!seen_[rv]) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant) out_learnt[keep++] = out_learnt[k];
  }
  out_learnt.resize(keep);

  if (out_learnt.size() == 1) {
    out_btlevel = 0;
  } else {
    size_t max_i = 1;
    for (size_t k = 2; k < out_learnt.size(); k++)
      if (level_[var_of(out_learnt[k])] > level_[var_of(out_learnt[max_i])])
        max_i = k;
    std::swap(out_learnt[1], out_learnt[max_i]);
    out_btlevel = level_[var_of(out_learnt[1])];
  }

  for (Lit q : to_clear) seen_[var_of(q)] = 0;
}

void SatSolver::backtrack(uint32_t lvl) {
  if (decision_level() <= lvl) return;
  size_t bound = trail_lim_[lvl];
  for (size_t i = trail_.size(); i > bound; i--) {
    uint32_t v = var_of(trail_[i - 1]);
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(lvl);
  qhead_ = bound;
}

void SatSolver::cancel_to_root() { backtrack(0); }

SatSolver::Lit SatSolver::pick_branch() {
  // Occasional random decision, seeded, so enumeration order is not tied to
  // activity history alone.
  if (rng_.below(50) == 0) {
    uint32_t v = static_cast<uint32_t>(rng_.below(num_vars()));
    if (assigns_[v] == 0)
      return 2 * v + (polarity_[v] ? 0 : 1);
  }
  while (!heap_.empty()) {
    uint32_t v = heap_[0];
    heap_[0] = heap_.back();
    heap_pos_[heap_[0]] = 0;
    heap_.pop_back();
    heap_pos_[v] = -1;
    if (!heap_.empty()) heap_sift_down(0);
    if (assigns_[v] == 0) return 2 * v + (polarity_[v] ? 0 : 1);
  }
  return UINT32_MAX;
}

void SatSolver::bump_var(uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_update(v);
}

void SatSolver::bump_clause(Clause& c) {
  c.activity += static_cast<float>(cla_inc_);
  if (c.activity > 1e20f) {
    for (uint32_t r : learnt_refs_) clauses_[r].activity *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

void SatSolver::decay_activities() {
  var_inc_ /= kVarDecay;
  cla_inc_ /= kClaDecay;
}

void SatSolver::reduce_learnts() {
  assert(decision_level() == 0);
  std::vector<uint32_t> sorted = learnt_refs_;
  std::sort(sorted.begin(), sorted.end(), [&](uint32_t a, uint32_t b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  std::vector<char> keep(clauses_.size(), 1);
  size_t to_drop = sorted.size() / 2;
  for (size_t i = 0; i < to_drop; i++) {
    if (clauses_[sorted[i]].size <= 2) continue;
    keep[sorted[i]] = 0;
  }
  rebuild_at_root(keep);
}

void SatSolver::rebuild_at_root(const std::vector<char>& keep) {
  // Root-level rebuild: re-simplify every surviving clause against the
  // permanent assignment, then reattach watches from scratch.
  std::vector<Lit> new_pool;
  new_pool.reserve(pool_.size());
  std::vector<Clause> new_clauses;
  new_clauses.reserve(clauses_.size());
  std::vector<uint32_t> new_learnts;
  for (auto& ws : watches_) ws.clear();
  for (uint32_t v = 0; v < num_vars(); v++) reason_[v] = kNoReason;

  std::vector<Lit> tmp;
  for (uint32_t cref = 0; cref < clauses_.size(); cref++) {
    if (!keep[cref]) continue;
    Clause& c = clauses_[cref];
    Lit* lits = pool_.data() + c.start;
    tmp.clear();
    bool satisfied = false;
    for (uint32_t k = 0; k < c.size; k++) {
      int8_t v = value(lits[k]);
      if (v > 0) {
        satisfied = true;
        break;
      }
      if (v == 0) tmp.push_back(lits[k]);
    }
    if (satisfied) continue;
    if (tmp.empty()) {
      ok_ = false;
      continue;
    }
    if (tmp.size() == 1) {
      enqueue(tmp[0], kNoReason);
      continue;
    }
    uint32_t nref = static_cast<uint32_t>(new_clauses.size());
    new_clauses.push_back(Clause{static_cast<uint32_t>(new_pool.size()),
                                 static_cast<uint32_t>(tmp.size()), c.activity,
                                 c.learnt});
    new_pool.insert(new_pool.end(), tmp.begin(), tmp.end());
    watches_[neg(tmp[0])].push_back({nref, tmp[1]});
    watches_[neg(tmp[1])].push_back({nref, tmp[0]});
    if (c.learnt) new_learnts.push_back(nref);
  }
  pool_ = std::move(new_pool);
  clauses_ = std::move(new_clauses);
  learnt_refs_ = std::move(new_learnts);
  if (ok_ && propagate() != kNoReason) ok_ = false;
}

uint64_t SatSolver::luby(uint64_t x) {
  // x-th element (0-based) of 1,1,2,1,1,2,4,...
  uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return uint64_t{1} << seq;
}

SatSolver::Result SatSolver::solve(
    std::optional<std::chrono::steady_clock::time_point> deadline) {
  if (!ok_) return Result::unsat;
  if (deadline && std::chrono::steady_clock::now() >= *deadline) {
    cancel_to_root();
    return Result::timeout;
  }

  uint64_t restart_no = 0;
  uint64_t conflicts_at_restart = conflicts_;
  uint64_t restart_budget = 100 * luby(restart_no);
  std::vector<Lit> learnt;

  for (;;) {
    uint32_t confl = propagate();
    if (confl != kNoReason) {
      conflicts_++;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::unsat;
      }
      uint32_t btlevel = 0;
      analyze(confl, learnt, btlevel);
      backtrack(btlevel);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        uint32_t cref = attach_clause(learnt, true);
        enqueue(learnt[0], cref);
      }
      decay_activities();

      if ((conflicts_ & 63) == 0 && deadline &&
          std::chrono::steady_clock::now() >= *deadline) {
        cancel_to_root();
        return Result::timeout;
      }
      if (conflicts_ - conflicts_at_restart >= restart_budget) {
        restart_no++;
        restart_budget = 100 * luby(restart_no);
        conflicts_at_restart = conflicts_;
        backtrack(0);
        if (learnt_refs_.size() > kMaxLearnts) reduce_learnts();
        if (!ok_) return Result::unsat;
      }
    } else {
      if (trail_.size() == num_vars()) {
        model_.assign(assigns_.begin(), assigns_.end());
        return Result::sat;
      }
      Lit next = pick_branch();
      if (next == UINT32_MAX) {
        // Heap exhausted but trail incomplete: re-seed heap and continue.
        for (uint32_t v = 0; v < num_vars(); v++)
          if (assigns_[v] == 0 && heap_pos_[v] < 0) heap_insert(v);
        continue;
      }
      trail_lim_.push_back(static_cast<uint32_t>(trail_.size()));
      enqueue(next, kNoReason);
    }
  }
}

void SatSolver::heap_insert(uint32_t v) {
  heap_pos_[v] = static_cast<int32_t>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_.size() - 1);
}

void SatSolver::heap_update(uint32_t v) {
  heap_sift_up(static_cast<size_t>(heap_pos_[v]));
}

void SatSolver::heap_sift_up(size_t pos) {
  while (pos > 0) {
    size_t parent = (pos - 1) / 2;
    if (heap_less(heap_[parent], heap_[pos])) {
      std::swap(heap_pos_[heap_[parent]], heap_pos_[heap_[pos]]);
      std::swap(heap_[parent], heap_[pos]);
      pos = parent;
    } else {
      break;
    }
  }
}

void SatSolver::heap_sift_down(size_t pos) {
  size_t n = heap_.size();
  for (;;) {
    size_t l = 2 * pos + 1, r = l + 1, largest = pos;
    if (l < n && heap_less(heap_[largest], heap_[l])) largest = l;
    if (r < n && heap_less(heap_[largest], heap_[r])) largest = r;
    if (largest == pos) break;
    std::swap(heap_pos_[heap_[largest]], heap_pos_[heap_[pos]]);
    std::swap(heap_[largest], heap_[pos]);
    pos = largest;
  }
}

}  // namespace unigen::detail
