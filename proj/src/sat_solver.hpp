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

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "unigen/rng.hpp"

namespace unigen::detail {

/// Conflict-driven clause-learning SAT core. Variables are 1-based on the
/// external surface, literals are DIMACS-signed ints. Branching is
/// deterministic for a fixed seed, so enumeration runs replay exactly.
class SatSolver {
 public:
  enum class Result { sat, unsat, timeout };

  SatSolver(uint32_t num_vars, uint64_t seed);

  uint32_t num_vars() const { return static_cast<uint32_t>(assigns_.size()); }

  /// Fresh variable (for xor chaining); returns its 1-based index.
  uint32_t new_var();

  /// Clause over 1-based signed literals; must be called at decision level
  /// 0 (see cancel_to_root). An empty clause makes the instance unsat.
  void add_clause(const std::vector<int>& lits);

  /// Undoes all decisions; required before adding clauses mid-enumeration.
  void cancel_to_root();

  Result solve(
      std::optional<std::chrono::steady_clock::time_point> deadline = {});

  /// Valid after solve() returned sat.
  bool model_value(uint32_t var) const { return model_[var - 1] > 0; }

  bool okay() const { return ok_; }
  uint64_t num_conflicts() const { return conflicts_; }

 private:
  using Lit = uint32_t;  // 2*(var-1) + (negated ? 1 : 0)
  static constexpr uint32_t kNoReason = UINT32_MAX;

  static Lit from_dimacs(int lit) {
    uint32_t v = static_cast<uint32_t>(lit > 0 ? lit : -lit);
    return 2 * (v - 1) + (lit < 0 ? 1 : 0);
  }
  static Lit neg(Lit p) { return p ^ 1; }
  static uint32_t var_of(Lit p) { return p >> 1; }  // 0-based

  struct Clause {
    uint32_t start;
    uint32_t size;
    float activity;
    bool learnt;
  };
  struct Watch {
    uint32_t cref;
    Lit blocker;
  };

  int8_t value(Lit p) const {
    int8_t a = assigns_[var_of(p)];
    return (p & 1) ? static_cast<int8_t>(-a) : a;
  }

  void enqueue(Lit p, uint32_t reason);
  uint32_t propagate();  // returns conflicting cref or kNoReason
  void analyze(uint32_t confl, std::vector<Lit>& out_learnt,
               uint32_t& out_btlevel);
  void backtrack(uint32_t level);
  Lit pick_branch();
  uint32_t attach_clause(std::vector<Lit> lits, bool learnt);
  void bump_var(uint32_t v);
  void bump_clause(Clause& c);
  void decay_activities();
  void reduce_learnts();
  void rebuild_at_root(const std::vector<char>& keep);
  uint32_t decision_level() const {
    return static_cast<uint32_t>(trail_lim_.size());
  }

  // heap keyed by activity (max-heap)
  void heap_insert(uint32_t v);
  void heap_update(uint32_t v);
  void heap_sift_up(size_t pos);
  void heap_sift_down(size_t pos);
  bool heap_less(uint32_t a, uint32_t b) const {
    return activity_[a] < activity_[b] || (activity_[a] == activity_[b] && a > b);
  }

  static uint64_t luby(uint64_t i);

  bool ok_ = true;
  std::vector<Lit> pool_;
  std::vector<Clause> clauses_;
  std::vector<uint32_t> learnt_refs_;
  std::vector<std::vector<Watch>> watches_;

  std::vector<int8_t> assigns_;   // per var: 0 undef, 1 true, -1 false
  std::vector<uint32_t> level_;
  std::vector<uint32_t> reason_;
  std::vector<uint8_t> polarity_;  // saved phase
  std::vector<double> activity_;
  std::vector<uint8_t> seen_;

  std::vector<Lit> trail_;
  std::vector<uint32_t> trail_lim_;
  size_t qhead_ = 0;

  std::vector<uint32_t> heap_;
  std::vector<int32_t> heap_pos_;

  std::vector<int8_t> model_;

  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  static constexpr double kVarDecay = 0.95;
  static constexpr double kClaDecay = 0.999;
  static constexpr size_t kMaxLearnts = 20000;

  uint64_t conflicts_ = 0;
  Rng rng_;
};

}  // namespace unigen::detail
