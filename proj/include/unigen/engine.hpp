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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "unigen/formula.hpp"
#include "unigen/hashing.hpp"

namespace unigen {

namespace detail {
class SatSolver;
}

enum class SolveStatus { sat, unsat, timeout };

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  /// Present iff status == sat; total over the base formula's support (xor
  /// chaining variables are stripped).
  std::optional<Assignment> model;
};

struct EngineConfig {
  /// Wall-clock budget for one enumeration call. nullopt = unlimited.
  std::optional<std::chrono::milliseconds> budget =
      std::chrono::milliseconds{2'500'000};
  /// Xor constraints up to this width are expanded directly into CNF
  /// (2^(w-1) clauses); wider ones are split with fresh chaining variables.
  uint32_t xor_expand_width = 6;
  uint64_t seed = 0;
  /// Optional line-oriented debug trace of blocking-clause traffic. Not
  /// owned; must outlive the session.
  std::ostream* trace = nullptr;
};

/// One bounded-enumeration context: base formula, active xor constraints,
/// and the blocking clauses accumulated so far. Blocking clauses and xor
/// constraints mention only sampling-set variables. Single-threaded;
/// dropping the session retracts everything it added.
class SolverSession {
 public:
  SolverSession(const CnfFormula& f, std::span<const XorConstraint> xors,
                SamplingSet blocking_set, EngineConfig cfg = {});
  ~SolverSession();
  SolverSession(SolverSession&&) noexcept;
  SolverSession& operator=(SolverSession&&) noexcept;

  /// One satisfying assignment of base /\ xors /\ blocking, or unsat, or a
  /// distinguishable timeout once the session budget is spent.
  SolveResult solve_one();

  /// Excludes every solution sharing this projection onto the blocking set.
  void block(const Assignment& s_projection);

  const SamplingSet& blocking_set() const { return blocking_; }
  size_t num_blocking_clauses() const { return blocked_; }

 private:
  std::unique_ptr<detail::SatSolver> solver_;
  SamplingSet blocking_;
  uint32_t base_vars_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  size_t blocked_ = 0;
  std::ostream* trace_ = nullptr;
};

/// Result of bounded distinct-witness enumeration.
struct WitnessList {
  std::vector<Assignment> witnesses;  // over the full support, distinct on S
  bool exhausted = false;  // proved no further witness exists
  bool timed_out = false;  // budget expired first
  size_t size() const { return witnesses.size(); }
};

/// Up to `bound` witnesses of f /\ xors, pairwise distinct in their
/// projection onto s. exhausted is set iff unsatisfiability was proved with
/// fewer than `bound` found. Blocking clauses live only for the duration of
/// the call.
WitnessList bsat(const CnfFormula& f, std::span<const XorConstraint> xors,
                 const SamplingSet& s, uint64_t bound, EngineConfig cfg = {});

}  // namespace unigen
