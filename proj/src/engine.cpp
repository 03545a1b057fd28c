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

#include "unigen/engine.hpp"

#include <bit>
#include <ostream>

#include "sat_solver.hpp"

namespace unigen {

namespace {

// Direct parity expansion: forbid every assignment of the vars whose xor
// differs from `parity`. 2^(w-1) clauses of width w.
void emit_parity_clauses(detail::SatSolver& solver,
                         const std::vector<int>& vars, bool parity) {
  if (vars.empty()) {
    if (parity) solver.add_clause({});  // "0 = 1"
    return;
  }
  uint32_t w = static_cast<uint32_t>(vars.size());
  std::vector<int> clause(w);
  for (uint32_t mask = 0; mask < (1u << w); mask++) {
    // mask = violating assignment; bit set means var true there.
    if ((std::popcount(mask) & 1) == (parity ? 1 : 0)) continue;
    for (uint32_t k = 0; k < w; k++)
      clause[k] = (mask >> k) & 1 ? -vars[k] : vars[k];
    solver.add_clause(clause);
  }
}

// Splits constraints wider than `limit` into chained pieces via fresh
// variables, then expands each piece.
void encode_xor(detail::SatSolver& solver, const XorConstraint& c,
                uint32_t limit) {
  std::vector<int> vars(c.vars.begin(), c.vars.end());
  while (vars.size() > limit) {
    int aux = static_cast<int>(solver.new_var());
    std::vector<int> chunk(vars.begin(), vars.begin() + (limit - 1));
    chunk.push_back(aux);
    emit_parity_clauses(solver, chunk, false);  // aux = xor(chunk)
    std::vector<int> rest;
    rest.reserve(vars.size() - (limit - 1) + 1);
    rest.push_back(aux);
    rest.insert(rest.end(), vars.begin() + (limit - 1), vars.end());
    vars = std::move(rest);
  }
  emit_parity_clauses(solver, vars, c.parity);
}

// Gauss-Jordan over GF(2) on the whole xor system before encoding. Rows of
// the reduced system carry one pivot variable plus free variables only, so
// unit propagation recovers the affine structure that clause learning alone
// cannot (dense random systems blow up CDCL search otherwise). Row
// operations preserve the solution set exactly; an inconsistent system
// reduces to "0 = 1". The bsat contract is untouched.
std::vector<XorConstraint> reduce_xor_system(
    std::span<const XorConstraint> xors, const SamplingSet& s) {
  const size_t n = s.size();
  const size_t words = (n + 63) / 64;
  std::vector<Var> order(s.vars());
  std::vector<Var> sorted_vars(order);
  std::sort(sorted_vars.begin(), sorted_vars.end());
  auto position = [&](Var v) {
    // Position within the sorted sampling variables; any fixed order works.
    return static_cast<size_t>(
        std::lower_bound(sorted_vars.begin(), sorted_vars.end(), v) -
        sorted_vars.begin());
  };

  struct Row {
    std::vector<uint64_t> bits;
    bool parity;
  };
  std::vector<Row> rows;
  rows.reserve(xors.size());
  for (const auto& c : xors) {
    Row r{std::vector<uint64_t>(words, 0), c.parity};
    for (Var v : c.vars) {
      size_t p = position(v);
      r.bits[p / 64] ^= uint64_t{1} << (p % 64);
    }
    rows.push_back(std::move(r));
  }

  size_t pivot_row = 0;
  for (size_t col = 0; col < n && pivot_row < rows.size(); col++) {
    size_t w = col / 64;
    uint64_t mask = uint64_t{1} << (col % 64);
    size_t found = pivot_row;
    while (found < rows.size() && !(rows[found].bits[w] & mask)) found++;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    for (size_t r = 0; r < rows.size(); r++) {
      if (r == pivot_row || !(rows[r].bits[w] & mask)) continue;
      for (size_t k = 0; k < words; k++)
        rows[r].bits[k] ^= rows[pivot_row].bits[k];
      rows[r].parity ^= rows[pivot_row].parity;
    }
    pivot_row++;
  }

  std::vector<XorConstraint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    XorConstraint c;
    c.parity = r.parity;
    for (size_t p = 0; p < n; p++)
      if (r.bits[p / 64] & (uint64_t{1} << (p % 64)))
        c.vars.push_back(sorted_vars[p]);
    if (c.vars.empty() && !c.parity) continue;  // 0 = 0
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

SolverSession::SolverSession(const CnfFormula& f,
                             std::span<const XorConstraint> xors,
                             SamplingSet blocking_set, EngineConfig cfg)
    : blocking_(std::move(blocking_set)), base_vars_(f.num_vars()) {
  blocking_.validate_against(f);
  for (const auto& c : xors)
    for (Var v : c.vars)
      if (!blocking_.contains(v))
        throw ContractViolation(
            "xor constraint variable " + std::to_string(v) +
            " outside the blocking set");
  if (cfg.xor_expand_width < 2 || cfg.xor_expand_width > 20)
    throw ContractViolation("xor expansion width out of range");

  solver_ = std::make_unique<detail::SatSolver>(f.num_vars(), cfg.seed);
  for (const auto& cl : f.clauses()) solver_->add_clause(cl);
  for (const auto& c : reduce_xor_system(xors, blocking_))
    encode_xor(*solver_, c, cfg.xor_expand_width);
  if (cfg.budget)
    deadline_ = std::chrono::steady_clock::now() + *cfg.budget;
  trace_ = cfg.trace;
  if (trace_)
    *trace_ << "session open: " << f.num_clauses() << " clauses, "
            << xors.size() << " xor constraints\n";
}

SolverSession::~SolverSession() {
  if (trace_ && solver_)
    *trace_ << "session close: retract " << blocked_ << " blocking clauses\n";
}
SolverSession::SolverSession(SolverSession&&) noexcept = default;
SolverSession& SolverSession::operator=(SolverSession&&) noexcept = default;

SolveResult SolverSession::solve_one() {
  auto res = solver_->solve(deadline_);
  switch (res) {
    case detail::SatSolver::Result::unsat:
      return {SolveStatus::unsat, std::nullopt};
    case detail::SatSolver::Result::timeout:
      return {SolveStatus::timeout, std::nullopt};
    case detail::SatSolver::Result::sat:
      break;
  }
  std::vector<uint8_t> vals(base_vars_);
  for (uint32_t v = 1; v <= base_vars_; v++)
    vals[v - 1] = solver_->model_value(v) ? 1 : 0;
  return {SolveStatus::sat,
          Assignment::over_range(base_vars_, std::move(vals))};
}

void SolverSession::block(const Assignment& s_projection) {
  std::vector<int> clause;
  clause.reserve(blocking_.size());
  for (Var v : blocking_.vars()) {
    int lit = static_cast<int>(v);
    clause.push_back(s_projection.value(v) ? -lit : lit);
  }
  solver_->cancel_to_root();
  solver_->add_clause(clause);
  blocked_++;
  if (trace_) {
    *trace_ << "block:";
    for (int lit : clause) *trace_ << ' ' << lit;
    *trace_ << " 0\n";
  }
}

WitnessList bsat(const CnfFormula& f, std::span<const XorConstraint> xors,
                 const SamplingSet& s, uint64_t bound, EngineConfig cfg) {
  if (bound == 0) throw ContractViolation("bsat bound must be >= 1");
  SolverSession session(f, xors, s, cfg);
  WitnessList out;
  while (out.witnesses.size() < bound) {
    SolveResult r = session.solve_one();
    if (r.status == SolveStatus::timeout) {
      out.timed_out = true;
      return out;
    }
    if (r.status == SolveStatus::unsat) {
      out.exhausted = true;
      return out;
    }
    session.block(project(*r.model, s));
    out.witnesses.push_back(std::move(*r.model));
  }
  return out;
}

}  // namespace unigen
