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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unigen/errors.hpp"

namespace unigen {

/// Variables are 1-based everywhere, matching DIMACS. Literals are signed
/// ints: +v / -v.
using Var = uint32_t;

/// Total truth-value map over a stated variable set (stored ascending).
class Assignment {
 public:
  Assignment() = default;

  /// vars must be strictly ascending; values parallel to vars.
  Assignment(std::vector<Var> vars, std::vector<uint8_t> values);

  /// Assignment over the contiguous domain 1..n.
  static Assignment over_range(uint32_t n, std::vector<uint8_t> values);

  bool value(Var v) const;
  bool contains(Var v) const;
  const std::vector<Var>& vars() const { return vars_; }
  size_t size() const { return vars_.size(); }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<Var> vars_;
  std::vector<uint8_t> values_;
};

/// CNF clause database over variables 1..num_vars. Clauses are literal sets:
/// construction sorts by variable, drops duplicate literals, and rejects
/// tautological or empty clauses. Immutable once built.
class CnfFormula {
 public:
  CnfFormula(uint32_t num_vars, std::vector<std::vector<int>> clauses);

  uint32_t num_vars() const { return num_vars_; }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }
  size_t num_clauses() const { return clauses_.size(); }

  bool operator==(const CnfFormula&) const = default;

 private:
  uint32_t num_vars_ = 0;
  std::vector<std::vector<int>> clauses_;
};

/// Ordered set of sampling variables (the set S hash constraints and
/// blocking clauses range over). Order of first appearance is preserved.
class SamplingSet {
 public:
  /// Empty placeholder; every consuming operation rejects it.
  SamplingSet() = default;

  explicit SamplingSet(std::vector<Var> vars);

  /// The full support 1..n.
  static SamplingSet full(uint32_t num_vars);

  const std::vector<Var>& vars() const { return vars_; }
  size_t size() const { return vars_.size(); }
  bool contains(Var v) const;

  /// Throws ContractViolation if any index exceeds the formula's support.
  void validate_against(const CnfFormula& f) const;

  bool operator==(const SamplingSet&) const = default;

 private:
  std::vector<Var> vars_;
  std::vector<Var> sorted_;
};

struct ParseResult {
  CnfFormula formula;
  std::optional<SamplingSet> sampling_set;
};

/// Parses DIMACS CNF with the `c ind v1 v2 ... 0` sampling-set extension.
/// The sampling set is the union of all `c ind` lines in order of first
/// appearance; duplicates are an error. Throws ParseError with the
/// offending line number.
ParseResult parse_dimacs(std::istream& in);
ParseResult parse_dimacs(const std::string& text);

/// Inverse of parse_dimacs: `c ind` lines first, then the `p cnf` header,
/// then one clause per line with literals in ascending variable order.
void emit_dimacs(const CnfFormula& f, const std::optional<SamplingSet>& s,
                 std::ostream& out);
std::string emit_dimacs(const CnfFormula& f,
                        const std::optional<SamplingSet>& s);

/// True iff every clause contains a satisfied literal. The assignment must
/// be total over 1..num_vars.
bool evaluate(const CnfFormula& f, const Assignment& a);

/// Restriction of `a` to the variables of `s` (which must all be in its
/// domain).
Assignment project(const Assignment& a, const SamplingSet& s);

/// Witness line format: space-separated signed literals of the sampling set
/// in ascending variable order, terminated by 0.
std::string format_witness(const Assignment& a, const SamplingSet& s);

/// Stable 64-bit content hash of (formula, sampling set); used to bind
/// serialized presample states to their inputs.
uint64_t formula_fingerprint(const CnfFormula& f, const SamplingSet& s);

}  // namespace unigen
