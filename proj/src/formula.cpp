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

#include "unigen/formula.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace unigen {

Assignment::Assignment(std::vector<Var> vars, std::vector<uint8_t> values)
    : vars_(std::move(vars)), values_(std::move(values)) {
  if (vars_.size() != values_.size())
    throw ContractViolation("assignment: domain/value size mismatch");
  for (size_t i = 0; i + 1 < vars_.size(); i++) {
    if (vars_[i] >= vars_[i + 1])
      throw ContractViolation("assignment: domain not strictly ascending");
  }
  for (Var v : vars_)
    if (v == 0) throw ContractViolation("assignment: variable index 0");
}

Assignment Assignment::over_range(uint32_t n, std::vector<uint8_t> values) {
  std::vector<Var> vars(n);
  for (uint32_t i = 0; i < n; i++) vars[i] = i + 1;
  return Assignment(std::move(vars), std::move(values));
}

bool Assignment::contains(Var v) const {
  // Contiguous 1..n domains are the common case.
  if (v >= 1 && v <= vars_.size() && vars_[v - 1] == v) return true;
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

bool Assignment::value(Var v) const {
  if (v >= 1 && v <= vars_.size() && vars_[v - 1] == v)
    return values_[v - 1] != 0;
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v)
    throw ContractViolation("assignment: variable " + std::to_string(v) +
                            " not in domain");
  return values_[static_cast<size_t>(it - vars_.begin())] != 0;
}

namespace {

std::vector<int> normalize_clause(std::vector<int> lits, uint32_t num_vars) {
  if (lits.empty()) throw ContractViolation("empty clause");
  std::sort(lits.begin(), lits.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  std::vector<int> out;
  out.reserve(lits.size());
  for (int lit : lits) {
    if (lit == 0) throw ContractViolation("literal 0 inside clause");
    uint32_t v = static_cast<uint32_t>(std::abs(lit));
    if (v > num_vars)
      throw ContractViolation("literal " + std::to_string(lit) +
                              " out of range");
    if (!out.empty() && out.back() == lit) continue;  // duplicate
    if (!out.empty() && out.back() == -lit)
      throw ContractViolation("tautological clause");
    out.push_back(lit);
  }
  return out;
}

}  // namespace

CnfFormula::CnfFormula(uint32_t num_vars,
                       std::vector<std::vector<int>> clauses)
    : num_vars_(num_vars) {
  if (num_vars == 0) throw ContractViolation("formula must have >= 1 variable");
  clauses_.reserve(clauses.size());
  for (auto& cl : clauses)
    clauses_.push_back(normalize_clause(std::move(cl), num_vars));
}

SamplingSet::SamplingSet(std::vector<Var> vars) : vars_(std::move(vars)) {
  if (vars_.empty()) throw ContractViolation("sampling set must be non-empty");
  sorted_ = vars_;
  std::sort(sorted_.begin(), sorted_.end());
  for (size_t i = 0; i + 1 < sorted_.size(); i++)
    if (sorted_[i] == sorted_[i + 1])
      throw ContractViolation("duplicate sampling variable " +
                              std::to_string(sorted_[i]));
  if (sorted_.front() == 0)
    throw ContractViolation("sampling variable index 0");
}

SamplingSet SamplingSet::full(uint32_t num_vars) {
  std::vector<Var> vars(num_vars);
  for (uint32_t i = 0; i < num_vars; i++) vars[i] = i + 1;
  return SamplingSet(std::move(vars));
}

bool SamplingSet::contains(Var v) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), v);
}

void SamplingSet::validate_against(const CnfFormula& f) const {
  if (vars_.empty())
    throw ContractViolation("sampling set must be non-empty");
  if (sorted_.back() > f.num_vars())
    throw ContractViolation("sampling variable " +
                            std::to_string(sorted_.back()) +
                            " exceeds formula support " +
                            std::to_string(f.num_vars()));
}

namespace {

struct Tokenizer {
  std::istream& in;
  size_t line_no = 0;
  std::string line;
  std::istringstream toks;

  explicit Tokenizer(std::istream& s) : in(s) {}

  bool next_line() {
    while (std::getline(in, line)) {
      line_no++;
      toks.clear();
      toks.str(line);
      return true;
    }
    return false;
  }
};

long parse_int_token(const std::string& tok, size_t line_no,
                     const char* what) {
  size_t pos = 0;
  long v;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected ") + what + ", got '" +
                                  tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line_no, std::string("expected ") + what + ", got '" +
                                  tok + "'");
  return v;
}

}  // namespace

ParseResult parse_dimacs(std::istream& in) {
  Tokenizer tz(in);

  bool have_header = false;
  long declared_vars = 0, declared_clauses = 0;
  std::vector<Var> ind_vars;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  bool in_clause = false;

  while (tz.next_line()) {
    std::string tok;
    if (!(tz.toks >> tok)) continue;  // blank line

    if (tok == "c") {
      std::string kind;
      if (!(tz.toks >> kind) || kind != "ind") continue;  // plain comment
      bool terminated = false;
      std::string t;
      while (tz.toks >> t) {
        long v = parse_int_token(t, tz.line_no, "sampling variable");
        if (v == 0) {
          terminated = true;
          if (tz.toks >> t)
            throw ParseError(tz.line_no, "tokens after 'c ind' terminator");
          break;
        }
        if (v < 0)
          throw ParseError(tz.line_no, "negative sampling variable");
        Var var = static_cast<Var>(v);
        if (std::find(ind_vars.begin(), ind_vars.end(), var) != ind_vars.end())
          throw ParseError(tz.line_no, "duplicate 'c ind' variable " +
                                           std::to_string(var));
        ind_vars.push_back(var);
      }
      if (!terminated)
        throw ParseError(tz.line_no, "'c ind' line not terminated by 0");
      continue;
    }

    if (tok == "p") {
      if (have_header) throw ParseError(tz.line_no, "duplicate header");
      std::string fmt;
      if (!(tz.toks >> fmt) || fmt != "cnf")
        throw ParseError(tz.line_no, "malformed header: expected 'p cnf'");
      std::string a, b, extra;
      if (!(tz.toks >> a >> b))
        throw ParseError(tz.line_no, "malformed header: missing counts");
      declared_vars = parse_int_token(a, tz.line_no, "variable count");
      declared_clauses = parse_int_token(b, tz.line_no, "clause count");
      if (tz.toks >> extra)
        throw ParseError(tz.line_no, "malformed header: trailing tokens");
      if (declared_vars <= 0)
        throw ParseError(tz.line_no, "variable count must be positive");
      if (declared_clauses < 0)
        throw ParseError(tz.line_no, "clause count must be non-negative");
      have_header = true;
      continue;
    }

    // Clause literals.
    if (!have_header)
      throw ParseError(tz.line_no, "clause before 'p cnf' header");
    std::string t = tok;
    do {
      long v = parse_int_token(t, tz.line_no, "literal");
      if (v == 0) {
        if (!in_clause) throw ParseError(tz.line_no, "empty clause");
        if (static_cast<long>(clauses.size()) == declared_clauses)
          throw ParseError(tz.line_no, "clause count mismatch: extra clause");
        try {
          clauses.push_back(normalize_clause(
              std::move(current), static_cast<uint32_t>(declared_vars)));
        } catch (const ContractViolation& e) {
          throw ParseError(tz.line_no, e.what());
        }
        current.clear();
        in_clause = false;
      } else {
        if (std::labs(v) > declared_vars)
          throw ParseError(tz.line_no,
                           "literal " + std::to_string(v) + " out of range");
        if (static_cast<long>(clauses.size()) == declared_clauses)
          throw ParseError(tz.line_no, "clause count mismatch: extra clause");
        current.push_back(static_cast<int>(v));
        in_clause = true;
      }
    } while (tz.toks >> t);
  }

  if (!have_header) throw ParseError(tz.line_no, "missing 'p cnf' header");
  if (in_clause)
    throw ParseError(tz.line_no, "unterminated clause at end of input");
  if (static_cast<long>(clauses.size()) != declared_clauses)
    throw ParseError(tz.line_no,
                     "clause count mismatch: declared " +
                         std::to_string(declared_clauses) + ", found " +
                         std::to_string(clauses.size()));

  CnfFormula f(static_cast<uint32_t>(declared_vars), std::move(clauses));
  std::optional<SamplingSet> s;
  if (!ind_vars.empty()) {
    for (Var v : ind_vars)
      if (v > f.num_vars())
        throw ParseError(tz.line_no, "sampling variable " + std::to_string(v) +
                                         " out of range");
    s = SamplingSet(std::move(ind_vars));
  }
  return ParseResult{std::move(f), std::move(s)};
}

ParseResult parse_dimacs(const std::string& text) {
  std::istringstream ss(text);
  return parse_dimacs(ss);
}

void emit_dimacs(const CnfFormula& f, const std::optional<SamplingSet>& s,
                 std::ostream& out) {
  if (s) {
    const auto& vars = s->vars();
    for (size_t i = 0; i < vars.size(); i += 10) {
      out << "c ind";
      for (size_t j = i; j < std::min(vars.size(), i + 10); j++)
        out << ' ' << vars[j];
      out << " 0\n";
    }
  }
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& cl : f.clauses()) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
}

std::string emit_dimacs(const CnfFormula& f,
                        const std::optional<SamplingSet>& s) {
  std::ostringstream ss;
  emit_dimacs(f, s, ss);
  return ss.str();
}

bool evaluate(const CnfFormula& f, const Assignment& a) {
  if (a.size() != f.num_vars())
    throw ContractViolation("evaluate: assignment is not total over support");
  for (Var v = 1; v <= f.num_vars(); v++)
    if (!a.contains(v))
      throw ContractViolation("evaluate: assignment is not total over support");
  for (const auto& cl : f.clauses()) {
    bool sat = false;
    for (int lit : cl) {
      if (a.value(static_cast<Var>(std::abs(lit))) == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Assignment project(const Assignment& a, const SamplingSet& s) {
  std::vector<Var> vars;
  vars.reserve(s.size());
  for (Var v : s.vars()) {
    if (!a.contains(v))
      throw ContractViolation("project: variable " + std::to_string(v) +
                              " not in assignment domain");
    vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  std::vector<uint8_t> vals;
  vals.reserve(vars.size());
  for (Var v : vars) vals.push_back(a.value(v) ? 1 : 0);
  return Assignment(std::move(vars), std::move(vals));
}

std::string format_witness(const Assignment& a, const SamplingSet& s) {
  std::vector<Var> vars = s.vars();
  std::sort(vars.begin(), vars.end());
  std::string out;
  for (Var v : vars) {
    if (!a.value(v)) out += '-';
    out += std::to_string(v);
    out += ' ';
  }
  out += '0';
  return out;
}

uint64_t formula_fingerprint(const CnfFormula& f, const SamplingSet& s) {
  // FNV-1a over the canonical DIMACS emission.
  std::string text = emit_dimacs(f, s);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace unigen
