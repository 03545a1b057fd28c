#include <doctest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "unigen/formula.hpp"

using namespace unigen;

TEST_CASE("parse: minimal formula without sampling set") {
  auto r = parse_dimacs("p cnf 2 1\n1 2 0\n");
  CHECK(r.formula.num_vars() == 2);
  REQUIRE(r.formula.num_clauses() == 1);
  CHECK(r.formula.clauses()[0] == std::vector<int>{1, 2});
  CHECK(!r.sampling_set.has_value());
}

TEST_CASE("parse: c ind line yields sampling set in order") {
  auto r = parse_dimacs("c ind 1 2 0\np cnf 3 2\n1 2 0\n-1 3 0\n");
  CHECK(r.formula.num_vars() == 3);
  CHECK(r.formula.num_clauses() == 2);
  REQUIRE(r.sampling_set.has_value());
  CHECK(r.sampling_set->vars() == std::vector<Var>{1, 2});
}

TEST_CASE("parse: sampling set may span several c ind lines") {
  auto r = parse_dimacs("c ind 3 1 0\nc ind 2 0\np cnf 3 1\n1 -2 3 0\n");
  REQUIRE(r.sampling_set.has_value());
  CHECK(r.sampling_set->vars() == std::vector<Var>{3, 1, 2});
}

TEST_CASE("parse: clauses may span lines and share lines") {
  auto r = parse_dimacs("p cnf 4 2\n1 2\n3 0 -1\n-4 0\n");
  REQUIRE(r.formula.num_clauses() == 2);
  CHECK(r.formula.clauses()[0] == std::vector<int>{1, 2, 3});
  CHECK(r.formula.clauses()[1] == std::vector<int>{-1, -4});
}

TEST_CASE("parse: duplicate literal inside a clause is dropped") {
  auto r = parse_dimacs("p cnf 2 1\n1 1 2 0\n");
  CHECK(r.formula.clauses()[0] == std::vector<int>{1, 2});
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> size_t {
    try {
      parse_dimacs(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("p dnf 2 1\n1 0\n") == 1);          // malformed header
  CHECK(line_of("p cnf 2 1\n1 3 0\n") == 2);        // literal out of range
  CHECK(line_of("p cnf 2 1\n1 0\n2 0\n") == 3);     // extra clause
  CHECK(line_of("p cnf 2 3\n1 0\n2 0\n") == 3);     // missing clause
  CHECK(line_of("c ind 1 1 0\np cnf 2 1\n1 0\n") == 1);  // duplicate ind var
  CHECK(line_of("p cnf 2 1\n1 -1 0\n") == 2);       // tautology
  CHECK(line_of("p cnf 2 1\n0\n") == 2);            // empty clause
  CHECK(line_of("c ind 1 2\np cnf 2 1\n1 0\n") == 1);  // unterminated ind
  CHECK(line_of("1 2 0\np cnf 2 1\n1 0\n") == 1);   // clause before header
  CHECK(line_of("p cnf 2 1\n1 2\n") == 2);          // unterminated clause
}

TEST_CASE("emit: no c ind lines without a sampling set") {
  auto r = parse_dimacs("p cnf 2 1\n1 2 0\n");
  std::string text = emit_dimacs(r.formula, std::nullopt);
  CHECK(text.find("c ind") == std::string::npos);
  CHECK(text == "p cnf 2 1\n1 2 0\n");
}

TEST_CASE("emit: c ind precedes header, literals ascend") {
  CnfFormula f(3, {{3, -1}, {2, 3, 1}});
  SamplingSet s({3, 1});
  std::string text = emit_dimacs(f, s);
  CHECK(text == "c ind 3 1 0\np cnf 3 2\n-1 3 0\n1 2 3 0\n");
}

TEST_CASE("parse/emit round-trip is a fixpoint on a generated corpus") {
  Rng rng(20260808);
  for (int i = 0; i < 50; i++) {
    uint32_t nvars = 2 + static_cast<uint32_t>(rng.below(10));
    uint32_t nclauses = 1 + static_cast<uint32_t>(rng.below(15));
    uint32_t width = 1 + static_cast<uint32_t>(rng.below(std::min(nvars, 4u)));
    CnfFormula f = oracles::random_cnf(rng, nvars, nclauses, width);
    std::optional<SamplingSet> s;
    if (rng.bit()) {
      std::vector<Var> vars;
      for (Var v = 1; v <= nvars; v++)
        if (rng.bit()) vars.push_back(v);
      if (!vars.empty()) s = SamplingSet(vars);
    }
    std::string text = emit_dimacs(f, s);
    auto back = parse_dimacs(text);
    CHECK(back.formula == f);
    CHECK(back.sampling_set == s);
    CHECK(emit_dimacs(back.formula, back.sampling_set) == text);
  }
}

TEST_CASE("evaluate: clause scan basics") {
  CnfFormula f(2, {{1, 2}});
  CHECK(!evaluate(f, Assignment::over_range(2, {0, 0})));
  CHECK(evaluate(f, Assignment::over_range(2, {1, 0})));
}

TEST_CASE("evaluate rejects partial assignments") {
  CnfFormula f(3, {{1, 2}});
  CHECK_THROWS_AS(evaluate(f, Assignment({1, 2}, {1, 1})),
                  ContractViolation);
}

TEST_CASE("evaluate agrees with the independent scan on random formulas") {
  Rng rng(7);
  for (int i = 0; i < 5; i++) {
    CnfFormula f = oracles::random_cnf(rng, 8, 20, 3);
    for (uint64_t a = 0; a < 256; a++) {
      std::vector<uint8_t> vals(8);
      for (int v = 0; v < 8; v++) vals[v] = (a >> v) & 1;
      CHECK(evaluate(f, Assignment::over_range(8, vals)) ==
            oracles::ref_eval(f, a));
    }
  }
}

TEST_CASE("evaluate is monotone under clause removal") {
  Rng rng(11);
  CnfFormula f = oracles::random_cnf(rng, 8, 12, 3);
  for (uint64_t a : oracles::ref_solutions(f)) {
    std::vector<uint8_t> vals(8);
    for (int v = 0; v < 8; v++) vals[v] = (a >> v) & 1;
    Assignment asg = Assignment::over_range(8, vals);
    REQUIRE(evaluate(f, asg));
    for (size_t drop = 0; drop < f.num_clauses(); drop++) {
      std::vector<std::vector<int>> fewer;
      for (size_t c = 0; c < f.num_clauses(); c++)
        if (c != drop) fewer.push_back(f.clauses()[c]);
      if (fewer.empty()) continue;
      CHECK(evaluate(CnfFormula(8, fewer), asg));
    }
  }
}

TEST_CASE("project: restriction and identity") {
  Assignment a({1, 2, 3}, {1, 0, 1});
  Assignment p = project(a, SamplingSet({1, 2}));
  CHECK(p.vars() == std::vector<Var>{1, 2});
  CHECK(p.value(1));
  CHECK(!p.value(2));
  CHECK(project(a, SamplingSet({1, 2, 3})) == a);
  CHECK_THROWS_AS(project(p, SamplingSet({3})), ContractViolation);
}

TEST_CASE("project is injective on witnesses of an independent support") {
  // x4 <-> x1^x2, x5 <-> x2^x3^1; S = {1,2,3} determines the rest.
  CnfFormula f = oracles::parity_formula(
      3, {{4, {1, 2}, false}, {5, {2, 3}, true}});
  SamplingSet s({1, 2, 3});
  REQUIRE(oracles::ref_is_independent_support(f, s));
  auto sols = oracles::ref_solutions(f);
  std::set<uint64_t> projections;
  for (uint64_t a : sols) projections.insert(oracles::ref_project(a, s));
  CHECK(projections.size() == sols.size());
  CHECK(sols.size() == 8);
}

TEST_CASE("format_witness orders by variable and terminates with 0") {
  Assignment a({1, 2, 5}, {1, 0, 1});
  CHECK(format_witness(a, SamplingSet({5, 1, 2})) == "1 -2 5 0");
}

TEST_CASE("constructor rejects bad clause sets") {
  CHECK_THROWS_AS(CnfFormula(2, {{1, -1}}), ContractViolation);
  CHECK_THROWS_AS(CnfFormula(2, {{}}), ContractViolation);
  CHECK_THROWS_AS(CnfFormula(2, {{3}}), ContractViolation);
  CHECK_THROWS_AS(CnfFormula(0, {}), ContractViolation);
  CHECK_THROWS_AS(SamplingSet(std::vector<Var>{}), ContractViolation);
  CHECK_THROWS_AS(SamplingSet({1, 1}), ContractViolation);
}
