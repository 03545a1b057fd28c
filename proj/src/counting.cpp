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

#include "unigen/counting.hpp"

#include <algorithm>
#include <cmath>

namespace unigen {

uint64_t pack_projection(const Assignment& a, const SamplingSet& s) {
  if (s.size() > 63)
    throw ContractViolation("projection packing limited to |S| <= 63");
  uint64_t key = 0;
  for (size_t k = 0; k < s.size(); k++)
    if (a.value(s.vars()[k])) key |= uint64_t{1} << k;
  return key;
}

std::vector<uint64_t> enumerate_projections(const CnfFormula& f,
                                            const SamplingSet& s,
                                            uint32_t guard_bits) {
  s.validate_against(f);
  if (s.size() > guard_bits)
    throw ContractViolation("refusing exact enumeration over " +
                            std::to_string(s.size()) +
                            " sampling variables (guard " +
                            std::to_string(guard_bits) + ")");
  EngineConfig cfg;
  cfg.budget.reset();  // exactness over promptness
  SolverSession session(f, {}, s, cfg);
  std::vector<uint64_t> keys;
  for (;;) {
    SolveResult r = session.solve_one();
    if (r.status != SolveStatus::sat) break;
    Assignment proj = project(*r.model, s);
    keys.push_back(pack_projection(proj, s));
    session.block(proj);
  }
  return keys;
}

uint64_t exact_count(const CnfFormula& f, const SamplingSet& s,
                     uint32_t guard_bits) {
  return enumerate_projections(f, s, guard_bits).size();
}

uint64_t counting_cell_threshold(double tolerance) {
  if (!(tolerance > 0.0))
    throw ContractViolation("counter tolerance must be positive");
  return 2 *
         static_cast<uint64_t>(std::ceil(
             std::exp(0.5) * (1.0 + 1.0 / tolerance) * (1.0 + 1.0 / tolerance)));
}

uint32_t counting_trials(double confidence) {
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw ContractViolation("counter confidence must lie in (0, 1)");
  constexpr double p = 0.77;
  for (uint32_t t = 1; t <= 199; t += 2) {
    // Pr[majority of t trials succeed], trials independent Bernoulli(p).
    double total = 0.0;
    double term = std::pow(1.0 - p, static_cast<double>(t));  // k = 0
    for (uint32_t k = 0; k <= t; k++) {
      if (2 * k > t) total += term;
      term *= p / (1.0 - p) * static_cast<double>(t - k) /
              static_cast<double>(k + 1);
    }
    if (total >= confidence) return t;
  }
  throw ContractViolation("confidence too demanding for median amplification");
}

CountEstimate approx_count(const CnfFormula& f, const SamplingSet& s,
                           double tolerance, double confidence, Rng& rng,
                           const EngineConfig& engine) {
  s.validate_against(f);
  if (s.size() > 57)
    throw ContractViolation("approximate counter supports |S| <= 57");
  const uint64_t cell_max = counting_cell_threshold(tolerance);
  const uint32_t trials = counting_trials(confidence);

  EngineConfig cfg = engine;

  // Small-count fast path: no hashing needed when the whole solution set
  // fits under the cell threshold.
  cfg.seed = rng.next_u64();
  WitnessList easy = bsat(f, {}, s, cell_max + 1, cfg);
  if (easy.timed_out)
    throw TimeoutError("approx_count: initial enumeration timed out");
  if (easy.exhausted && easy.size() <= cell_max)
    return CountEstimate{easy.size(), tolerance, 1.0};

  std::vector<uint64_t> trial_seeds(trials);
  for (auto& sd : trial_seeds) sd = rng.next_u64();

  std::vector<uint64_t> estimates;
  for (uint32_t t = 0; t < trials; t++) {
    Rng tr(trial_seeds[t]);
    for (uint32_t m = 1; m <= s.size(); m++) {
      HashFunction h = HashFunction::sample(tr, static_cast<uint32_t>(s.size()), m);
      CellId alpha = CellId::sample(tr, m);
      auto xors = to_constraints(h, alpha, s);
      cfg.seed = tr.next_u64();
      WitnessList cell = bsat(f, xors, s, cell_max + 1, cfg);
      if (cell.timed_out)
        throw TimeoutError("approx_count: cell enumeration timed out at m=" +
                           std::to_string(m));
      if (cell.size() >= 1 && cell.size() <= cell_max) {
        estimates.push_back(cell.size() << m);
        break;
      }
      // Cell too big (bound hit) or empty: try the next width.
    }
  }
  if (estimates.empty())
    throw CountingError("approx_count: no trial produced a usable cell");
  std::sort(estimates.begin(), estimates.end());
  uint64_t median = estimates[(estimates.size() - 1) / 2];
  return CountEstimate{median, tolerance, confidence};
}

}  // namespace unigen
