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
#include <map>
#include <optional>
#include <string>

#include "unigen/counting.hpp"
#include "unigen/formula.hpp"
#include "unigen/sampler.hpp"

namespace unigen {

/// Per-witness draw counts plus the failure tally; counts are keyed by the
/// packed S-projection. counts total + failures always equals total_draws.
struct Histogram {
  std::map<uint64_t, uint64_t> counts;
  uint64_t total_draws = 0;
  uint64_t failures = 0;

  void record(uint64_t key) {
    counts[key]++;
    total_draws++;
  }
  void record_failure() {
    failures++;
    total_draws++;
  }
  uint64_t successes() const { return total_draws - failures; }
};

/// occurrence count -> number of distinct witnesses drawn that many times.
/// When the witness universe size is known, the count-0 row is included.
using FrequencyOfFrequency = std::map<uint64_t, uint64_t>;

FrequencyOfFrequency frequency_of_frequency(
    const Histogram& h, std::optional<uint64_t> universe = {});

/// Chi-square statistic of the histogram against the uniform distribution
/// over `universe` cells (expected count = successes / universe).
double chi_square_vs_uniform(const Histogram& h, uint64_t universe);

struct UniformityReport {
  uint64_t draws = 0;
  uint64_t distinct_witnesses = 0;  // |R_F| from exact enumeration
  double success_rate = 0.0;
  double min_probability = 0.0;  // over all of R_F, unseen counting as 0
  double max_probability = 0.0;
  double bound_lo = 0.0;  // 1/((1+eps)(|R_F|-1))
  double bound_hi = 0.0;  // (1+eps)/(|R_F|-1)
  double slack_sigmas = 4.0;
  double widened_lo = 0.0;
  double widened_hi = 0.0;
  bool bounds_pass = false;  // all witnesses inside the widened interval
  double chi_square_sampler = 0.0;
  double chi_square_ideal = 0.0;
};

/// Exact-enumeration uniform baseline: one uniform index per draw.
Histogram ideal_sampler(const CnfFormula& f, const SamplingSet& s, uint64_t n,
                        Rng& rng, uint32_t guard_bits = 24);

struct ComparisonResult {
  Histogram sampler_hist;
  Histogram ideal_hist;
  FrequencyOfFrequency sampler_fof;
  FrequencyOfFrequency ideal_fof;
  UniformityReport report;
};

/// Draws n from the sampler (failures recorded, not resampled) and n from
/// the ideal baseline using independent streams of one seeded family, then
/// compares the two distributions.
ComparisonResult run_comparison(const CnfFormula& f, const SamplingSet& s,
                                double epsilon, uint64_t n, Rng& rng,
                                const SamplerConfig& cfg = {},
                                uint32_t threads = 1,
                                double slack_sigmas = 4.0,
                                uint32_t guard_bits = 24);

/// Writes fof_*.csv / hist_*.csv and a human-readable summary.txt into dir.
/// Output is byte-stable for identical inputs.
void emit_report(const ComparisonResult& result, const SamplingSet& s,
                 const std::string& dir);

}  // namespace unigen
