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
#include <vector>

#include "unigen/engine.hpp"
#include "unigen/formula.hpp"
#include "unigen/rng.hpp"

namespace unigen {

/// Estimate C with the contract
///   Pr[ |R_F|/(1+tolerance) <= C <= (1+tolerance)|R_F| ] >= confidence.
struct CountEstimate {
  uint64_t value = 0;
  double tolerance = 0.0;
  double confidence = 0.0;
};

/// Packs a projection onto s into bit k = value of s.vars()[k]. |S| <= 63.
uint64_t pack_projection(const Assignment& a, const SamplingSet& s);

/// All distinct S-projections of solutions, packed. Refuses |S| beyond the
/// guard rather than risking an inexact answer.
std::vector<uint64_t> enumerate_projections(const CnfFormula& f,
                                            const SamplingSet& s,
                                            uint32_t guard_bits = 24);

/// Exact number of distinct S-projections of solutions; equals |R_F| when S
/// is an independent support. Guard as above.
uint64_t exact_count(const CnfFormula& f, const SamplingSet& s,
                     uint32_t guard_bits = 24);

/// Cell threshold T used per hashing trial at the given tolerance.
uint64_t counting_cell_threshold(double tolerance);

/// Smallest odd trial count whose majority amplification of the per-trial
/// success probability 0.77 reaches the requested confidence.
uint32_t counting_trials(double confidence);

/// Hashing-based approximate counter: per trial, grow the hash width until
/// the chosen cell holds between 1 and T witnesses, estimate |Y|*2^m, and
/// take the median across trials. The small-count fast path returns an
/// exact value at full confidence.
CountEstimate approx_count(const CnfFormula& f, const SamplingSet& s,
                           double tolerance, double confidence, Rng& rng,
                           const EngineConfig& engine = {});

}  // namespace unigen
