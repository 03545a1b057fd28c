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
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "unigen/counting.hpp"
#include "unigen/engine.hpp"
#include "unigen/formula.hpp"
#include "unigen/rng.hpp"

namespace unigen {

/// Cell-size parameters for a tolerance epsilon > 1.71:
///   epsilon = (1+kappa)(2.23 + 0.48/(1-kappa)^2) - 1,   kappa in [0,1)
///   pivot   = ceil(3 e^{1/2} (1 + 1/kappa)^2)
///   accept window: lo_thresh = pivot/(1+kappa) <= |Y| <= 1+(1+kappa)pivot.
struct KappaPivot {
  double kappa = 0.0;
  uint64_t pivot = 0;
  double hi_thresh = 0.0;
  double lo_thresh = 0.0;

  /// Enumeration bound that makes the window check decidable: one past the
  /// largest acceptable cell.
  uint64_t bsat_bound() const;
};

/// Solves the kappa equation by bisection (the map is strictly increasing
/// on [0,1)). Rejects epsilon <= 1.71, where no kappa exists.
KappaPivot compute_kappa_pivot(double epsilon);

/// Test hook matching approx_count's shape; lets callers substitute an
/// exact counter to isolate sampler behavior from counter noise.
using CounterFn = std::function<CountEstimate(
    const CnfFormula&, const SamplingSet&, double, double, Rng&)>;

struct SamplerConfig {
  EngineConfig engine;  // per-bsat budget and xor encoding; seed is per-call
  /// A timed-out cell enumeration retries the same width with fresh hash
  /// randomness this many times before the draw fails.
  uint32_t timeout_retries = 3;
  /// Counter invoked during presampling; empty = approx_count.
  CounterFn counter;
  double counter_tolerance = 0.8;
  double counter_confidence = 0.8;
};

enum class PresampleMode { easy_path, hash_path };

/// Amortized one-time state: either the full witness list of a small
/// formula, or the hash-width anchor q derived from a count estimate.
/// Immutable once built; draws share it read-only.
struct PresampleState {
  const CnfFormula* formula = nullptr;
  SamplingSet sampling_set;
  double epsilon = 0.0;
  KappaPivot thresholds;
  PresampleMode mode = PresampleMode::easy_path;
  std::vector<Assignment> easy_witnesses;  // easy path: all witnesses
  int32_t q = 0;                           // hash path
  uint64_t count_estimate = 0;             // hash path: the C behind q
};

PresampleState presample(const CnfFormula& f, double epsilon,
                         const SamplingSet& s, Rng& rng,
                         const SamplerConfig& cfg = {});

struct DrawDiagnostics {
  std::vector<uint32_t> tried_widths;
  uint64_t final_cell_size = 0;
  bool timed_out = false;
};

struct DrawOutcome {
  std::optional<Assignment> witness;  // absent on failure
  DrawDiagnostics diag;
  bool success() const { return witness.has_value(); }
};

/// One sampling attempt. Easy path: uniform pick from the cached list.
/// Hash path: try widths q-3..q with fresh hash randomness, accept the
/// first cell inside the window, pick uniformly from it.
DrawOutcome draw(const PresampleState& state, Rng& rng,
                 const SamplerConfig& cfg = {});

/// presample followed by a single draw from the same random source.
DrawOutcome unigen(const CnfFormula& f, double epsilon, const SamplingSet& s,
                   Rng& rng, const SamplerConfig& cfg = {});

/// n independent draws against shared state. Per-draw seed streams are
/// derived up front, so the outcome sequence is identical whatever the
/// thread count.
std::vector<DrawOutcome> draw_many(const PresampleState& state, uint64_t n,
                                   Rng& rng, const SamplerConfig& cfg = {},
                                   uint32_t threads = 1);

/// Streaming variant of draw_many: sink(index, outcome) is invoked from
/// worker threads (any index order); outcomes are not stored.
void for_each_draw(const PresampleState& state, uint64_t n, Rng& rng,
                   const SamplerConfig& cfg, uint32_t threads,
                   const std::function<void(uint64_t, DrawOutcome&&)>& sink);

/// Draws until a witness appears, at most max_attempts times.
DrawOutcome draw_until_success(const PresampleState& state,
                               uint32_t max_attempts, Rng& rng,
                               const SamplerConfig& cfg = {});

/// Line-oriented, versioned dump of a presample state so later runs can
/// skip lines 1-11. Load verifies the formula fingerprint.
void save_presample_state(const PresampleState& state, std::ostream& out);
PresampleState load_presample_state(std::istream& in, const CnfFormula& f,
                                    const SamplingSet& s);

}  // namespace unigen
