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

#include "unigen/sampler.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace unigen {

uint64_t KappaPivot::bsat_bound() const {
  return static_cast<uint64_t>(std::ceil(hi_thresh)) + 1;
}

KappaPivot compute_kappa_pivot(double epsilon) {
  if (!(epsilon > 1.71))
    throw ContractViolation(
        "epsilon must exceed 1.71 (no kappa in [0,1) exists at or below it)");
  auto curve = [](double k) {
    return (1.0 + k) * (2.23 + 0.48 / ((1.0 - k) * (1.0 - k))) - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; i++) {
    double mid = 0.5 * (lo + hi);
    if (curve(mid) < epsilon)
      lo = mid;
    else
      hi = mid;
  }
  KappaPivot kp;
  kp.kappa = 0.5 * (lo + hi);
  double pivot_real =
      std::ceil(3.0 * std::exp(0.5) * (1.0 + 1.0 / kp.kappa) *
                (1.0 + 1.0 / kp.kappa));
  if (!(pivot_real < 4.6e18))
    throw ContractViolation("epsilon too close to 1.71: pivot overflows");
  kp.pivot = static_cast<uint64_t>(pivot_real);
  kp.hi_thresh = 1.0 + (1.0 + kp.kappa) * static_cast<double>(kp.pivot);
  kp.lo_thresh = static_cast<double>(kp.pivot) / (1.0 + kp.kappa);
  return kp;
}

namespace {

CountEstimate run_counter(const PresampleState& state,
                          const SamplerConfig& cfg, Rng& rng) {
  if (cfg.counter)
    return cfg.counter(*state.formula, state.sampling_set,
                       cfg.counter_tolerance, cfg.counter_confidence, rng);
  return approx_count(*state.formula, state.sampling_set,
                      cfg.counter_tolerance, cfg.counter_confidence, rng,
                      cfg.engine);
}

// One attempt with its own random stream (already split off the caller's).
DrawOutcome single_draw(const PresampleState& state, Rng& rng,
                        const SamplerConfig& cfg) {
  DrawOutcome out;
  if (state.mode == PresampleMode::easy_path) {
    if (state.easy_witnesses.empty()) return out;  // unsat formula
    uint64_t j = rng.below(state.easy_witnesses.size());
    out.witness = state.easy_witnesses[j];
    out.diag.final_cell_size = state.easy_witnesses.size();
    return out;
  }

  const auto& s = state.sampling_set;
  const uint64_t bound = state.thresholds.bsat_bound();
  const uint32_t n = static_cast<uint32_t>(s.size());
  // Widths below 1 cannot produce an acceptable cell once the easy check
  // failed (the whole of R_F already overflows the window), so they are
  // skipped rather than tried.
  for (int32_t i = state.q - 3; i <= state.q; i++) {
    if (i < 1) continue;
    uint32_t retries = 0;
    for (;;) {
      HashFunction h = HashFunction::sample(rng, n, static_cast<uint32_t>(i));
      CellId alpha = CellId::sample(rng, static_cast<uint32_t>(i));
      EngineConfig ecfg = cfg.engine;
      ecfg.seed = rng.next_u64();
      WitnessList cell = bsat(*state.formula, to_constraints(h, alpha, s), s,
                              bound, ecfg);
      if (cell.timed_out) {
        if (++retries > cfg.timeout_retries) {
          out.diag.timed_out = true;
          return out;
        }
        continue;  // same width, fresh hash
      }
      out.diag.tried_widths.push_back(static_cast<uint32_t>(i));
      out.diag.final_cell_size = cell.size();
      double size = static_cast<double>(cell.size());
      if (state.thresholds.lo_thresh <= size &&
          size <= state.thresholds.hi_thresh) {
        uint64_t j = rng.below(cell.size());
        out.witness = std::move(cell.witnesses[j]);
        return out;
      }
      break;  // next width
    }
  }
  return out;
}

}  // namespace

PresampleState presample(const CnfFormula& f, double epsilon,
                         const SamplingSet& s, Rng& rng,
                         const SamplerConfig& cfg) {
  s.validate_against(f);
  PresampleState state;
  state.formula = &f;
  state.sampling_set = s;
  state.epsilon = epsilon;
  state.thresholds = compute_kappa_pivot(epsilon);

  EngineConfig ecfg = cfg.engine;
  ecfg.seed = rng.next_u64();
  WitnessList all =
      bsat(f, {}, s, state.thresholds.bsat_bound(), ecfg);
  if (all.timed_out)
    throw TimeoutError("presample: initial enumeration timed out");
  if (all.exhausted && static_cast<double>(all.size()) <=
                           state.thresholds.hi_thresh) {
    state.mode = PresampleMode::easy_path;
    state.easy_witnesses = std::move(all.witnesses);
    return state;
  }

  state.mode = PresampleMode::hash_path;
  CountEstimate est = run_counter(state, cfg, rng);
  if (est.value == 0)
    throw CountingError("presample: counter returned 0 for a formula with "
                        "witnesses beyond the easy threshold");
  state.count_estimate = est.value;
  state.q = static_cast<int32_t>(std::ceil(
      std::log2(static_cast<double>(est.value)) + std::log2(1.8) -
      std::log2(static_cast<double>(state.thresholds.pivot))));
  return state;
}

DrawOutcome draw(const PresampleState& state, Rng& rng,
                 const SamplerConfig& cfg) {
  Rng stream(rng.next_u64());
  return single_draw(state, stream, cfg);
}

DrawOutcome unigen(const CnfFormula& f, double epsilon, const SamplingSet& s,
                   Rng& rng, const SamplerConfig& cfg) {
  PresampleState state = presample(f, epsilon, s, rng, cfg);
  return draw(state, rng, cfg);
}

void for_each_draw(const PresampleState& state, uint64_t n, Rng& rng,
                   const SamplerConfig& cfg, uint32_t threads,
                   const std::function<void(uint64_t, DrawOutcome&&)>& sink) {
  if (n == 0) throw ContractViolation("draw count must be >= 1");
  std::vector<uint64_t> seeds(n);
  for (auto& sd : seeds) sd = rng.next_u64();

  if (threads <= 1) {
    for (uint64_t i = 0; i < n; i++) {
      Rng stream(seeds[i]);
      sink(i, single_draw(state, stream, cfg));
    }
    return;
  }

  std::vector<std::thread> pool;
  uint64_t chunk = (n + threads - 1) / threads;
  for (uint32_t t = 0; t < threads; t++) {
    uint64_t begin = t * chunk;
    uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (uint64_t i = begin; i < end; i++) {
        Rng stream(seeds[i]);
        sink(i, single_draw(state, stream, cfg));
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<DrawOutcome> draw_many(const PresampleState& state, uint64_t n,
                                   Rng& rng, const SamplerConfig& cfg,
                                   uint32_t threads) {
  std::vector<DrawOutcome> out(n);
  for_each_draw(state, n, rng, cfg, threads,
                [&](uint64_t i, DrawOutcome&& o) { out[i] = std::move(o); });
  return out;
}

DrawOutcome draw_until_success(const PresampleState& state,
                               uint32_t max_attempts, Rng& rng,
                               const SamplerConfig& cfg) {
  if (max_attempts == 0)
    throw ContractViolation("max_attempts must be >= 1");
  DrawOutcome out;
  for (uint32_t i = 0; i < max_attempts; i++) {
    out = draw(state, rng, cfg);
    if (out.success()) return out;
  }
  return out;
}

void save_presample_state(const PresampleState& state, std::ostream& out) {
  out << "unigen-presample v1\n";
  out << "fingerprint " << formula_fingerprint(*state.formula,
                                               state.sampling_set)
      << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", state.epsilon);
  out << "epsilon " << buf << '\n';
  out << "pivot " << state.thresholds.pivot << '\n';
  if (state.mode == PresampleMode::hash_path) {
    out << "mode hash\n";
    out << "q " << state.q << '\n';
    out << "count " << state.count_estimate << '\n';
  } else {
    out << "mode easy\n";
    out << "witnesses " << state.easy_witnesses.size() << '\n';
    for (const auto& w : state.easy_witnesses) {
      out << "w";
      for (Var v : w.vars()) out << ' ' << (w.value(v) ? "" : "-") << v;
      out << " 0\n";
    }
  }
  out << "end\n";
}

namespace {

std::string expect_line(std::istream& in, size_t& line_no) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(line_no, "unexpected end of presample state");
  line_no++;
  return line;
}

}  // namespace

PresampleState load_presample_state(std::istream& in, const CnfFormula& f,
                                    const SamplingSet& s) {
  size_t line_no = 0;
  if (expect_line(in, line_no) != "unigen-presample v1")
    throw ParseError(line_no, "bad presample state header");

  PresampleState state;
  state.formula = &f;
  state.sampling_set = s;

  auto next_kv = [&](const std::string& key) {
    std::istringstream ss(expect_line(in, line_no));
    std::string k;
    ss >> k;
    if (k != key) throw ParseError(line_no, "expected '" + key + "' entry");
    std::string rest;
    std::getline(ss, rest);
    return rest;
  };

  uint64_t fp = std::stoull(next_kv("fingerprint"));
  if (fp != formula_fingerprint(f, s))
    throw ParseError(line_no,
                     "presample state belongs to a different formula");
  state.epsilon = std::stod(next_kv("epsilon"));
  state.thresholds = compute_kappa_pivot(state.epsilon);
  uint64_t pivot = std::stoull(next_kv("pivot"));
  if (pivot != state.thresholds.pivot)
    throw ParseError(line_no, "stored pivot disagrees with epsilon");

  std::istringstream mode_ss(expect_line(in, line_no));
  std::string k, mode;
  mode_ss >> k >> mode;
  if (k != "mode") throw ParseError(line_no, "expected 'mode' entry");
  if (mode == "hash") {
    state.mode = PresampleMode::hash_path;
    state.q = static_cast<int32_t>(std::stol(next_kv("q")));
    state.count_estimate = std::stoull(next_kv("count"));
  } else if (mode == "easy") {
    state.mode = PresampleMode::easy_path;
    size_t count = std::stoull(next_kv("witnesses"));
    for (size_t i = 0; i < count; i++) {
      std::istringstream ws(expect_line(in, line_no));
      std::string tag;
      ws >> tag;
      if (tag != "w") throw ParseError(line_no, "expected witness line");
      std::vector<uint8_t> vals(f.num_vars(), 0);
      std::vector<uint8_t> covered(f.num_vars(), 0);
      long lit;
      bool terminated = false;
      while (ws >> lit) {
        if (lit == 0) {
          terminated = true;
          break;
        }
        size_t v = static_cast<size_t>(std::labs(lit));
        if (v < 1 || v > f.num_vars())
          throw ParseError(line_no, "witness literal out of range");
        vals[v - 1] = lit > 0 ? 1 : 0;
        covered[v - 1] = 1;
      }
      if (!terminated)
        throw ParseError(line_no, "witness line not terminated by 0");
      for (uint8_t c : covered)
        if (!c) throw ParseError(line_no, "witness line is not total");
      state.easy_witnesses.push_back(
          Assignment::over_range(f.num_vars(), std::move(vals)));
    }
  } else {
    throw ParseError(line_no, "unknown presample mode '" + mode + "'");
  }
  if (expect_line(in, line_no) != "end")
    throw ParseError(line_no, "missing presample state terminator");
  return state;
}

}  // namespace unigen
