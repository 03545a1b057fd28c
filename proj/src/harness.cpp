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

#include "unigen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>

namespace unigen {

FrequencyOfFrequency frequency_of_frequency(
    const Histogram& h, std::optional<uint64_t> universe) {
  FrequencyOfFrequency fof;
  for (const auto& [key, count] : h.counts) {
    (void)key;
    fof[count]++;
  }
  if (universe && *universe > h.counts.size())
    fof[0] = *universe - h.counts.size();
  return fof;
}

double chi_square_vs_uniform(const Histogram& h, uint64_t universe) {
  if (universe == 0) throw ContractViolation("empty witness universe");
  uint64_t successes = h.successes();
  if (successes == 0) return 0.0;
  double expected = static_cast<double>(successes) /
                    static_cast<double>(universe);
  double chi = 0.0;
  for (const auto& [key, count] : h.counts) {
    (void)key;
    double d = static_cast<double>(count) - expected;
    chi += d * d / expected;
  }
  chi += static_cast<double>(universe - h.counts.size()) * expected;
  return chi;
}

Histogram ideal_sampler(const CnfFormula& f, const SamplingSet& s, uint64_t n,
                        Rng& rng, uint32_t guard_bits) {
  std::vector<uint64_t> keys = enumerate_projections(f, s, guard_bits);
  Histogram h;
  if (n == 0) return h;
  if (keys.empty())
    throw ContractViolation("cannot sample an unsatisfiable formula");
  for (uint64_t i = 0; i < n; i++)
    h.record(keys[rng.below(keys.size())]);
  return h;
}

ComparisonResult run_comparison(const CnfFormula& f, const SamplingSet& s,
                                double epsilon, uint64_t n, Rng& rng,
                                const SamplerConfig& cfg, uint32_t threads,
                                double slack_sigmas, uint32_t guard_bits) {
  std::vector<uint64_t> keys = enumerate_projections(f, s, guard_bits);
  if (keys.empty())
    throw ContractViolation("cannot compare on an unsatisfiable formula");
  const uint64_t universe = keys.size();

  // Independent streams from one seeded family, sampler first.
  Rng sampler_rng(rng.next_u64());
  Rng ideal_rng(rng.next_u64());

  ComparisonResult result;
  PresampleState state = presample(f, epsilon, s, sampler_rng, cfg);
  {
    std::mutex mu;
    for_each_draw(state, n, sampler_rng, cfg, threads,
                  [&](uint64_t, DrawOutcome&& o) {
                    if (o.success()) {
                      uint64_t key =
                          pack_projection(project(*o.witness, s), s);
                      std::lock_guard<std::mutex> lock(mu);
                      result.sampler_hist.record(key);
                    } else {
                      std::lock_guard<std::mutex> lock(mu);
                      result.sampler_hist.record_failure();
                    }
                  });
  }
  for (uint64_t i = 0; i < n; i++)
    result.ideal_hist.record(keys[ideal_rng.below(universe)]);

  result.sampler_fof = frequency_of_frequency(result.sampler_hist, universe);
  result.ideal_fof = frequency_of_frequency(result.ideal_hist, universe);

  UniformityReport& rep = result.report;
  rep.draws = n;
  rep.distinct_witnesses = universe;
  rep.success_rate =
      n == 0 ? 0.0
             : static_cast<double>(result.sampler_hist.successes()) /
                   static_cast<double>(n);
  rep.slack_sigmas = slack_sigmas;

  uint64_t min_count = UINT64_MAX, max_count = 0;
  for (uint64_t key : keys) {
    auto it = result.sampler_hist.counts.find(key);
    uint64_t c = it == result.sampler_hist.counts.end() ? 0 : it->second;
    min_count = std::min(min_count, c);
    max_count = std::max(max_count, c);
  }
  rep.min_probability =
      n == 0 ? 0.0 : static_cast<double>(min_count) / static_cast<double>(n);
  rep.max_probability =
      n == 0 ? 0.0 : static_cast<double>(max_count) / static_cast<double>(n);

  if (universe >= 2) {
    double w = static_cast<double>(universe - 1);
    rep.bound_lo = 1.0 / ((1.0 + epsilon) * w);
    rep.bound_hi = (1.0 + epsilon) / w;
  } else {
    rep.bound_lo = 0.0;
    rep.bound_hi = 1.0;
  }
  double nd = static_cast<double>(n);
  double sig_lo =
      n == 0 ? 0.0 : std::sqrt(rep.bound_lo * (1.0 - rep.bound_lo) / nd);
  double sig_hi =
      n == 0 ? 0.0 : std::sqrt(rep.bound_hi * (1.0 - rep.bound_hi) / nd);
  rep.widened_lo = std::max(0.0, rep.bound_lo - slack_sigmas * sig_lo);
  rep.widened_hi = std::min(1.0, rep.bound_hi + slack_sigmas * sig_hi);
  rep.bounds_pass = rep.min_probability >= rep.widened_lo &&
                    rep.max_probability <= rep.widened_hi;

  rep.chi_square_sampler = chi_square_vs_uniform(result.sampler_hist, universe);
  rep.chi_square_ideal = chi_square_vs_uniform(result.ideal_hist, universe);
  return result;
}

namespace {

std::string witness_text(uint64_t key, const SamplingSet& s) {
  // Decode, then render in ascending variable order.
  std::vector<std::pair<Var, bool>> lits;
  lits.reserve(s.size());
  for (size_t k = 0; k < s.size(); k++)
    lits.emplace_back(s.vars()[k], (key >> k) & 1);
  std::sort(lits.begin(), lits.end());
  std::string out;
  for (const auto& [v, val] : lits) {
    if (!val) out += '-';
    out += std::to_string(v);
    out += ' ';
  }
  out += '0';
  return out;
}

void write_fof_csv(const FrequencyOfFrequency& fof, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "count,multiplicity\n";
  for (const auto& [count, mult] : fof) out << count << ',' << mult << '\n';
}

void write_hist_csv(const Histogram& h, const SamplingSet& s,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "witness,count\n";
  for (const auto& [key, count] : h.counts)
    out << witness_text(key, s) << ',' << count << '\n';
}

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void emit_report(const ComparisonResult& result, const SamplingSet& s,
                 const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_fof_csv(result.sampler_fof, dir + "/fof_unigen.csv");
  write_fof_csv(result.ideal_fof, dir + "/fof_ideal.csv");
  write_hist_csv(result.sampler_hist, s, dir + "/hist_unigen.csv");
  write_hist_csv(result.ideal_hist, s, dir + "/hist_ideal.csv");

  const UniformityReport& r = result.report;
  std::ofstream out(dir + "/summary.txt");
  if (!out) throw std::runtime_error("cannot open " + dir + "/summary.txt");
  out << "draws per sampler:   " << r.draws << '\n';
  out << "distinct witnesses:  " << r.distinct_witnesses << '\n';
  out << "success rate:        " << sig6(r.success_rate) << '\n';
  out << "min witness prob:    " << sig6(r.min_probability) << '\n';
  out << "max witness prob:    " << sig6(r.max_probability) << '\n';
  out << "bound interval:      [" << sig6(r.bound_lo) << ", "
      << sig6(r.bound_hi) << "]\n";
  out << "widened interval:    [" << sig6(r.widened_lo) << ", "
      << sig6(r.widened_hi) << "]  (" << sig6(r.slack_sigmas)
      << " sigma slack)\n";
  out << "bounds pass:         " << (r.bounds_pass ? "yes" : "no") << '\n';
  out << "chi-square sampler:  " << sig6(r.chi_square_sampler) << '\n';
  out << "chi-square ideal:    " << sig6(r.chi_square_ideal) << '\n';
  if (r.chi_square_ideal > 0.0)
    out << "chi-square ratio:    "
        << sig6(r.chi_square_sampler / r.chi_square_ideal) << '\n';
}

}  // namespace unigen
