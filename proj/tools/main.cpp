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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "unigen/counting.hpp"
#include "unigen/formula.hpp"
#include "unigen/harness.hpp"
#include "unigen/sampler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitContract = 3;

unigen::ParseResult load_cnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return unigen::parse_dimacs(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost-uniform SAT witness sampler"};
  app.require_subcommand(1);

  std::string cnf_path;
  uint64_t seed = 0;
  double bsat_timeout_secs = 2500.0;
  std::vector<unigen::Var> sampling_vars;
  double epsilon = 6.0;
  uint64_t samples = 1;
  uint32_t threads = 1;
  std::string state_path;
  std::string out_dir;
  double tolerance = 0.8, confidence = 0.8;
  bool exact = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("cnf", cnf_path, "DIMACS CNF input")->required();
    cmd->add_option("--seed,-s", seed, "random seed")->envname("UNIGEN_SEED");
    cmd->add_option("--bsat-timeout", bsat_timeout_secs,
                    "per-enumeration wall-clock budget, seconds");
    cmd->add_option("--sampling-set", sampling_vars,
                    "comma-separated sampling variables (overrides c ind)")
        ->delimiter(',');
  };

  CLI::App* sample = app.add_subcommand("sample", "draw random witnesses");
  add_common(sample);
  sample->add_option("--epsilon,-e", epsilon, "tolerance (> 1.71)");
  sample->add_option("--samples,-n", samples, "number of draws");
  sample->add_option("--state", state_path,
                     "presample state file (loaded if present, else saved)");
  sample->add_option("--threads", threads, "parallel draw workers");

  CLI::App* count = app.add_subcommand("count", "count witnesses");
  add_common(count);
  count->add_flag("--exact", exact, "exact enumeration instead of hashing");
  count->add_option("--tolerance", tolerance, "approximate-counter tolerance");
  count->add_option("--confidence", confidence,
                    "approximate-counter confidence");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "compare against the ideal sampler");
  add_common(evaluate);
  evaluate->add_option("--epsilon,-e", epsilon, "tolerance (> 1.71)");
  evaluate->add_option("--samples,-n", samples, "draws per sampler");
  evaluate->add_option("--out", out_dir, "report directory")->required();
  evaluate->add_option("--threads", threads, "parallel draw workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto parsed = load_cnf(cnf_path);
    unigen::SamplingSet s =
        !sampling_vars.empty()
            ? unigen::SamplingSet(sampling_vars)
            : (parsed.sampling_set
                   ? *parsed.sampling_set
                   : unigen::SamplingSet::full(parsed.formula.num_vars()));
    s.validate_against(parsed.formula);

    unigen::SamplerConfig cfg;
    cfg.engine.budget = std::chrono::milliseconds(
        static_cast<int64_t>(bsat_timeout_secs * 1000.0));
    unigen::Rng rng(seed);

    if (sample->parsed()) {
      unigen::PresampleState state;
      if (!state_path.empty() && std::filesystem::exists(state_path)) {
        std::ifstream in(state_path);
        state = unigen::load_presample_state(in, parsed.formula, s);
      } else {
        state = unigen::presample(parsed.formula, epsilon, s, rng, cfg);
        if (!state_path.empty()) {
          std::ofstream out(state_path);
          if (!out)
            throw std::runtime_error("cannot write state file " + state_path);
          unigen::save_presample_state(state, out);
        }
      }
      auto outcomes = unigen::draw_many(state, samples, rng, cfg, threads);
      for (const auto& o : outcomes) {
        if (o.success())
          std::cout << unigen::format_witness(project(*o.witness, s), s)
                    << '\n';
        else
          std::cout << "FAIL\n";
      }
      return kExitOk;
    }

    if (count->parsed()) {
      if (exact) {
        std::cout << unigen::exact_count(parsed.formula, s) << '\n';
      } else {
        unigen::CountEstimate est = unigen::approx_count(
            parsed.formula, s, tolerance, confidence, rng, cfg.engine);
        std::cout << est.value << '\n';
      }
      return kExitOk;
    }

    if (evaluate->parsed()) {
      unigen::ComparisonResult res = unigen::run_comparison(
          parsed.formula, s, epsilon, samples, rng, cfg, threads);
      unigen::emit_report(res, s, out_dir);
      std::ifstream summary(out_dir + "/summary.txt");
      std::cout << summary.rdbuf();
      return kExitOk;
    }
  } catch (const unigen::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kExitTimeout;
  } catch (const unigen::CountingError& e) {
    std::cerr << "counting failure: " << e.what() << '\n';
    return kExitTimeout;
  } catch (const unigen::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const unigen::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
