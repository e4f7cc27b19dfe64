// Copyright 2026 The kltransfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "kltransfer/engine.hpp"
#include "kltransfer/index.hpp"
#include "kltransfer/io.hpp"
#include "kltransfer/theory.hpp"
#include "oracles.hpp"

namespace kltransfer {
namespace {

int failures = 0;

void Report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

struct FinalStat {
  double mean = 0.0;
  double sem = 0.0;
};

FinalStat Final(const AggregateCurve& c) {
  return {c.mean_regret.back(), c.sem.back()};
}

double CombinedSem(const FinalStat& a, const FinalStat& b) {
  return std::hypot(a.sem, b.sem);
}

// Runs a preset config with a reduced horizon and run count and returns the
// curve of its single policy.
AggregateCurve RunScaled(const ExperimentConfig& base, std::uint64_t horizon,
                         std::uint64_t runs) {
  ExperimentConfig c = base;
  c.horizon = horizon;
  c.runs = runs;
  const auto curves = RunExperiment(c);
  return curves.begin()->second;
}

const ExperimentConfig& Named(const std::vector<ExperimentConfig>& configs,
                              const std::string& name) {
  for (const ExperimentConfig& c : configs) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing preset config " + name);
}

void IndexEquivalence() {
  Rng gen({20260101, 0, Stream::kRewards});
  std::vector<IndexInputs> inputs;
  inputs.reserve(100000);
  for (int i = 0; i < 100000; ++i) inputs.push_back(oracle::RandomIndexInputs(gen));
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const IndexInputs& in : inputs) {
    worst = std::max(worst, std::abs(IndexClosedForm(in) - IndexBisectionOracle(in)));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Report(worst <= 1e-8 && seconds < 10.0, "index_equivalence",
         Format("1e5 inputs, max |closed - bisection| = %.3g (<= 1e-8), %.2f s (< 10 s)",
                worst, seconds));
}

void ClassicalReduction() {
  const BanditInstance inst({1.0, 0.9, 0.8, 0.7, 0.6, 0.5}, 1.0);
  const PriorSpec none = PriorSpec::None(6);
  const std::uint64_t rounds = 10000;
  const int run_count = 20;
  int mismatched_runs = 0;
  std::uint64_t first_mismatch = 0;
  for (int r = 0; r < run_count; ++r) {
    const auto reference =
        oracle::ReferenceKlUcbArms(inst.means(), 1.0, rounds, 0.05, 777, r);
    std::vector<std::size_t> arms;
    arms.reserve(rounds);
    RunSpec spec;
    spec.instance = &inst;
    spec.prior = &none;
    spec.policy = PolicySpec::KlUcbTransfer();
    spec.schedule = DeltaSchedule::Linearized(0.05);
    spec.horizon = rounds;
    spec.master_seed = 777;
    spec.run_index = static_cast<std::uint64_t>(r);
    RunSingle(spec, [&](std::uint64_t, const PolicyState&, std::size_t arm) {
      arms.push_back(arm);
    });
    if (arms != reference) {
      ++mismatched_runs;
      for (std::size_t t = 0; t < arms.size(); ++t) {
        if (arms[t] != reference[t]) {
          if (first_mismatch == 0) first_mismatch = t + 1;
          break;
        }
      }
    }
  }
  Report(mismatched_runs == 0, "classical_reduction",
         Format("%d of %d seeded runs of 1e4 rounds differ from reference KL-UCB "
                "(first differing round %llu)",
                mismatched_runs, run_count,
                static_cast<unsigned long long>(first_mismatch)));
}

void TruncatedBudgetOracle() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double beta = -5.0 + 15.0 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double delta = 0.1 + 29.9 * j / 49.0;
      worst = std::max(worst, std::abs(TruncatedBudgetIntegral(beta, delta) -
                                       oracle::TruncatedBudgetQuadrature(beta, delta)));
    }
  }
  Report(worst <= 1e-8, "truncated_budget_oracle",
         Format("50x50 grid, max |closed - quadrature| = %.3g (<= 1e-8)", worst));
}

void TailMomentOracle() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 31;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const auto mc = oracle::TailMomentMonteCarlo(a, 10000000, seed++);
    const double z = (mc.mean - TailMomentConstant(a)) / mc.standard_error;
    ok = ok && std::abs(z) <= 3.0;
    detail += Format("a=%g z=%+.2f (%llu tail draws); ", a, z,
                     static_cast<unsigned long long>(mc.tail_count));
  }
  for (double eta : {0.005, 0.2}) {
    const double value = TailMomentConstant(TailMomentArgument(eta, 1000, 1.0));
    const double bound = TailMomentUniformBound(eta, 1.0);
    ok = ok && value <= bound;
    detail += Format("eta=%g C=%.6g <= %.6g; ", eta, value, bound);
  }
  Report(ok, "tail_moment_oracle", detail + "1e7 draws, |z| <= 3");
}

void RegretSlope(const std::vector<ExperimentConfig>& sim1) {
  const ExperimentConfig& base = Named(sim1, "sim1_baseline");
  const std::uint64_t horizon = 100000;
  const AggregateCurve curve = RunScaled(base, horizon, 50);
  bool ok = true;
  std::string detail;
  const double log_t = std::log(static_cast<double>(horizon));
  for (std::size_t k = 1; k < base.instance.num_arms(); ++k) {
    const double gap = base.instance.gap(k);
    const double leading = 1.05 * 2.0 * log_t / (gap * gap);
    const double ratio = curve.mean_final_pulls[k] / leading;
    ok = ok && ratio >= 0.5 && ratio <= 1.6;
    detail += Format("arm %zu N/lead=%.3f; ", k + 1, ratio);
  }
  Report(ok, "regret_slope", detail + "band [0.5, 1.6]");
}

void Simulation1(const std::vector<ExperimentConfig>& sim1) {
  const FinalStat base = Final(RunScaled(Named(sim1, "sim1_baseline"), 100000, 50));
  const FinalStat tight = Final(RunScaled(Named(sim1, "sim1_d0.05_L0.10"), 100000, 50));
  const FinalStat loose = Final(RunScaled(Named(sim1, "sim1_d0.20_L0.40"), 100000, 50));
  const double tight_margin = (base.mean - tight.mean) / CombinedSem(base, tight);
  const double loose_margin = std::abs(base.mean - loose.mean) / CombinedSem(base, loose);
  Report(tight_margin > 2.0 && loose_margin <= 3.0, "sim1_scaled",
         Format("baseline %.1f+-%.1f; (0.05,0.10) %.1f+-%.1f, %.2f sems below (> 2); "
                "(0.20,0.40) %.1f+-%.1f, %.2f sems apart (<= 3)",
                base.mean, base.sem, tight.mean, tight.sem, tight_margin,
                loose.mean, loose.sem, loose_margin));
}

void Simulation2() {
  const auto sim2 = Preset("sim2");
  const FinalStat mild =
      Final(RunScaled(Named(sim2, "sim2_mildly_optimistic"), 10000, 100));
  const FinalStat pess = Final(RunScaled(Named(sim2, "sim2_pessimistic"), 10000, 100));
  const double margin = (mild.mean - pess.mean) / CombinedSem(mild, pess);
  Report(margin > 2.0, "sim2",
         Format("pessimistic %.1f+-%.1f vs mildly optimistic %.1f+-%.1f at T=1e4, "
                "%.2f sems below (> 2)",
                pess.mean, pess.sem, mild.mean, mild.sem, margin));
}

void Simulation3() {
  const auto sim3 = Preset("sim3");
  const FinalStat transfer =
      Final(RunScaled(Named(sim3, "sim3_klucb_transfer"), 100000, 50));
  const FinalStat ast = Final(RunScaled(Named(sim3, "sim3_ast_ucb"), 100000, 50));
  const double margin = (ast.mean - transfer.mean) / CombinedSem(ast, transfer);
  Report(margin > 2.0, "sim3_scaled",
         Format("klucb_transfer %.1f+-%.1f vs ast_ucb(0.1) %.1f+-%.1f, "
                "%.2f sems below (> 2)",
                transfer.mean, transfer.sem, ast.mean, ast.sem, margin));
}

void BoundsTotal(const std::vector<ExperimentConfig>& sim1) {
  ExperimentConfig c = Named(sim1, "sim1_baseline");
  c.horizon = 1000000;
  const double total = ComputeBoundsTable(c).total_regret;
  const long double expected =
      2.0L * std::log(1e6L) * (10.0L + 5.0L + 10.0L / 3.0L + 2.5L + 2.0L);
  const double rel = static_cast<double>(std::fabs((total - expected) / expected));
  Report(rel <= 1e-9, "bounds_total",
         Format("total %.12f vs %.12Lf, relative error %.2g (<= 1e-9)", total,
                expected, rel));
}

void Determinism(const std::vector<ExperimentConfig>& sim1) {
  ExperimentConfig c = Named(sim1, "sim1_d0.05_L0.10");
  c.horizon = 20000;
  c.runs = 16;
  c.policies = {PolicySpec::KlUcbTransfer(), PolicySpec::KlUcbClassic(),
                PolicySpec::AstUcb(0.1)};
  const std::string reference = FormatCurvesCsv(RunExperiment(c, 1));
  bool ok = FormatCurvesCsv(RunExperiment(c, 1)) == reference;
  for (unsigned threads : {2u, 4u}) {
    ok = ok && FormatCurvesCsv(RunExperiment(c, threads)) == reference;
  }
  Report(ok, "determinism",
         "CSV bytes identical across reruns and 1, 2, 4 threads");
}

}  // namespace
}  // namespace kltransfer

int main() {
  using namespace kltransfer;
  try {
    const auto sim1 = Preset("sim1");
    IndexEquivalence();
    ClassicalReduction();
    TruncatedBudgetOracle();
    TailMomentOracle();
    RegretSlope(sim1);
    Simulation1(sim1);
    Simulation2();
    Simulation3();
    BoundsTotal(sim1);
    Determinism(sim1);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance: uncaught exception: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
