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

#include "kltransfer/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kltransfer {

namespace {

double PositivePart(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

double NormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double KinfGaussian(double mu_prior, double mu_tilde, double l_bound,
                    double sigma_prior) {
  if (!(sigma_prior > 0.0)) {
    throw std::invalid_argument("KinfGaussian: sigma_prior must be > 0");
  }
  if (!(l_bound >= 0.0)) {
    throw std::invalid_argument("KinfGaussian: l_bound must be >= 0");
  }
  if (std::isinf(l_bound)) return 0.0;
  const double excess = PositivePart(std::abs(mu_tilde - mu_prior) - l_bound);
  return excess * excess / (2.0 * sigma_prior * sigma_prior);
}

double PullsLowerBound(const BoundInputs& in) {
  if (!(in.mu_star > in.mu_k)) {
    throw std::invalid_argument("PullsLowerBound: requires mu_star > mu_k");
  }
  if (in.horizon == 0) {
    throw std::invalid_argument("PullsLowerBound: horizon must be >= 1");
  }
  const double gap = in.mu_star - in.mu_k;
  const double envelope_gap = PositivePart(in.mu_star - in.mu_prior - in.l_bound);
  const double penalty = static_cast<double>(in.n_prior) * envelope_gap *
                         envelope_gap /
                         (2.0 * in.sigma_prior * in.sigma_prior);
  const double budget =
      PositivePart(std::log(static_cast<double>(in.horizon)) - penalty);
  return 2.0 * in.sigma * in.sigma / (gap * gap) * budget;
}

double PullsUpperBound(const BoundInputs& in) { return PullsLowerBound(in); }

double RegretLowerBound(const BanditInstance& instance, const PriorSpec& prior,
                        std::uint64_t horizon) {
  prior.CheckMatches(instance);
  if (!instance.has_unique_optimum()) {
    throw std::invalid_argument("RegretLowerBound: optimal arm is not unique");
  }
  const std::size_t best = instance.optimal_arm();
  double total = 0.0;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    if (k == best) continue;
    BoundInputs in;
    in.mu_star = instance.optimal_mean();
    in.mu_k = instance.means()[k];
    in.sigma = instance.sigma();
    in.n_prior = prior.arm(k).n_prior;
    in.mu_prior = prior.arm(k).mu_prior;
    in.l_bound = prior.arm(k).l_bound;
    in.sigma_prior = prior.sigma_prior();
    in.horizon = horizon;
    total += instance.gap(k) * PullsLowerBound(in);
  }
  return total;
}

double TruncatedBudgetIntegral(double beta, double delta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("TruncatedBudgetIntegral: delta must be >= 0");
  }
  const double r = std::sqrt(2.0 * delta);
  const double b2 = beta * beta;
  return 0.5 * (2.0 * delta - b2 - 1.0) * NormalCdf(r - beta) +
         0.5 * (b2 + 1.0) * NormalCdf(-beta) +
         0.5 * (r + beta) * NormalPdf(r - beta) - 0.5 * beta * NormalPdf(beta);
}

double TailMomentConstant(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("TailMomentConstant: a must be > 0");
  }
  return NormalCdf(a) + NormalPdf(a) / a;
}

double HardshipMargin(double mu_star, double mu_prior, double l_bound) {
  return l_bound + mu_prior - mu_star;
}

double TailMomentArgument(double eta, std::uint64_t n_prior, double sigma_prior) {
  return eta * std::sqrt(static_cast<double>(n_prior)) / sigma_prior;
}

double TailMomentUniformBound(double eta, double sigma_prior) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("TailMomentUniformBound: eta must be > 0");
  }
  return 1.0 + sigma_prior / (eta * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace kltransfer
