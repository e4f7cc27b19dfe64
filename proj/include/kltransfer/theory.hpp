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

// Closed-form evaluators for transfer-aware regret bounds in the Gaussian
// model, plus the auxiliary integrals used in the upper-bound analysis.
//
// Bound evaluators return leading terms only: the o(ln T) and
// O((ln T)^{2/3}) corrections are not computed.

#ifndef KLTRANSFER_THEORY_HPP_
#define KLTRANSFER_THEORY_HPP_

#include <cstdint>

#include "kltransfer/core.hpp"

namespace kltransfer {

// Standard normal CDF, computed as erfc(-x / sqrt(2)) / 2 so that both tails
// keep full relative precision.
double NormalCdf(double x);
double NormalPdf(double x);

// Smallest source-to-source KL divergence between N(mu_prior, sigma'^2) and a
// source law whose mean lies within l_bound of mu_tilde:
// ((|mu_tilde - mu_prior| - l_bound)_+)^2 / (2 sigma'^2).
double KinfGaussian(double mu_prior, double mu_tilde, double l_bound,
                    double sigma_prior);

struct BoundInputs {
  double mu_star = 0.0;
  double mu_k = 0.0;
  double sigma = 1.0;
  std::uint64_t n_prior = 0;
  double mu_prior = 0.0;
  double l_bound = 0.0;
  double sigma_prior = 1.0;
  std::uint64_t horizon = 1;
};

// Asymptotic floor on E[N_k(T)] for a consistent algorithm:
// 2 sigma^2 / gap^2 * (ln T - N' (mu* - mu'_k - L_k)_+^2 / (2 sigma'^2))_+.
// Throws std::invalid_argument unless mu_star > mu_k.
double PullsLowerBound(const BoundInputs& in);

// Leading term of the matching upper bound for the transfer index policy.
// Same expression as PullsLowerBound.
double PullsUpperBound(const BoundInputs& in);

// Sum over suboptimal arms of gap * PullsLowerBound. Throws
// std::invalid_argument if the optimal arm is not unique or the prior spec
// does not match the instance.
double RegretLowerBound(const BanditInstance& instance, const PriorSpec& prior,
                        std::uint64_t horizon);

// I(beta, delta) = integral over [0, delta] of Phi(sqrt(2 (delta - t)) - beta),
// the expectation of the budget left after a Gaussian-distributed prior
// penalty. Requires delta >= 0.
double TruncatedBudgetIntegral(double beta, double delta);

// Phi(a) + phi(a) / a = E[exp((W - a)_+^2 / 2)] for standard normal W.
// Throws std::invalid_argument unless a > 0.
double TailMomentConstant(double a);

// Margin L_1 + mu'_1 - mu_1 by which the prior envelope of the optimal arm
// clears its true mean; this is the quantity that controls the prior penalty
// of the optimal arm.
double HardshipMargin(double mu_star, double mu_prior, double l_bound);

// eta * sqrt(N') / sigma'.
double TailMomentArgument(double eta, std::uint64_t n_prior, double sigma_prior);

// 1 + sigma' / (eta sqrt(2 pi)), an upper bound on TailMomentConstant at
// TailMomentArgument(eta, N', sigma') for every N' >= 1.
double TailMomentUniformBound(double eta, double sigma_prior);

}  // namespace kltransfer

#endif  // KLTRANSFER_THEORY_HPP_
