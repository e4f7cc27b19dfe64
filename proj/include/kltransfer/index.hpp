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

// Upper-confidence index for Gaussian arms that combines online samples with
// offline source samples.
//
// For an arm with online rate alpha = N / (2 sigma^2), empirical mean mu_hat,
// prior rate beta = N' / (2 sigma'^2) and shifted prior mean m = mu_hat' + L,
// the index is the largest q with
//
//   g(q) = alpha (q - mu_hat)_+^2 + beta (q - m)_+^2 <= delta.
//
// With beta = 0 this is the Gaussian KL-UCB index mu_hat + sqrt(delta/alpha).

#ifndef KLTRANSFER_INDEX_HPP_
#define KLTRANSFER_INDEX_HPP_

#include <cstdint>
#include <string>

namespace kltransfer {

struct DeltaSchedule {
  enum class Kind { kTheory, kLinearized };

  Kind kind = Kind::kTheory;
  // Only read by kLinearized.
  double epsilon = 0.05;

  // ln t + 3 ln(max(1, ln t)).
  static DeltaSchedule Theory() { return {Kind::kTheory, 0.05}; }
  // (1 + epsilon) ln t. Throws std::invalid_argument unless epsilon is finite
  // and positive.
  static DeltaSchedule Linearized(double epsilon);

  bool operator==(const DeltaSchedule&) const = default;
};

std::string ToString(const DeltaSchedule& schedule);

// Exploration budget at round t. Throws std::invalid_argument for t = 0.
double DeltaAt(const DeltaSchedule& schedule, std::uint64_t t);

// beta (q - shifted_prior)_+^2.
double PriorPenalty(double q, double beta, double shifted_prior);

struct IndexInputs {
  double alpha = 0.0;
  // Ignored when alpha == 0.
  double mu_hat = 0.0;
  double beta = 0.0;
  // Ignored when beta == 0.
  double shifted_prior = 0.0;
  double delta = 0.0;
};

// Builds IndexInputs from raw counts.
IndexInputs MakeIndexInputs(std::uint64_t pulls, double mu_hat, double sigma,
                            std::uint64_t n_prior, double mu_hat_prior,
                            double l_bound, double sigma_prior, double delta);

// g(q) from the header comment.
double ConstraintValue(const IndexInputs& in, double q);

// Closed-form index. Returns +infinity when alpha and beta are both zero.
double IndexClosedForm(const IndexInputs& in);

// Index by monotone bisection on g. tol <= 0 selects the default
// 1e-12 * max(1, |delta|). Throws std::invalid_argument when both rates are
// zero and std::runtime_error if 200 iterations do not converge.
double IndexBisectionOracle(const IndexInputs& in, double tol = 0.0);

}  // namespace kltransfer

#endif  // KLTRANSFER_INDEX_HPP_
