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

#include "kltransfer/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kltransfer {

namespace {

double PositivePartSquared(double x) { return x > 0.0 ? x * x : 0.0; }

constexpr int kMaxBisectionIterations = 200;

}  // namespace

DeltaSchedule DeltaSchedule::Linearized(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument(
        "DeltaSchedule: epsilon must be finite and > 0");
  }
  return {Kind::kLinearized, epsilon};
}

std::string ToString(const DeltaSchedule& schedule) {
  if (schedule.kind == DeltaSchedule::Kind::kTheory) return "theory";
  std::ostringstream os;
  os << "linearized(" << schedule.epsilon << ")";
  return os.str();
}

double DeltaAt(const DeltaSchedule& schedule, std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("DeltaAt: t must be >= 1");
  const double log_t = std::log(static_cast<double>(t));
  switch (schedule.kind) {
    case DeltaSchedule::Kind::kTheory:
      return log_t + 3.0 * std::log(std::max(1.0, log_t));
    case DeltaSchedule::Kind::kLinearized:
      return (1.0 + schedule.epsilon) * log_t;
  }
  throw std::logic_error("DeltaAt: unknown schedule kind");
}

double PriorPenalty(double q, double beta, double shifted_prior) {
  if (beta == 0.0) return 0.0;
  return beta * PositivePartSquared(q - shifted_prior);
}

IndexInputs MakeIndexInputs(std::uint64_t pulls, double mu_hat, double sigma,
                            std::uint64_t n_prior, double mu_hat_prior,
                            double l_bound, double sigma_prior, double delta) {
  IndexInputs in;
  in.alpha = static_cast<double>(pulls) / (2.0 * sigma * sigma);
  in.mu_hat = mu_hat;
  in.beta = static_cast<double>(n_prior) / (2.0 * sigma_prior * sigma_prior);
  in.shifted_prior = mu_hat_prior + l_bound;
  in.delta = delta;
  return in;
}

double ConstraintValue(const IndexInputs& in, double q) {
  double g = 0.0;
  if (in.alpha > 0.0) g += in.alpha * PositivePartSquared(q - in.mu_hat);
  if (in.beta > 0.0) g += in.beta * PositivePartSquared(q - in.shifted_prior);
  return g;
}

double IndexClosedForm(const IndexInputs& in) {
  const double a = in.alpha;
  const double b = in.beta;
  const double delta = in.delta;
  if (a == 0.0 && b == 0.0) return std::numeric_limits<double>::infinity();
  if (b == 0.0) return in.mu_hat + std::sqrt(delta / a);
  if (a == 0.0) return in.shifted_prior + std::sqrt(delta / b);

  const double mu = in.mu_hat;
  const double m = in.shifted_prior;
  // Only the prior term is active on [m, mu].
  const double prior_only = m + std::sqrt(delta / b);
  if (mu >= prior_only) return prior_only;
  // Only the online term is active on [mu, m].
  const double online_only = mu + std::sqrt(delta / a);
  if (m >= online_only) return online_only;
  // Both terms active: root of (a + b) q^2 - 2 (a mu + b m) q + ... = delta.
  const double gap = mu - m;
  const double disc = std::max(0.0, (a + b) * delta - a * b * gap * gap);
  return (a * mu + b * m + std::sqrt(disc)) / (a + b);
}

double IndexBisectionOracle(const IndexInputs& in, double tol) {
  if (in.alpha == 0.0 && in.beta == 0.0) {
    throw std::invalid_argument(
        "IndexBisectionOracle: alpha and beta are both zero");
  }
  if (tol <= 0.0) tol = 1e-12 * std::max(1.0, std::abs(in.delta));

  double lo;
  if (in.alpha > 0.0 && in.beta > 0.0) {
    lo = std::min(in.mu_hat, in.shifted_prior);
  } else {
    lo = in.alpha > 0.0 ? in.mu_hat : in.shifted_prior;
  }
  if (in.delta == 0.0) return lo;

  // g(lo) == 0 <= delta; grow hi until it leaves the feasible set.
  double step = std::sqrt(in.delta / (in.alpha + in.beta));
  double hi = lo + step;
  int iterations = 0;
  while (ConstraintValue(in, hi) <= in.delta) {
    if (++iterations > kMaxBisectionIterations) {
      throw std::runtime_error("IndexBisectionOracle: bracket expansion failed");
    }
    step *= 2.0;
    hi = lo + step;
  }

  for (int i = 0; i < kMaxBisectionIterations; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return lo;  // interval at machine resolution
    if (ConstraintValue(in, mid) <= in.delta) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (in.delta - ConstraintValue(in, lo) <= tol &&
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(lo))) {
      return lo;
    }
  }
  throw std::runtime_error("IndexBisectionOracle: no convergence");
}

}  // namespace kltransfer
