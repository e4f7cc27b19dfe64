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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "kltransfer/index.hpp"
#include "kltransfer/rng.hpp"
#include "oracles.hpp"

namespace kltransfer {
namespace {

TEST_CASE("DeltaAt theory schedule") {
  const auto theory = DeltaSchedule::Theory();
  CHECK(DeltaAt(theory, 1) == 0.0);
  // ln 2 < 1, so the inner logarithm is clamped to zero.
  CHECK(DeltaAt(theory, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const long double l3 = std::log(3.0L);
  CHECK(DeltaAt(theory, 3) ==
        doctest::Approx(static_cast<double>(l3 + 3.0L * std::log(l3)))
            .epsilon(1e-14));
  CHECK_THROWS_AS(DeltaAt(theory, 0), std::invalid_argument);
}

TEST_CASE("DeltaAt linearized schedule") {
  const auto lin = DeltaSchedule::Linearized(0.05);
  // 1.05 * ln(1e6), evaluated at 40 digits.
  CHECK(std::abs(DeltaAt(lin, 1000000) - 14.506286085862488) <= 1e-12);
  CHECK(DeltaAt(lin, 1) == 0.0);
  CHECK_THROWS_AS(DeltaSchedule::Linearized(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DeltaSchedule::Linearized(std::nan("")), std::invalid_argument);
  for (std::uint64_t t = 1; t < 5000; t += 7) CHECK(DeltaAt(lin, t) >= 0.0);
}

TEST_CASE("PriorPenalty examples and shape") {
  CHECK(PriorPenalty(-1.0, 3.0, 0.0) == 0.0);
  CHECK(PriorPenalty(1.0, 1.0, 0.0) == 1.0);
  CHECK(PriorPenalty(1.0, 500.0, 0.65) == doctest::Approx(61.25).epsilon(1e-14));
  CHECK(PriorPenalty(5.0, 0.0, 0.0) == 0.0);
  // Non-decreasing and midpoint-convex on a grid.
  for (double q = -2.0; q < 2.0; q += 0.01) {
    const double f0 = PriorPenalty(q, 2.5, 0.3);
    const double f1 = PriorPenalty(q + 0.01, 2.5, 0.3);
    const double f2 = PriorPenalty(q + 0.02, 2.5, 0.3);
    CHECK(f1 >= f0);
    CHECK(f1 <= 0.5 * (f0 + f2) + 1e-15);
  }
}

TEST_CASE("IndexClosedForm examples") {
  CHECK(IndexClosedForm({2.0, 0.0, 0.0, 0.0, 2.0}) == 1.0);
  CHECK(IndexClosedForm({0.0, 0.0, 0.5, 0.0, 0.5}) == 1.0);
  // (0.5 + sqrt(1.75)) / 2 at 40 digits.
  const IndexInputs blend{1.0, 0.5, 1.0, 0.0, 1.0};
  const double q = IndexClosedForm(blend);
  CHECK(std::abs(q - 0.91143782776614765) <= 1e-15);
  CHECK(std::abs(ConstraintValue(blend, q) - blend.delta) < 1e-12);
  CHECK(std::isinf(IndexClosedForm({0.0, 1.0, 0.0, 2.0, 3.0})));
}

TEST_CASE("IndexBisectionOracle examples") {
  CHECK(IndexBisectionOracle({1.0, 2.0, 0.0, 0.0, 0.0}, 1e-12) == 2.0);
  CHECK(std::abs(IndexBisectionOracle({1.0, 0.5, 1.0, 0.0, 1.0}, 1e-13) -
                 0.91143782776614765) <= 1e-9);
  CHECK_THROWS_AS(IndexBisectionOracle({0.0, 0.0, 0.0, 0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("closed form and bisection agree on random inputs") {
  Rng gen({31337, 0, Stream::kRewards});
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const IndexInputs in = oracle::RandomIndexInputs(gen);
    const double diff =
        std::abs(IndexClosedForm(in) - IndexBisectionOracle(in));
    worst = std::max(worst, diff);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("index is non-decreasing in delta and non-increasing in beta") {
  Rng gen({5, 0, Stream::kRewards});
  for (int i = 0; i < 2000; ++i) {
    IndexInputs in = oracle::RandomIndexInputs(gen);
    const double base = IndexClosedForm(in);
    IndexInputs more_delta = in;
    more_delta.delta += 5.0 * gen.Uniform();
    CHECK(IndexClosedForm(more_delta) >= base - 1e-12);
    IndexInputs more_beta = in;
    more_beta.beta += 100.0 * gen.Uniform();
    CHECK(IndexClosedForm(more_beta) <= base + 1e-12);
  }
}

TEST_CASE("without prior samples the index is the Gaussian KL-UCB index") {
  Rng gen({6, 0, Stream::kRewards});
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t pulls = 1 + gen.UniformIndex(100000);
    const double sigma = 0.1 + 3.0 * gen.Uniform();
    const double mu_hat = gen.Normal();
    const double delta = 20.0 * gen.Uniform();
    const IndexInputs in =
        MakeIndexInputs(pulls, mu_hat, sigma, 0, 123.0, 0.4, 1.0, delta);
    const double classic =
        mu_hat + std::sqrt(2.0 * sigma * sigma * delta / static_cast<double>(pulls));
    CHECK(IndexClosedForm(in) == doctest::Approx(classic).epsilon(1e-14));
  }
}

TEST_CASE("index is on the boundary of the feasible set") {
  Rng gen({7, 0, Stream::kRewards});
  for (int i = 0; i < 5000; ++i) {
    IndexInputs in = oracle::RandomIndexInputs(gen);
    in.delta = 0.01 + in.delta;
    if (in.alpha + in.beta < 0.01) continue;
    const double q = IndexClosedForm(in);
    CHECK(std::abs(ConstraintValue(in, q) - in.delta) <= 1e-9);
    const double above = q + 1e-9 * std::max(1.0, std::abs(q));
    CHECK(ConstraintValue(in, above) > in.delta);
  }
}

TEST_CASE("closed-form branches meet continuously at their boundaries") {
  Rng gen({8, 0, Stream::kRewards});
  const double h = 1e-12;
  for (int i = 0; i < 2000; ++i) {
    const double alpha = 0.01 + 100.0 * gen.Uniform();
    const double beta = 0.01 + 100.0 * gen.Uniform();
    const double delta = 0.01 + 20.0 * gen.Uniform();
    const double m = gen.Normal();
    // mu = m + sqrt(delta/beta) separates the prior-only and blended cases.
    const double mu_edge = m + std::sqrt(delta / beta);
    const double lo = IndexClosedForm({alpha, mu_edge - h, beta, m, delta});
    const double hi = IndexClosedForm({alpha, mu_edge + h, beta, m, delta});
    CHECK(std::abs(hi - lo) <= 1e-10);
    // m = mu + sqrt(delta/alpha) separates the online-only and blended cases.
    const double mu = gen.Normal();
    const double m_edge = mu + std::sqrt(delta / alpha);
    const double lo2 = IndexClosedForm({alpha, mu, beta, m_edge - h, delta});
    const double hi2 = IndexClosedForm({alpha, mu, beta, m_edge + h, delta});
    CHECK(std::abs(hi2 - lo2) <= 1e-10);
  }
}

TEST_CASE("zero budget collapses the index onto the lower anchor") {
  CHECK(IndexClosedForm({1.0, 0.3, 2.0, 0.8, 0.0}) == 0.3);
  CHECK(IndexClosedForm({1.0, 0.9, 2.0, 0.2, 0.0}) == 0.2);
  CHECK(IndexBisectionOracle({1.0, 0.9, 2.0, 0.2, 0.0}) == 0.2);
}

}  // namespace
}  // namespace kltransfer
