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

// Domain types shared by the index, policies, theory and engine modules.

#ifndef KLTRANSFER_CORE_HPP_
#define KLTRANSFER_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kltransfer/rng.hpp"

namespace kltransfer {

// Gaussian bandit: arm k pays N(means[k], sigma^2).
class BanditInstance {
 public:
  // Throws std::invalid_argument if means is empty, contains a non-finite
  // value, or sigma is not a finite positive number.
  BanditInstance(std::vector<double> means, double sigma);

  const std::vector<double>& means() const { return means_; }
  double sigma() const { return sigma_; }
  std::size_t num_arms() const { return means_.size(); }

  double optimal_mean() const;
  // Lowest index attaining optimal_mean().
  std::size_t optimal_arm() const;
  bool has_unique_optimum() const;
  double gap(std::size_t arm) const { return optimal_mean() - means_.at(arm); }

  bool operator==(const BanditInstance&) const = default;

 private:
  std::vector<double> means_;
  double sigma_;
};

struct PriorArm {
  std::uint64_t n_prior = 0;
  double mu_prior = 0.0;
  double l_bound = 0.0;

  bool operator==(const PriorArm&) const = default;
};

// Offline source data description: per-arm sample count, source mean and
// transfer radius, with a source standard deviation shared by all arms.
class PriorSpec {
 public:
  // Throws std::invalid_argument on a negative or non-finite l_bound, a
  // non-finite mu_prior, or a sigma_prior that is not finite and positive.
  PriorSpec(std::vector<PriorArm> arms, double sigma_prior);

  // Spec with n_prior = 0 on every arm.
  static PriorSpec None(std::size_t num_arms, double sigma_prior = 1.0);

  const std::vector<PriorArm>& arms() const { return arms_; }
  const PriorArm& arm(std::size_t k) const { return arms_.at(k); }
  double sigma_prior() const { return sigma_prior_; }
  std::size_t num_arms() const { return arms_.size(); }

  // Same spec with every n_prior forced to zero.
  PriorSpec WithoutSamples() const;

  // Throws std::invalid_argument when the arm counts differ.
  void CheckMatches(const BanditInstance& instance) const;

  // Human-readable warnings for arms where |mu_k - mu'_k| > L_k. Empty when
  // every arm respects its transfer radius.
  std::vector<std::string> ValidityWarnings(
      const BanditInstance& instance) const;

  bool operator==(const PriorSpec&) const = default;

 private:
  std::vector<PriorArm> arms_;
  double sigma_prior_;
};

// Realized prior sample means, fixed before the first online pull.
struct PriorData {
  std::vector<std::uint64_t> n_prior;
  // Sample mean of the drawn prior observations; 0 when n_prior is 0.
  std::vector<double> mu_hat_prior;

  std::size_t num_arms() const { return n_prior.size(); }
};

struct ArmStats {
  std::uint64_t pulls = 0;
  // Running mean of observed rewards; 0 when pulls is 0.
  double mean = 0.0;

  bool operator==(const ArmStats&) const = default;
};

// Draws n_prior observations per arm from N(mu_prior, sigma_prior^2) and
// records their mean. Requires seed.stream == Stream::kPriorSamples.
PriorData DrawPriorData(const PriorSpec& spec, const SeedContract& seed);

// Welford-style running-mean update. Requires a finite reward.
ArmStats UpdateStats(ArmStats stats, double reward);

}  // namespace kltransfer

#endif  // KLTRANSFER_CORE_HPP_
