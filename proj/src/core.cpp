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

#include "kltransfer/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kltransfer {

BanditInstance::BanditInstance(std::vector<double> means, double sigma)
    : means_(std::move(means)), sigma_(sigma) {
  if (means_.empty()) {
    throw std::invalid_argument("BanditInstance: means must be non-empty");
  }
  for (double m : means_) {
    if (!std::isfinite(m)) {
      throw std::invalid_argument("BanditInstance: means must be finite");
    }
  }
  if (!std::isfinite(sigma_) || sigma_ <= 0.0) {
    throw std::invalid_argument("BanditInstance: sigma must be finite and > 0");
  }
}

double BanditInstance::optimal_mean() const {
  return *std::max_element(means_.begin(), means_.end());
}

std::size_t BanditInstance::optimal_arm() const {
  return static_cast<std::size_t>(
      std::max_element(means_.begin(), means_.end()) - means_.begin());
}

bool BanditInstance::has_unique_optimum() const {
  return std::count(means_.begin(), means_.end(), optimal_mean()) == 1;
}

PriorSpec::PriorSpec(std::vector<PriorArm> arms, double sigma_prior)
    : arms_(std::move(arms)), sigma_prior_(sigma_prior) {
  if (!std::isfinite(sigma_prior_) || sigma_prior_ <= 0.0) {
    throw std::invalid_argument(
        "PriorSpec: sigma_prior must be finite and > 0");
  }
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    const PriorArm& a = arms_[k];
    if (!std::isfinite(a.mu_prior)) {
      throw std::invalid_argument("PriorSpec: mu_prior of arm " +
                                  std::to_string(k) + " is not finite");
    }
    if (!std::isfinite(a.l_bound) || a.l_bound < 0.0) {
      throw std::invalid_argument("PriorSpec: l_bound of arm " +
                                  std::to_string(k) +
                                  " must be finite and >= 0");
    }
  }
}

PriorSpec PriorSpec::None(std::size_t num_arms, double sigma_prior) {
  return PriorSpec(std::vector<PriorArm>(num_arms), sigma_prior);
}

PriorSpec PriorSpec::WithoutSamples() const {
  PriorSpec out = *this;
  for (PriorArm& a : out.arms_) a.n_prior = 0;
  return out;
}

void PriorSpec::CheckMatches(const BanditInstance& instance) const {
  if (arms_.size() != instance.num_arms()) {
    throw std::invalid_argument(
        "PriorSpec: has " + std::to_string(arms_.size()) +
        " arms but the instance has " + std::to_string(instance.num_arms()));
  }
}

std::vector<std::string> PriorSpec::ValidityWarnings(
    const BanditInstance& instance) const {
  CheckMatches(instance);
  std::vector<std::string> warnings;
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    const double distance = std::abs(instance.means()[k] - arms_[k].mu_prior);
    if (arms_[k].n_prior > 0 && distance > arms_[k].l_bound) {
      std::ostringstream os;
      os << "arm " << k << ": |mu - mu_prior| = " << distance
         << " exceeds l_bound = " << arms_[k].l_bound;
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

PriorData DrawPriorData(const PriorSpec& spec, const SeedContract& seed) {
  if (seed.stream != Stream::kPriorSamples) {
    throw std::invalid_argument(
        "DrawPriorData: seed must use the prior-samples stream");
  }
  Rng rng(seed);
  PriorData data;
  data.n_prior.reserve(spec.num_arms());
  data.mu_hat_prior.reserve(spec.num_arms());
  for (const PriorArm& arm : spec.arms()) {
    data.n_prior.push_back(arm.n_prior);
    if (arm.n_prior == 0) {
      data.mu_hat_prior.push_back(0.0);
      continue;
    }
    // Averaging standardized draws keeps the result exact in the
    // sigma_prior -> 0 limit.
    double mean_z = 0.0;
    for (std::uint64_t i = 0; i < arm.n_prior; ++i) {
      mean_z += (rng.Normal() - mean_z) / static_cast<double>(i + 1);
    }
    data.mu_hat_prior.push_back(arm.mu_prior + spec.sigma_prior() * mean_z);
  }
  return data;
}

ArmStats UpdateStats(ArmStats stats, double reward) {
  ++stats.pulls;
  stats.mean += (reward - stats.mean) / static_cast<double>(stats.pulls);
  return stats;
}

}  // namespace kltransfer
