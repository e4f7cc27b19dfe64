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

// Seeded Monte-Carlo regret simulation.
//
// A run draws its prior data once, then plays T rounds. Cumulative
// pseudo-regret sum_k N_k(t) * gap_k is recorded at checkpoint rounds. Runs
// are independent given (master_seed, run_index), so replications may execute
// on any number of threads with bit-identical results.

#ifndef KLTRANSFER_ENGINE_HPP_
#define KLTRANSFER_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kltransfer/core.hpp"
#include "kltransfer/index.hpp"
#include "kltransfer/policies.hpp"

namespace kltransfer {

struct ExperimentConfig {
  std::string name;
  BanditInstance instance{{0.0}, 1.0};
  PriorSpec prior = PriorSpec::None(1);
  std::vector<PolicySpec> policies;
  DeltaSchedule schedule;
  std::uint64_t horizon = 1;
  std::uint64_t runs = 1;
  std::uint64_t master_seed = 0;
  std::size_t checkpoint_count = 200;
  std::string output_path;

  // Throws std::invalid_argument describing the first violated constraint.
  void Validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

struct RegretTrajectory {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> cum_regret;
  // N_k(T) for every arm.
  std::vector<std::uint64_t> final_pulls;
  std::uint64_t run_index = 0;
  std::string policy_id;
};

struct AggregateCurve {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean_regret;
  // Sample standard deviation across runs divided by sqrt(runs). Zero, with
  // sem_defined == false, when runs < 2.
  std::vector<double> sem;
  std::uint64_t runs = 0;
  bool sem_defined = false;
  // Mean of N_k(T) across runs, per arm. Not serialized to CSV.
  std::vector<double> mean_final_pulls;

  bool operator==(const AggregateCurve&) const = default;
};

// Called once per round after the arm is chosen and before its reward is
// recorded, so `state` still describes the information used for the choice.
using RoundObserver = std::function<void(
    std::uint64_t round, const PolicyState& state, std::size_t arm)>;

// At most `count` geometrically spaced distinct rounds in [1, horizon],
// always including 1 and horizon; every round when horizon <= count.
// Throws std::invalid_argument if count < 2 or horizon == 0.
std::vector<std::uint64_t> CheckpointGrid(std::uint64_t horizon,
                                          std::size_t count);

struct RunSpec {
  const BanditInstance* instance = nullptr;
  const PriorSpec* prior = nullptr;
  PolicySpec policy;
  DeltaSchedule schedule;
  std::uint64_t horizon = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t run_index = 0;
  // Empty means {horizon}.
  std::span<const std::uint64_t> checkpoints;
};

RegretTrajectory RunSingle(const RunSpec& spec,
                           const RoundObserver& observer = nullptr);

// Convenience overload mirroring the field list of RunSpec.
RegretTrajectory RunSingle(const BanditInstance& instance,
                           const PriorSpec& prior, const std::string& policy_id,
                           const DeltaSchedule& schedule, std::uint64_t horizon,
                           std::uint64_t master_seed, std::uint64_t run_index,
                           std::span<const std::uint64_t> checkpoints = {});

// Mean and standard error across trajectories, combined in the order given.
// Throws std::invalid_argument if the list is empty or checkpoints differ.
AggregateCurve Aggregate(std::span<const RegretTrajectory> runs);

// Runs every policy `config.runs` times (run r uses run_index r) and
// aggregates per policy id. threads == 0 selects the hardware concurrency.
std::map<std::string, AggregateCurve> RunExperiment(
    const ExperimentConfig& config, unsigned threads = 0);

}  // namespace kltransfer

#endif  // KLTRANSFER_ENGINE_HPP_
