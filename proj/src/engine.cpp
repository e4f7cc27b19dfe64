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

#include "kltransfer/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace kltransfer {

void ExperimentConfig::Validate() const {
  prior.CheckMatches(instance);
  if (policies.empty()) {
    throw std::invalid_argument("config '" + name + "': no policies");
  }
  std::set<std::string> ids;
  for (const PolicySpec& p : policies) {
    if (!ids.insert(p.id()).second) {
      throw std::invalid_argument("config '" + name +
                                  "': duplicate policy " + p.id());
    }
  }
  if (schedule.kind == DeltaSchedule::Kind::kLinearized &&
      (!std::isfinite(schedule.epsilon) || schedule.epsilon <= 0.0)) {
    throw std::invalid_argument("config '" + name +
                                "': epsilon must be finite and > 0");
  }
  if (horizon == 0) {
    throw std::invalid_argument("config '" + name + "': horizon must be >= 1");
  }
  if (runs == 0) {
    throw std::invalid_argument("config '" + name + "': runs must be >= 1");
  }
  if (checkpoint_count < 2) {
    throw std::invalid_argument("config '" + name +
                                "': checkpoint_count must be >= 2");
  }
}

std::vector<std::uint64_t> CheckpointGrid(std::uint64_t horizon,
                                          std::size_t count) {
  if (count < 2) throw std::invalid_argument("CheckpointGrid: count < 2");
  if (horizon == 0) throw std::invalid_argument("CheckpointGrid: horizon == 0");
  std::vector<std::uint64_t> grid;
  if (horizon <= count) {
    for (std::uint64_t t = 1; t <= horizon; ++t) grid.push_back(t);
    return grid;
  }
  // Each step re-targets the geometric ratio for the points still to place,
  // so rounding collisions at the low end do not lose points.
  grid.reserve(count);
  grid.push_back(1);
  const double log_horizon = std::log(static_cast<double>(horizon));
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double current = static_cast<double>(grid.back());
    const std::size_t remaining = count - i;
    const double step = (log_horizon - std::log(current)) /
                        static_cast<double>(remaining);
    auto next = static_cast<std::uint64_t>(std::llround(current * std::exp(step)));
    next = std::max(next, grid.back() + 1);
    // Leave room for the remaining distinct points below horizon.
    next = std::min<std::uint64_t>(next, horizon - (remaining - 1));
    grid.push_back(next);
  }
  grid.push_back(horizon);
  return grid;
}

namespace {

std::size_t SelectArm(const PolicySpec& policy, const PolicyState& state,
                      Rng& ties) {
  switch (policy.kind) {
    case PolicySpec::Kind::kKlUcbTransfer:
    case PolicySpec::Kind::kKlUcbClassic:
      return SelectArmKlUcbTransfer(state, ties);
    case PolicySpec::Kind::kAstUcb:
      return SelectArmAstUcb(state, policy.shift_l, ties);
    case PolicySpec::Kind::kUniform:
      return SelectArmUniform(state, ties);
  }
  throw std::invalid_argument("RunSingle: unknown policy kind");
}

}  // namespace

RegretTrajectory RunSingle(const RunSpec& spec, const RoundObserver& observer) {
  if (spec.instance == nullptr || spec.prior == nullptr) {
    throw std::invalid_argument("RunSingle: instance and prior must be set");
  }
  if (spec.horizon == 0) {
    throw std::invalid_argument("RunSingle: horizon must be >= 1");
  }
  const BanditInstance& instance = *spec.instance;
  spec.prior->CheckMatches(instance);
  const std::size_t num_arms = instance.num_arms();

  std::vector<std::uint64_t> checkpoints(spec.checkpoints.begin(),
                                         spec.checkpoints.end());
  if (checkpoints.empty()) checkpoints.push_back(spec.horizon);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      checkpoints.front() == 0 || checkpoints.back() != spec.horizon ||
      std::adjacent_find(checkpoints.begin(), checkpoints.end()) !=
          checkpoints.end()) {
    throw std::invalid_argument(
        "RunSingle: checkpoints must be strictly increasing within [1, T] "
        "and end at T");
  }

  // Classic KL-UCB is the transfer policy with every n_prior forced to 0.
  const PriorSpec effective_prior =
      spec.policy.kind == PolicySpec::Kind::kKlUcbClassic
          ? spec.prior->WithoutSamples()
          : *spec.prior;
  const PriorData prior_data = DrawPriorData(
      effective_prior,
      {spec.master_seed, spec.run_index, Stream::kPriorSamples});
  Rng rewards({spec.master_seed, spec.run_index, Stream::kRewards});
  Rng ties({spec.master_seed, spec.run_index, Stream::kTieBreaks});

  std::vector<ArmStats> stats(num_arms);
  std::vector<double> gaps(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) gaps[k] = instance.gap(k);

  PolicyState state;
  state.stats = stats;
  state.prior = &prior_data;
  state.spec = &effective_prior;
  state.sigma = instance.sigma();
  state.schedule = spec.schedule;

  RegretTrajectory out;
  out.run_index = spec.run_index;
  out.policy_id = spec.policy.id();
  out.checkpoints = checkpoints;
  out.cum_regret.reserve(checkpoints.size());

  std::size_t next_checkpoint = 0;
  for (std::uint64_t t = 1; t <= spec.horizon; ++t) {
    state.round = t;
    const std::size_t arm = SelectArm(spec.policy, state, ties);
    if (observer) observer(t, state, arm);
    const double reward =
        instance.means()[arm] + instance.sigma() * rewards.Normal();
    stats[arm] = UpdateStats(stats[arm], reward);
    if (t == checkpoints[next_checkpoint]) {
      // Pseudo-regret from the pull tally, summed in arm order.
      double regret = 0.0;
      for (std::size_t k = 0; k < num_arms; ++k) {
        regret += static_cast<double>(stats[k].pulls) * gaps[k];
      }
      out.cum_regret.push_back(regret);
      ++next_checkpoint;
    }
  }
  out.final_pulls.reserve(num_arms);
  for (const ArmStats& s : stats) out.final_pulls.push_back(s.pulls);
  return out;
}

RegretTrajectory RunSingle(const BanditInstance& instance,
                           const PriorSpec& prior, const std::string& policy_id,
                           const DeltaSchedule& schedule, std::uint64_t horizon,
                           std::uint64_t master_seed, std::uint64_t run_index,
                           std::span<const std::uint64_t> checkpoints) {
  RunSpec spec;
  spec.instance = &instance;
  spec.prior = &prior;
  spec.policy = PolicySpec::Parse(policy_id);
  spec.schedule = schedule;
  spec.horizon = horizon;
  spec.master_seed = master_seed;
  spec.run_index = run_index;
  spec.checkpoints = checkpoints;
  return RunSingle(spec);
}

AggregateCurve Aggregate(std::span<const RegretTrajectory> runs) {
  if (runs.empty()) throw std::invalid_argument("Aggregate: no runs");
  const RegretTrajectory& first = runs.front();
  for (const RegretTrajectory& r : runs) {
    if (r.checkpoints != first.checkpoints ||
        r.cum_regret.size() != first.checkpoints.size() ||
        r.final_pulls.size() != first.final_pulls.size()) {
      throw std::invalid_argument("Aggregate: trajectories are not aligned");
    }
  }
  const std::size_t points = first.checkpoints.size();
  const auto n = static_cast<double>(runs.size());

  AggregateCurve curve;
  curve.checkpoints = first.checkpoints;
  curve.runs = runs.size();
  curve.sem_defined = runs.size() >= 2;
  curve.mean_regret.assign(points, 0.0);
  curve.sem.assign(points, 0.0);
  for (std::size_t i = 0; i < points; ++i) {
    double sum = 0.0;
    for (const RegretTrajectory& r : runs) sum += r.cum_regret[i];
    const double mean = sum / n;
    curve.mean_regret[i] = mean;
    if (curve.sem_defined) {
      double ss = 0.0;
      for (const RegretTrajectory& r : runs) {
        const double d = r.cum_regret[i] - mean;
        ss += d * d;
      }
      curve.sem[i] = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
  }
  curve.mean_final_pulls.assign(first.final_pulls.size(), 0.0);
  for (std::size_t k = 0; k < first.final_pulls.size(); ++k) {
    double sum = 0.0;
    for (const RegretTrajectory& r : runs) {
      sum += static_cast<double>(r.final_pulls[k]);
    }
    curve.mean_final_pulls[k] = sum / n;
  }
  return curve;
}

std::map<std::string, AggregateCurve> RunExperiment(
    const ExperimentConfig& config, unsigned threads) {
  config.Validate();
  const std::vector<std::uint64_t> checkpoints =
      CheckpointGrid(config.horizon, config.checkpoint_count);

  const std::size_t num_policies = config.policies.size();
  const std::size_t num_jobs = num_policies * config.runs;
  std::vector<RegretTrajectory> results(num_jobs);

  std::atomic<std::size_t> next_job{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= num_jobs) return;
      try {
        RunSpec spec;
        spec.instance = &config.instance;
        spec.prior = &config.prior;
        spec.policy = config.policies[job / config.runs];
        spec.schedule = config.schedule;
        spec.horizon = config.horizon;
        spec.master_seed = config.master_seed;
        spec.run_index = job % config.runs;
        spec.checkpoints = checkpoints;
        results[job] = RunSingle(spec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next_job.store(num_jobs);  // abort remaining work
        return;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, num_jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::map<std::string, AggregateCurve> curves;
  for (std::size_t p = 0; p < num_policies; ++p) {
    const std::span<const RegretTrajectory> runs(
        results.data() + p * config.runs, config.runs);
    curves.emplace(config.policies[p].id(), Aggregate(runs));
  }
  return curves;
}

}  // namespace kltransfer
