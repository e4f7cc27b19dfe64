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

#ifndef KLTRANSFER_POLICIES_HPP_
#define KLTRANSFER_POLICIES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "kltransfer/core.hpp"
#include "kltransfer/index.hpp"
#include "kltransfer/rng.hpp"

namespace kltransfer {

// Read-only snapshot handed to a selection rule. The referenced objects must
// outlive the state.
struct PolicyState {
  std::span<const ArmStats> stats;
  const PriorData* prior = nullptr;
  const PriorSpec* spec = nullptr;
  double sigma = 1.0;
  DeltaSchedule schedule;
  // 1 + total pulls so far.
  std::uint64_t round = 1;

  std::size_t num_arms() const { return stats.size(); }
};

struct PolicySpec {
  enum class Kind { kKlUcbTransfer, kKlUcbClassic, kAstUcb, kUniform };

  Kind kind = Kind::kKlUcbTransfer;
  // Only read by kAstUcb.
  double shift_l = 0.0;

  static PolicySpec KlUcbTransfer() { return {Kind::kKlUcbTransfer, 0.0}; }
  static PolicySpec KlUcbClassic() { return {Kind::kKlUcbClassic, 0.0}; }
  // Throws std::invalid_argument for a negative or non-finite shift.
  static PolicySpec AstUcb(double shift_l);
  static PolicySpec Uniform() { return {Kind::kUniform, 0.0}; }

  // "klucb_transfer", "klucb_classic", "ast_ucb(0.1)", "uniform".
  std::string id() const;
  // Inverse of id(). Throws std::invalid_argument on unknown ids.
  static PolicySpec Parse(const std::string& id);

  bool operator==(const PolicySpec&) const = default;
};

// Transfer index of one arm at state.round; +infinity when the arm has
// neither pulls nor prior samples.
double KlUcbTransferIndex(const PolicyState& state, std::size_t arm);

// Pooled-mean UCB index with an additive shift; +infinity when the arm has
// neither pulls nor prior samples.
double AstUcbIndex(const PolicyState& state, double shift_l, std::size_t arm);

// Pulls arms with no data in ascending order, then the arm of largest
// transfer index. Exact ties are broken uniformly with `ties`.
std::size_t SelectArmKlUcbTransfer(const PolicyState& state, Rng& ties);

// Baseline for the transfer comparison: treats the prior sample as if it had
// been drawn from the target arm and inflates the pooled UCB by shift_l.
std::size_t SelectArmAstUcb(const PolicyState& state, double shift_l,
                            Rng& ties);

std::size_t SelectArmUniform(const PolicyState& state, Rng& ties);

}  // namespace kltransfer

#endif  // KLTRANSFER_POLICIES_HPP_
