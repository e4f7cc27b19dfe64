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

#include "kltransfer/policies.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kltransfer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool HasNoData(const PolicyState& state, std::size_t arm) {
  return state.stats[arm].pulls == 0 && state.prior->n_prior[arm] == 0;
}

void CheckState(const PolicyState& state) {
  if (state.prior == nullptr || state.spec == nullptr) {
    throw std::invalid_argument("PolicyState: prior and spec must be set");
  }
  if (state.stats.empty() || state.prior->num_arms() != state.num_arms() ||
      state.spec->num_arms() != state.num_arms()) {
    throw std::invalid_argument("PolicyState: inconsistent arm counts");
  }
  if (state.round == 0) {
    throw std::invalid_argument("PolicyState: round must be >= 1");
  }
}

// Argmax with uniform tie-breaking. The tie stream is consumed only when at
// least two arms share the maximum.
template <typename IndexFn>
std::size_t ArgmaxIndex(const PolicyState& state, Rng& ties, IndexFn index) {
  for (std::size_t a = 0; a < state.num_arms(); ++a) {
    if (HasNoData(state, a)) return a;
  }
  std::vector<std::size_t> best;
  double best_value = -kInf;
  for (std::size_t a = 0; a < state.num_arms(); ++a) {
    const double value = index(a);
    if (value > best_value) {
      best_value = value;
      best.assign(1, a);
    } else if (value == best_value) {
      best.push_back(a);
    }
  }
  if (best.size() == 1) return best.front();
  return best[ties.UniformIndex(best.size())];
}

}  // namespace

PolicySpec PolicySpec::AstUcb(double shift_l) {
  if (!std::isfinite(shift_l) || shift_l < 0.0) {
    throw std::invalid_argument("AstUcb: shift_l must be finite and >= 0");
  }
  return {Kind::kAstUcb, shift_l};
}

std::string PolicySpec::id() const {
  switch (kind) {
    case Kind::kKlUcbTransfer:
      return "klucb_transfer";
    case Kind::kKlUcbClassic:
      return "klucb_classic";
    case Kind::kAstUcb: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), shift_l);
      return "ast_ucb(" + std::string(buf, res.ptr) + ")";
    }
    case Kind::kUniform:
      return "uniform";
  }
  throw std::logic_error("PolicySpec: unknown kind");
}

PolicySpec PolicySpec::Parse(const std::string& id) {
  if (id == "klucb_transfer") return KlUcbTransfer();
  if (id == "klucb_classic") return KlUcbClassic();
  if (id == "uniform") return Uniform();
  const std::string prefix = "ast_ucb(";
  if (id.size() > prefix.size() + 1 && id.compare(0, prefix.size(), prefix) == 0 &&
      id.back() == ')') {
    const char* first = id.data() + prefix.size();
    const char* last = id.data() + id.size() - 1;
    double shift = 0.0;
    auto res = std::from_chars(first, last, shift);
    if (res.ec == std::errc() && res.ptr == last) return AstUcb(shift);
  }
  throw std::invalid_argument("unknown policy id: '" + id + "'");
}

double KlUcbTransferIndex(const PolicyState& state, std::size_t arm) {
  const ArmStats& s = state.stats[arm];
  const std::uint64_t n_prior = state.prior->n_prior[arm];
  if (s.pulls == 0 && n_prior == 0) return kInf;
  const IndexInputs in = MakeIndexInputs(
      s.pulls, s.mean, state.sigma, n_prior, state.prior->mu_hat_prior[arm],
      state.spec->arm(arm).l_bound, state.spec->sigma_prior(),
      DeltaAt(state.schedule, state.round));
  return IndexClosedForm(in);
}

double AstUcbIndex(const PolicyState& state, double shift_l, std::size_t arm) {
  const ArmStats& s = state.stats[arm];
  const auto n_prior = static_cast<double>(state.prior->n_prior[arm]);
  const auto n_online = static_cast<double>(s.pulls);
  const double n_total = n_prior + n_online;
  if (n_total == 0.0) return kInf;
  const double mu_hat_prior = n_prior > 0.0 ? state.prior->mu_hat_prior[arm] : 0.0;
  const double pooled = (n_prior * mu_hat_prior + n_online * s.mean) / n_total;
  const double delta = DeltaAt(state.schedule, state.round);
  return pooled + shift_l +
         std::sqrt(2.0 * state.sigma * state.sigma * delta / n_total);
}

std::size_t SelectArmKlUcbTransfer(const PolicyState& state, Rng& ties) {
  CheckState(state);
  return ArgmaxIndex(state, ties, [&](std::size_t a) {
    return KlUcbTransferIndex(state, a);
  });
}

std::size_t SelectArmAstUcb(const PolicyState& state, double shift_l,
                            Rng& ties) {
  CheckState(state);
  if (!std::isfinite(shift_l) || shift_l < 0.0) {
    throw std::invalid_argument("SelectArmAstUcb: shift_l must be >= 0");
  }
  return ArgmaxIndex(state, ties, [&](std::size_t a) {
    return AstUcbIndex(state, shift_l, a);
  });
}

std::size_t SelectArmUniform(const PolicyState& state, Rng& ties) {
  if (state.stats.empty()) {
    throw std::invalid_argument("SelectArmUniform: no arms");
  }
  return ties.UniformIndex(state.num_arms());
}

}  // namespace kltransfer
