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

#ifndef KLTRANSFER_RNG_HPP_
#define KLTRANSFER_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace kltransfer {

// Purpose tag of a random stream. Values are part of the seeding contract and
// must never be renumbered.
enum class Stream : std::uint32_t {
  kPriorSamples = 1,
  kRewards = 2,
  kTieBreaks = 3,
};

std::string_view StreamName(Stream stream);

struct SeedContract {
  std::uint64_t master_seed = 0;
  std::uint64_t run_index = 0;
  Stream stream = Stream::kRewards;
};

// Deterministic random source keyed by a SeedContract.
//
// The key triple is expanded through std::seed_seq into a std::mt19937_64
// state. Both algorithms are fully specified by the C++ standard, so a given
// triple produces the same bits on every conforming implementation. Uniform
// and normal variates are derived here rather than through <random>
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(const SeedContract& seed);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();

  // Standard normal via the Box-Muller transform; the second variate of each
  // pair is cached.
  double Normal();

  // Uniform integer on [0, n). Unbiased (rejection sampling). Requires n > 0.
  std::size_t UniformIndex(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace kltransfer

#endif  // KLTRANSFER_RNG_HPP_
