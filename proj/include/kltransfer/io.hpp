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

// Experiment configuration files, result CSVs, the bound table and the
// built-in experiment presets.
//
// All functions report malformed input and I/O failures with
// std::runtime_error (file problems name the path) or std::invalid_argument
// (semantic validation).

#ifndef KLTRANSFER_IO_HPP_
#define KLTRANSFER_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kltransfer/engine.hpp"

namespace kltransfer {

// --- JSON configuration ------------------------------------------------------

// Parses and validates one experiment from JSON text. See README.md for the
// schema.
ExperimentConfig ParseConfig(const std::string& json_text);
// Pretty-printed JSON with a trailing newline. ParseConfig(SerializeConfig(c))
// == c for every valid c.
std::string SerializeConfig(const ExperimentConfig& config);

ExperimentConfig LoadConfig(const std::filesystem::path& path);
void SaveConfig(const ExperimentConfig& config,
                const std::filesystem::path& path);

// --- Result CSV --------------------------------------------------------------

inline constexpr char kCurveCsvHeader[] = "policy,t,mean_regret,sem,runs";

// Header plus one row per (policy, checkpoint), sorted by policy then t.
// Reals use 17 significant digits. The sem field is left empty when the curve
// has fewer than two runs.
std::string FormatCurvesCsv(const std::map<std::string, AggregateCurve>& curves);
std::map<std::string, AggregateCurve> ParseCurvesCsv(const std::string& text);

void EmitCsv(const std::map<std::string, AggregateCurve>& curves,
             const std::filesystem::path& path);
std::map<std::string, AggregateCurve> ReadCsv(const std::filesystem::path& path);

// --- Bound table -------------------------------------------------------------

inline constexpr char kBoundsCsvHeader[] = "arm,gap,pulls_lb,regret_contribution";

struct BoundsRow {
  // 1-based arm number, as printed.
  std::size_t arm = 0;
  double gap = 0.0;
  double pulls_lb = 0.0;
  double regret_contribution = 0.0;
};

struct BoundsTable {
  std::vector<BoundsRow> rows;
  double total_pulls_lb = 0.0;
  double total_regret = 0.0;
};

// Leading-term lower bounds for each suboptimal arm at T = config.horizon.
BoundsTable ComputeBoundsTable(const ExperimentConfig& config);
// Rows followed by "total,,<sum pulls_lb>,<sum regret_contribution>".
std::string FormatBoundsCsv(const BoundsTable& table);

// --- Presets -----------------------------------------------------------------

// "sim1": no-prior baseline plus four (shift, radius) settings on all arms.
// "sim2": baseline, mildly optimistic and pessimistic priors on arm 1 only.
// "sim3": transfer index versus the pooled AST-UCB baseline.
// Throws std::invalid_argument on any other name.
std::vector<ExperimentConfig> Preset(const std::string& name);

}  // namespace kltransfer

#endif  // KLTRANSFER_IO_HPP_
