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

// kltransfer: run bandit experiments, generate presets, print bound tables.
//
//   kltransfer run <config.json> [--runs N] [--horizon T] [--seed S]
//                  [--threads N] [--out results.csv]
//   kltransfer preset <sim1|sim2|sim3> --out-dir DIR [--run] [overrides]
//   kltransfer bounds <config.json> [--horizon T] [--out bounds.csv]

#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kltransfer/engine.hpp"
#include "kltransfer/io.hpp"

namespace {

namespace fs = std::filesystem;
using kltransfer::ExperimentConfig;

struct Overrides {
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> seed;

  void Apply(ExperimentConfig& c) const {
    if (runs) c.runs = *runs;
    if (horizon) c.horizon = *horizon;
    if (seed) c.master_seed = *seed;
    c.Validate();
  }
};

void AddOverrideFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--runs", o.runs, "Override the number of replications");
  cmd->add_option("--horizon", o.horizon, "Override the horizon T");
  cmd->add_option("--seed", o.seed, "Override the master seed");
}

void WarnAboutPriors(const ExperimentConfig& c) {
  for (const std::string& w : c.prior.ValidityWarnings(c.instance)) {
    std::cerr << "warning: " << c.name << ": " << w << "\n";
  }
}

void RunAndWrite(const ExperimentConfig& c, unsigned threads,
                 const fs::path& out) {
  WarnAboutPriors(c);
  const auto start = std::chrono::steady_clock::now();
  const auto curves = kltransfer::RunExperiment(c, threads);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  if (out.empty()) {
    std::cout << kltransfer::FormatCurvesCsv(curves);
  } else {
    kltransfer::EmitCsv(curves, out);
  }
  std::cerr << c.name << ": " << c.runs << " runs x " << c.policies.size()
            << " policies, T=" << c.horizon << " in " << elapsed.count()
            << " s" << (out.empty() ? "" : " -> " + out.string()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer KL-UCB bandit experiments"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads for replications (0 = hardware concurrency)");

  Overrides overrides;

  std::string run_config;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", run_config, "Experiment JSON file")->required();
  run->add_option("--out", run_out,
                  "Result CSV path, '-' for stdout (default: the config's "
                  "output_path, or stdout when that is empty)");
  AddOverrideFlags(run, overrides);

  std::string preset_name;
  std::string out_dir;
  bool preset_run = false;
  CLI::App* preset = app.add_subcommand("preset", "Write a built-in preset");
  preset->add_option("name", preset_name, "sim1, sim2 or sim3")->required();
  preset->add_option("--out-dir", out_dir, "Directory for the config files")
      ->required();
  preset->add_flag("--run", preset_run,
                   "Also run every config and write its CSV to --out-dir");
  AddOverrideFlags(preset, overrides);

  std::string bounds_config;
  std::string bounds_out;
  std::optional<std::uint64_t> bounds_horizon;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Print the per-arm regret lower bounds");
  bounds->add_option("config", bounds_config, "Experiment JSON file")
      ->required();
  bounds->add_option("--horizon", bounds_horizon, "Override the horizon T");
  bounds->add_option("--out", bounds_out, "CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig c = kltransfer::LoadConfig(run_config);
      overrides.Apply(c);
      fs::path out = run_out;
      if (out.empty() && !c.output_path.empty()) out = c.output_path;
      if (out == "-") out.clear();
      RunAndWrite(c, threads, out);
    } else if (*preset) {
      const auto configs = kltransfer::Preset(preset_name);
      fs::create_directories(out_dir);
      for (ExperimentConfig c : configs) {
        overrides.Apply(c);
        const fs::path config_path = fs::path(out_dir) / (c.name + ".json");
        kltransfer::SaveConfig(c, config_path);
        std::cerr << "wrote " << config_path.string() << "\n";
        if (preset_run) {
          RunAndWrite(c, threads, fs::path(out_dir) / c.output_path);
        }
      }
    } else if (*bounds) {
      ExperimentConfig c = kltransfer::LoadConfig(bounds_config);
      if (bounds_horizon) c.horizon = *bounds_horizon;
      c.Validate();
      WarnAboutPriors(c);
      const std::string csv =
          kltransfer::FormatBoundsCsv(kltransfer::ComputeBoundsTable(c));
      if (bounds_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(bounds_out, std::ios::binary);
        out << csv;
        if (!out) throw std::runtime_error("write error on '" + bounds_out + "'");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
