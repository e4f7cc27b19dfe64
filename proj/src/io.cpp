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

#include "kltransfer/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <type_traits>

#include "json.hpp"
#include "kltransfer/theory.hpp"

namespace kltransfer {

namespace {

using nlohmann::json;

// --- helpers -----------------------------------------------------------------

std::string FormatReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Rounds a derived preset value to 12 significant digits so that, e.g.,
// 0.9 + 0.05 is stored as 0.95 rather than 0.95000000000000007.
double Tidy(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read error on '" + path.string() + "'");
  return os.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write error on '" + path.string() + "'");
}

void CheckKeys(const json& obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw std::runtime_error(std::string(where) + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known) {
      throw std::runtime_error(std::string(where) + ": unknown key '" +
                               item.key() + "'");
    }
  }
}

template <typename T>
T Get(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) {
    throw std::runtime_error(std::string(where) + ": missing key '" + key + "'");
  }
  const json& value = obj.at(key);
  if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
    if (!value.is_number_unsigned()) {
      throw std::runtime_error(std::string(where) + "." + key +
                               ": expected a non-negative integer");
    }
  }
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string(where) + "." + key + ": " + e.what());
  }
}

template <typename T>
T GetOr(const json& obj, const char* key, std::string_view where, T fallback) {
  return obj.contains(key) ? Get<T>(obj, key, where) : fallback;
}

PolicySpec PolicyFromJson(const json& j) {
  CheckKeys(j, "policies[]", {"kind", "shift_l"});
  const auto kind = Get<std::string>(j, "kind", "policies[]");
  if (kind == "ast_ucb") {
    return PolicySpec::AstUcb(Get<double>(j, "shift_l", "policies[]"));
  }
  if (j.contains("shift_l")) {
    throw std::runtime_error("policies[]: shift_l is only valid for ast_ucb");
  }
  return PolicySpec::Parse(kind);
}

nlohmann::ordered_json PolicyToJson(const PolicySpec& p) {
  switch (p.kind) {
    case PolicySpec::Kind::kAstUcb:
      return {{"kind", "ast_ucb"}, {"shift_l", p.shift_l}};
    default:
      return {{"kind", p.id()}};
  }
}

DeltaSchedule ScheduleFromJson(const json& j) {
  CheckKeys(j, "schedule", {"kind", "epsilon"});
  const auto kind = Get<std::string>(j, "kind", "schedule");
  if (kind == "theory") {
    if (j.contains("epsilon")) {
      throw std::runtime_error("schedule: epsilon is only valid for linearized");
    }
    return DeltaSchedule::Theory();
  }
  if (kind == "linearized") {
    return DeltaSchedule::Linearized(Get<double>(j, "epsilon", "schedule"));
  }
  throw std::runtime_error("schedule: unknown kind '" + kind + "'");
}

nlohmann::ordered_json ScheduleToJson(const DeltaSchedule& s) {
  if (s.kind == DeltaSchedule::Kind::kTheory) return {{"kind", "theory"}};
  return {{"kind", "linearized"}, {"epsilon", s.epsilon}};
}

// Splits one CSV line on commas; the formats written here never quote.
std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return fields;
    start = comma + 1;
  }
}

double ParseReal(const std::string& field, std::size_t line_no,
                 const char* column) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ", column " +
                             column + ": not a number: '" + field + "'");
  }
  return v;
}

std::uint64_t ParseCount(const std::string& field, std::size_t line_no,
                         const char* column) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
  if (field.empty() || field[0] == '-' || end != field.c_str() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ", column " +
                             column + ": not a count: '" + field + "'");
  }
  return v;
}

}  // namespace

// --- JSON configuration ------------------------------------------------------

ExperimentConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  CheckKeys(root, "config",
            {"name", "instance", "prior", "policies", "schedule", "horizon",
             "runs", "master_seed", "checkpoint_count", "output_path"});

  ExperimentConfig c;
  c.name = GetOr<std::string>(root, "name", "config", "");

  const json instance = Get<json>(root, "instance", "config");
  CheckKeys(instance, "instance", {"means", "sigma"});
  c.instance = BanditInstance(Get<std::vector<double>>(instance, "means", "instance"),
                              Get<double>(instance, "sigma", "instance"));

  if (root.contains("prior")) {
    const json prior = root.at("prior");
    CheckKeys(prior, "prior", {"sigma_prior", "arms"});
    std::vector<PriorArm> arms;
    for (const json& a : Get<json>(prior, "arms", "prior")) {
      CheckKeys(a, "prior.arms[]", {"n_prior", "mu_prior", "l_bound"});
      PriorArm arm;
      arm.n_prior = Get<std::uint64_t>(a, "n_prior", "prior.arms[]");
      arm.mu_prior = GetOr<double>(a, "mu_prior", "prior.arms[]", 0.0);
      arm.l_bound = GetOr<double>(a, "l_bound", "prior.arms[]", 0.0);
      arms.push_back(arm);
    }
    c.prior = PriorSpec(std::move(arms),
                        GetOr<double>(prior, "sigma_prior", "prior", 1.0));
  } else {
    c.prior = PriorSpec::None(c.instance.num_arms());
  }

  const json policies = Get<json>(root, "policies", "config");
  if (!policies.is_array()) throw std::runtime_error("policies: expected an array");
  for (const json& p : policies) c.policies.push_back(PolicyFromJson(p));

  c.schedule = ScheduleFromJson(Get<json>(root, "schedule", "config"));
  c.horizon = Get<std::uint64_t>(root, "horizon", "config");
  c.runs = Get<std::uint64_t>(root, "runs", "config");
  c.master_seed = Get<std::uint64_t>(root, "master_seed", "config");
  c.checkpoint_count =
      GetOr<std::size_t>(root, "checkpoint_count", "config", 200);
  c.output_path = GetOr<std::string>(root, "output_path", "config", "");
  c.Validate();
  return c;
}

std::string SerializeConfig(const ExperimentConfig& c) {
  nlohmann::ordered_json arms = nlohmann::ordered_json::array();
  for (const PriorArm& a : c.prior.arms()) {
    arms.push_back(
        {{"n_prior", a.n_prior}, {"mu_prior", a.mu_prior}, {"l_bound", a.l_bound}});
  }
  nlohmann::ordered_json policies = nlohmann::ordered_json::array();
  for (const PolicySpec& p : c.policies) policies.push_back(PolicyToJson(p));

  // ordered_json keeps the documented field order in the output.
  nlohmann::ordered_json root;
  root["name"] = c.name;
  root["instance"] = {{"means", c.instance.means()}, {"sigma", c.instance.sigma()}};
  root["prior"] = {{"sigma_prior", c.prior.sigma_prior()}, {"arms", arms}};
  root["policies"] = policies;
  root["schedule"] = ScheduleToJson(c.schedule);
  root["horizon"] = c.horizon;
  root["runs"] = c.runs;
  root["master_seed"] = c.master_seed;
  root["checkpoint_count"] = c.checkpoint_count;
  root["output_path"] = c.output_path;
  return root.dump(2) + "\n";
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  try {
    return ParseConfig(ReadFile(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void SaveConfig(const ExperimentConfig& config,
                const std::filesystem::path& path) {
  WriteFile(path, SerializeConfig(config));
}

// --- Result CSV --------------------------------------------------------------

std::string FormatCurvesCsv(
    const std::map<std::string, AggregateCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("FormatCurvesCsv: no curves");
  std::string out = std::string(kCurveCsvHeader) + "\n";
  // std::map iterates policies in sorted order; checkpoints are ascending.
  for (const auto& [policy, curve] : curves) {
    if (policy.empty() ||
        policy.find_first_of(",\"\n\r") != std::string::npos) {
      throw std::invalid_argument("FormatCurvesCsv: policy id '" + policy +
                                  "' cannot be written unquoted");
    }
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
      out += policy;
      out += ',';
      out += std::to_string(curve.checkpoints[i]);
      out += ',';
      out += FormatReal(curve.mean_regret[i]);
      out += ',';
      if (curve.sem_defined) out += FormatReal(curve.sem[i]);
      out += ',';
      out += std::to_string(curve.runs);
      out += '\n';
    }
  }
  return out;
}

std::map<std::string, AggregateCurve> ParseCurvesCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCurveCsvHeader) {
    throw std::runtime_error("line 1: expected header '" +
                             std::string(kCurveCsvHeader) + "'");
  }
  std::map<std::string, AggregateCurve> curves;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 5) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 5 fields, found " +
                               std::to_string(f.size()));
    }
    AggregateCurve& c = curves[f[0]];
    const std::uint64_t t = ParseCount(f[1], line_no, "t");
    const std::uint64_t runs = ParseCount(f[4], line_no, "runs");
    const bool sem_defined = !f[3].empty();
    if (c.checkpoints.empty()) {
      c.runs = runs;
      c.sem_defined = sem_defined;
    } else if (c.runs != runs || c.sem_defined != sem_defined ||
               t <= c.checkpoints.back()) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": inconsistent row for policy '" + f[0] + "'");
    }
    c.checkpoints.push_back(t);
    c.mean_regret.push_back(ParseReal(f[2], line_no, "mean_regret"));
    c.sem.push_back(sem_defined ? ParseReal(f[3], line_no, "sem") : 0.0);
  }
  return curves;
}

void EmitCsv(const std::map<std::string, AggregateCurve>& curves,
             const std::filesystem::path& path) {
  WriteFile(path, FormatCurvesCsv(curves));
}

std::map<std::string, AggregateCurve> ReadCsv(
    const std::filesystem::path& path) {
  try {
    return ParseCurvesCsv(ReadFile(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

// --- Bound table -------------------------------------------------------------

BoundsTable ComputeBoundsTable(const ExperimentConfig& config) {
  const BanditInstance& instance = config.instance;
  config.prior.CheckMatches(instance);
  if (!instance.has_unique_optimum()) {
    throw std::invalid_argument("bounds: optimal arm is not unique");
  }
  BoundsTable table;
  const std::size_t best = instance.optimal_arm();
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    if (k == best) continue;
    const PriorArm& prior = config.prior.arm(k);
    BoundInputs in;
    in.mu_star = instance.optimal_mean();
    in.mu_k = instance.means()[k];
    in.sigma = instance.sigma();
    in.n_prior = prior.n_prior;
    in.mu_prior = prior.mu_prior;
    in.l_bound = prior.l_bound;
    in.sigma_prior = config.prior.sigma_prior();
    in.horizon = config.horizon;

    BoundsRow row;
    row.arm = k + 1;
    row.gap = instance.gap(k);
    row.pulls_lb = PullsLowerBound(in);
    row.regret_contribution = row.gap * row.pulls_lb;
    table.total_pulls_lb += row.pulls_lb;
    table.total_regret += row.regret_contribution;
    table.rows.push_back(row);
  }
  return table;
}

std::string FormatBoundsCsv(const BoundsTable& table) {
  std::string out = std::string(kBoundsCsvHeader) + "\n";
  for (const BoundsRow& r : table.rows) {
    out += std::to_string(r.arm) + "," + FormatReal(r.gap) + "," +
           FormatReal(r.pulls_lb) + "," + FormatReal(r.regret_contribution) +
           "\n";
  }
  out += "total,," + FormatReal(table.total_pulls_lb) + "," +
         FormatReal(table.total_regret) + "\n";
  return out;
}

// --- Presets -----------------------------------------------------------------

namespace {

constexpr std::uint64_t kPresetSeed = 20250601;
constexpr std::uint64_t kPriorSamples = 1000;
constexpr double kEpsilon = 0.05;

const std::vector<double>& BenchmarkMeans() {
  static const std::vector<double> means = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  return means;
}

ExperimentConfig BaseConfig(std::string name, std::uint64_t horizon) {
  ExperimentConfig c;
  c.instance = BanditInstance(BenchmarkMeans(), 1.0);
  c.prior = PriorSpec::None(BenchmarkMeans().size());
  c.policies = {PolicySpec::KlUcbTransfer()};
  c.schedule = DeltaSchedule::Linearized(kEpsilon);
  c.horizon = horizon;
  c.runs = 100;
  c.master_seed = kPresetSeed;
  c.checkpoint_count = 200;
  c.output_path = name + ".csv";
  c.name = std::move(name);
  return c;
}

// Prior mean mu_k + shift with radius `radius` on every arm.
PriorSpec ShiftedPriorOnAllArms(double shift, double radius) {
  std::vector<PriorArm> arms;
  for (double mu : BenchmarkMeans()) {
    arms.push_back({kPriorSamples, Tidy(mu + shift), radius});
  }
  return PriorSpec(std::move(arms), 1.0);
}

std::string ShiftRadiusLabel(double shift, double radius) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "d%.2f_L%.2f", shift, radius);
  return buf;
}

std::vector<ExperimentConfig> Sim1() {
  std::vector<ExperimentConfig> out;
  out.push_back(BaseConfig("sim1_baseline", 1'000'000));
  const double settings[][2] = {
      {0.20, 0.40}, {0.11, 0.20}, {0.05, 0.10}, {0.00, 0.05}};
  for (const auto& [shift, radius] : settings) {
    ExperimentConfig c =
        BaseConfig("sim1_" + ShiftRadiusLabel(shift, radius), 1'000'000);
    c.prior = ShiftedPriorOnAllArms(shift, radius);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ExperimentConfig> Sim2() {
  std::vector<ExperimentConfig> out;
  out.push_back(BaseConfig("sim2_baseline", 10'000));
  const double mu1 = BenchmarkMeans()[0];
  auto with_arm1_prior = [&](std::string name, double offset, double radius) {
    ExperimentConfig c = BaseConfig(std::move(name), 10'000);
    std::vector<PriorArm> arms(BenchmarkMeans().size());
    for (std::size_t k = 0; k < arms.size(); ++k) arms[k].mu_prior = BenchmarkMeans()[k];
    arms[0] = {kPriorSamples, Tidy(mu1 + offset), radius};
    c.prior = PriorSpec(std::move(arms), 1.0);
    return c;
  };
  out.push_back(with_arm1_prior("sim2_mildly_optimistic", 0.001, 0.004));
  out.push_back(with_arm1_prior("sim2_pessimistic", -0.010, 0.210));
  return out;
}

std::vector<ExperimentConfig> Sim3() {
  std::vector<ExperimentConfig> out;
  ExperimentConfig transfer = BaseConfig("sim3_klucb_transfer", 1'000'000);
  transfer.prior = ShiftedPriorOnAllArms(0.05, 0.10);
  ExperimentConfig ast = transfer;
  ast.name = "sim3_ast_ucb";
  ast.output_path = "sim3_ast_ucb.csv";
  ast.policies = {PolicySpec::AstUcb(0.10)};
  out.push_back(std::move(transfer));
  out.push_back(std::move(ast));
  return out;
}

}  // namespace

std::vector<ExperimentConfig> Preset(const std::string& name) {
  if (name == "sim1") return Sim1();
  if (name == "sim2") return Sim2();
  if (name == "sim3") return Sim3();
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected sim1, sim2 or sim3)");
}

}  // namespace kltransfer
