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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "kltransfer/engine.hpp"
#include "kltransfer/index.hpp"
#include "kltransfer/io.hpp"
#include "kltransfer/theory.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace kltransfer;

namespace {

DeltaSchedule ScheduleFromName(const std::string& kind, double epsilon) {
  if (kind == "theory") return DeltaSchedule::Theory();
  if (kind == "linearized") return DeltaSchedule::Linearized(epsilon);
  throw py::value_error("schedule must be 'theory' or 'linearized'");
}

py::dict CurveToDict(const AggregateCurve& c) {
  py::dict d;
  d["checkpoints"] = c.checkpoints;
  d["mean_regret"] = c.mean_regret;
  d["sem"] = c.sem;
  d["runs"] = c.runs;
  d["sem_defined"] = c.sem_defined;
  d["mean_final_pulls"] = c.mean_final_pulls;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
      Transfer KL-UCB for Gaussian bandits with offline prior samples
      ---------------------------------------------------------------

      Index evaluation, regret-bound evaluators and the seeded regret
      simulation engine. Experiment configs are passed as JSON text using the
      same schema as the command-line tool.
  )pbdoc";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("delta_at",
        [](const std::string& kind, std::uint64_t t, double epsilon) {
          return DeltaAt(ScheduleFromName(kind, epsilon), t);
        },
        py::arg("kind"), py::arg("t"), py::arg("epsilon") = 0.05,
        "Exploration budget at round t for the 'theory' or 'linearized' schedule.");
  m.def("prior_penalty", &PriorPenalty, py::arg("q"), py::arg("beta"),
        py::arg("shifted_prior"));
  m.def("index_closed_form",
        [](double alpha, double mu_hat, double beta, double shifted_prior,
           double delta) {
          return IndexClosedForm({alpha, mu_hat, beta, shifted_prior, delta});
        },
        py::arg("alpha"), py::arg("mu_hat"), py::arg("beta"),
        py::arg("shifted_prior"), py::arg("delta"),
        "Largest q with alpha (q-mu_hat)_+^2 + beta (q-shifted_prior)_+^2 <= delta.");
  m.def("index_bisection_oracle",
        [](double alpha, double mu_hat, double beta, double shifted_prior,
           double delta, double tol) {
          return IndexBisectionOracle({alpha, mu_hat, beta, shifted_prior, delta},
                                      tol);
        },
        py::arg("alpha"), py::arg("mu_hat"), py::arg("beta"),
        py::arg("shifted_prior"), py::arg("delta"), py::arg("tol") = 0.0);

  m.def("normal_cdf", &NormalCdf, py::arg("x"));
  m.def("kinf_gaussian", &KinfGaussian, py::arg("mu_prior"),
        py::arg("mu_tilde"), py::arg("l_bound"), py::arg("sigma_prior"));
  m.def("pulls_lower_bound",
        [](double mu_star, double mu_k, double sigma, std::uint64_t n_prior,
           double mu_prior, double l_bound, double sigma_prior,
           std::uint64_t horizon) {
          return PullsLowerBound({mu_star, mu_k, sigma, n_prior, mu_prior,
                                  l_bound, sigma_prior, horizon});
        },
        py::arg("mu_star"), py::arg("mu_k"), py::arg("sigma"),
        py::arg("n_prior"), py::arg("mu_prior"), py::arg("l_bound"),
        py::arg("sigma_prior"), py::arg("horizon"));
  m.def("regret_lower_bound",
        [](const std::vector<double>& means, double sigma,
           const std::vector<std::tuple<std::uint64_t, double, double>>& prior,
           double sigma_prior, std::uint64_t horizon) {
          std::vector<PriorArm> arms;
          for (const auto& [n, mu, l] : prior) arms.push_back({n, mu, l});
          if (arms.empty()) arms.resize(means.size());
          return RegretLowerBound(BanditInstance(means, sigma),
                                  PriorSpec(arms, sigma_prior), horizon);
        },
        py::arg("means"), py::arg("sigma") = 1.0,
        py::arg("prior") = std::vector<std::tuple<std::uint64_t, double, double>>{},
        py::arg("sigma_prior") = 1.0, py::arg("horizon"),
        "prior: list of (n_prior, mu_prior, l_bound) per arm; empty for none.");
  m.def("truncated_budget_integral", &TruncatedBudgetIntegral, py::arg("beta"), py::arg("delta"));
  m.def("tail_moment_constant", &TailMomentConstant, py::arg("a"));

  m.def("checkpoint_grid", &CheckpointGrid, py::arg("horizon"),
        py::arg("count"));
  m.def("preset",
        [](const std::string& name) {
          std::vector<std::string> out;
          for (const ExperimentConfig& c : Preset(name)) {
            out.push_back(SerializeConfig(c));
          }
          return out;
        },
        py::arg("name"), "Preset configs as JSON text.");
  m.def("run_experiment",
        [](const std::string& config_json, unsigned threads) {
          const ExperimentConfig config = ParseConfig(config_json);
          std::map<std::string, AggregateCurve> curves;
          {
            py::gil_scoped_release release;
            curves = RunExperiment(config, threads);
          }
          py::dict out;
          for (const auto& [id, curve] : curves) out[py::str(id)] = CurveToDict(curve);
          return out;
        },
        py::arg("config_json"), py::arg("threads") = 0,
        "Run a JSON experiment config; returns {policy_id: curve dict}.");
  m.def("run_experiment_csv",
        [](const std::string& config_json, unsigned threads) {
          const ExperimentConfig config = ParseConfig(config_json);
          py::gil_scoped_release release;
          return FormatCurvesCsv(RunExperiment(config, threads));
        },
        py::arg("config_json"), py::arg("threads") = 0);
  m.def("bounds_csv",
        [](const std::string& config_json) {
          return FormatBoundsCsv(ComputeBoundsTable(ParseConfig(config_json)));
        },
        py::arg("config_json"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
