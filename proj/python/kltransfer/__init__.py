# Copyright 2026 The kltransfer Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Transfer KL-UCB for Gaussian bandits with offline prior samples."""

import json

from ._core import (
    __version__,
    bounds_csv,
    checkpoint_grid,
    delta_at,
    index_bisection_oracle,
    index_closed_form,
    kinf_gaussian,
    truncated_budget_integral,
    tail_moment_constant,
    normal_cdf,
    preset,
    prior_penalty,
    pulls_lower_bound,
    regret_lower_bound,
    run_experiment,
    run_experiment_csv,
)


def preset_configs(name):
    """Preset experiment configs as dictionaries."""
    return [json.loads(text) for text in preset(name)]


__all__ = [
    "__version__",
    "bounds_csv",
    "checkpoint_grid",
    "delta_at",
    "index_bisection_oracle",
    "index_closed_form",
    "kinf_gaussian",
    "truncated_budget_integral",
    "tail_moment_constant",
    "normal_cdf",
    "preset",
    "preset_configs",
    "prior_penalty",
    "pulls_lower_bound",
    "regret_lower_bound",
    "run_experiment",
    "run_experiment_csv",
]
