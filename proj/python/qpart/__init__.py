# Copyright 2026 The qpart Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python access to the qpart partitioning core."""

import json as _json

from . import _qpart
from ._qpart import (
    BenchError,
    CircuitError,
    ConfigError,
    EnvError,
    PartitionError,
    Session,
    action_index,
    generate,
    nonlocal_moves,
    num_actions,
    observation_size,
    timeslice,
)

__all__ = [
    "BenchError",
    "CircuitError",
    "ConfigError",
    "EnvError",
    "Environment",
    "PartitionError",
    "Session",
    "action_index",
    "fgp_roee",
    "generate",
    "nonlocal_moves",
    "num_actions",
    "observation_size",
    "oracle_optimal",
    "run_benchmark",
    "run_episode",
    "timeslice",
]


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


class Environment(_qpart.Environment):
    """Partitioning environment built from a config dict (or its JSON text)."""

    def __init__(self, config):
        super().__init__(_text(config))


def fgp_roee(circuit, num_cores, decay=0.5, max_passes=8):
    return _json.loads(_qpart.fgp_roee(circuit, num_cores, decay, max_passes))


def oracle_optimal(circuit, num_cores):
    return _json.loads(_qpart.oracle_optimal(circuit, num_cores))


def run_episode(config, policy="greedy", seed=0):
    return _qpart.run_episode(_text(config), policy, seed)


def run_benchmark(spec):
    """Returns (csv_text, report_dict)."""
    csv_text, json_text = _qpart.run_benchmark(_text(spec))
    return csv_text, _json.loads(json_text)
