# Copyright 2024 Sheaf Plethysm contributors.
#
# For a full list of individual contributors, please see the commit history.
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
"""Run parameters module."""
import logging
import os

SEED_LIMIT = 2 ** 64
FORMATS = ("text", "json", "graph")


class ParameterError(ValueError):
    """A run parameter is missing or out of range."""

    def __init__(self, msg, name, value):
        """Initialize with the offending parameter."""
        self.name = name
        self.value = value
        super().__init__(msg)


class RunParameters:
    """Parameters of one CLI run.

    Values come from the parsed command line, then from the environment,
    then from defaults. Each one is validated on first access and cached.
    """

    logger = logging.getLogger("SP - Parameters")
    defaults = {
        "seed": 0,
        "workers": 1,
        "order": None,
        "n": None,
        "n_max": 4,
        "points": 2,
        "dims": 2,
        "vars": 1,
        "format": "text",
        "cases": None,
    }
    environment = {"seed": "SHEAF_PLETHYSM_SEED", "workers": "SHEAF_PLETHYSM_WORKERS"}

    def __init__(self, namespace=None):
        """Run parameters.

        :param namespace: Parsed arguments; attributes that are None or
            missing fall back to the environment and the defaults.
        :type namespace: :obj:`argparse.Namespace`
        """
        self.namespace = namespace
        self.config = {}

    def _raw(self, name):
        value = getattr(self.namespace, name, None)
        if value is None and name in self.environment:
            text = os.getenv(self.environment[name])
            if text:
                try:
                    value = int(text)
                except ValueError as exception:
                    raise ParameterError(
                        "{} must be an integer, got {!r}".format(self.environment[name], text),
                        name,
                        text,
                    ) from exception
        return self.defaults[name] if value is None else value

    def _bounded(self, name, low, high=None):
        if self.config.get(name) is None:
            value = self._raw(name)
            if value is None:
                return None
            if value < low or (high is not None and value > high):
                raise ParameterError(
                    "--{} must lie in [{}, {}], got {}".format(
                        name.replace("_", "-"), low, "inf" if high is None else high, value
                    ),
                    name,
                    value,
                )
            self.config[name] = value
        return self.config[name]

    @property
    def seed(self):
        """Seed of every random generator of the run.

        :rtype: int
        """
        return self._bounded("seed", 0, SEED_LIMIT - 1)

    @property
    def workers(self):
        """Number of worker threads."""
        return self._bounded("workers", 1)

    @property
    def order(self):
        """Truncation order N of series, or None when not given."""
        return self._bounded("order", 0)

    @property
    def cases(self):
        """Number of random cases, or None for the suite default."""
        return self._bounded("cases", 1)

    @property
    def n(self):
        """Size n, or None when not given."""
        return self._bounded("n", 1)

    @property
    def n_max(self):
        """Largest n for sweeps."""
        return self._bounded("n_max", 1)

    @property
    def points(self):
        """Number of points |X| of random local data."""
        return self._bounded("points", 1)

    @property
    def dims(self):
        """Largest fiber dimension of random data."""
        return self._bounded("dims", 0)

    @property
    def variables(self):
        """Number d of torus variables."""
        return self._bounded("vars", 0)

    @property
    def output_format(self):
        """One of text, json and graph."""
        if self.config.get("format") is None:
            value = self._raw("format")
            if value not in FORMATS:
                raise ParameterError(
                    "--format must be one of {}, got {!r}".format(", ".join(FORMATS), value),
                    "format",
                    value,
                )
            self.config["format"] = value
        return self.config["format"]

    def require_n(self, low, high):
        """n, which must be given and lie in [low, high].

        :raises ParameterError: Otherwise.
        """
        n = self.n
        if n is None:
            raise ParameterError("--n is required", "n", None)
        if not low <= n <= high:
            raise ParameterError(
                "--n must lie in [{}, {}], got {}".format(low, high, n), "n", n
            )
        return n

    def to_dict(self):
        """Parameters that determine the results; the worker count does not."""
        return {
            "seed": self.seed,
            "order": self.order,
            "n": self.n,
            "n_max": self.n_max,
            "points": self.points,
            "dims": self.dims,
            "vars": self.variables,
            "cases": self.cases,
        }
