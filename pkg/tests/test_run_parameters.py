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
"""Tests for run parameters."""
from argparse import Namespace

import pytest

from sheaf_plethysm.lib.run_parameters import ParameterError, RunParameters


class TestRunParameters:
    """Command line, environment and defaults."""

    def test_defaults(self, monkeypatch):
        """Missing values fall back to the defaults."""
        monkeypatch.delenv("SHEAF_PLETHYSM_SEED", raising=False)
        monkeypatch.delenv("SHEAF_PLETHYSM_WORKERS", raising=False)
        params = RunParameters(Namespace())
        assert params.seed == 0
        assert params.workers == 1
        assert params.order is None
        assert params.variables == 1
        assert params.output_format == "text"

    def test_environment(self, monkeypatch):
        """The seed and worker count may come from the environment."""
        monkeypatch.setenv("SHEAF_PLETHYSM_SEED", "42")
        monkeypatch.setenv("SHEAF_PLETHYSM_WORKERS", "3")
        params = RunParameters(Namespace(seed=None))
        assert params.seed == 42
        assert params.workers == 3

    def test_command_line_wins(self, monkeypatch):
        """An explicit value overrides the environment."""
        monkeypatch.setenv("SHEAF_PLETHYSM_SEED", "42")
        assert RunParameters(Namespace(seed=7)).seed == 7

    def test_bad_environment(self, monkeypatch):
        """A non-integer environment value is a parameter error."""
        monkeypatch.setenv("SHEAF_PLETHYSM_WORKERS", "many")
        with pytest.raises(ParameterError) as error:
            RunParameters(Namespace()).workers  # pylint:disable=expression-not-assigned
        assert error.value.name == "workers"

    @pytest.mark.parametrize(
        "name,value,attribute",
        [
            ("seed", -1, "seed"),
            ("seed", 2 ** 64, "seed"),
            ("workers", 0, "workers"),
            ("n", 0, "n"),
            ("vars", -1, "variables"),
            ("format", "xml", "output_format"),
        ],
    )
    def test_out_of_range(self, name, value, attribute):
        """Values outside their range raise ParameterError."""
        params = RunParameters(Namespace(**{name: value}))
        with pytest.raises(ParameterError):
            getattr(params, attribute)

    def test_require_n(self):
        """n must be given and lie in range."""
        with pytest.raises(ParameterError):
            RunParameters(Namespace()).require_n(1, 5)
        with pytest.raises(ParameterError):
            RunParameters(Namespace(n=6)).require_n(1, 5)
        assert RunParameters(Namespace(n=5)).require_n(1, 5) == 5

    def test_to_dict(self, monkeypatch):
        """The worker count does not change results and is not recorded."""
        monkeypatch.delenv("SHEAF_PLETHYSM_SEED", raising=False)
        document = RunParameters(Namespace(workers=4, n=3)).to_dict()
        assert "workers" not in document
        assert document["n"] == 3
        assert document["seed"] == 0
