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
"""Tests for the verification suite runner."""
from argparse import Namespace

import pytest

from sheaf_plethysm.lib.report import PASSED
from sheaf_plethysm.lib.run_parameters import ParameterError, RunParameters
from sheaf_plethysm.lib.runner import SUITES, SuiteRunner


def runner(**arguments):
    """Runner for the given command line values."""
    return SuiteRunner(RunParameters(Namespace(**arguments)))


class TestSuiteRunner:
    """Splitting suites into cases and collecting reports."""

    def test_d2(self):
        """One passing report per n."""
        handler = runner(n=3).run("d2")
        assert [report.n for report in handler.reports] == [1, 2, 3]
        assert handler.test_results()[0] == PASSED

    def test_parameters_recorded(self):
        """Run parameters are merged into every report."""
        handler = runner(n=2, seed=5).run("axioms")
        assert all(report.parameters["seed"] == 5 for report in handler.reports)

    def test_signs(self):
        """Both the corrected and the literal identity run up to n = 4."""
        handler = runner(n=3).run("signs")
        assert len(handler.reports) == 6
        assert not list(handler.failures)

    def test_logformula_kclass(self):
        """K-class comparisons run for small n."""
        handler = runner(n=2, seed=1).run("logformula")
        assert [report.check for report in handler.reports] == [
            "logformula", "kclass", "logformula", "kclass"
        ]
        assert not list(handler.failures)

    def test_psi(self):
        """Both orientations of every two-block partition."""
        handler = runner(n=3).run("psi")
        assert not list(handler.failures)

    def test_charlemma(self):
        """Random presented classes pass the character lemma."""
        handler = runner(cases=2, order=3, seed=9).run("charlemma")
        assert len(handler.reports) == 2
        assert not list(handler.failures)

    def test_strictify_deterministic(self):
        """The same seed gives the same document for any worker count."""
        first = runner(n=2, cases=2, seed=3, workers=1).run("strictify")
        second = runner(n=2, cases=2, seed=3, workers=2).run("strictify")
        assert first.dumps() == second.dumps()
        assert not list(first.failures)

    def test_main(self):
        """Random local data satisfy the identity."""
        handler = runner(n_max=2, cases=1, seed=2, points=2, dims=1).run("main")
        assert handler.reports[-1].check == "main"
        assert not list(handler.failures)

    def test_limits(self):
        """Sizes above a suite limit are parameter errors."""
        with pytest.raises(ParameterError):
            runner(n=8).run("d2")
        with pytest.raises(ParameterError):
            runner(order=7).run("charlemma")
        with pytest.raises(ParameterError):
            runner().run("unknown")

    def test_all_uses_defaults(self):
        """'all' ignores --n and lists the default cases of every suite."""
        suite_runner = runner(n=9)
        names = [name for name, _ in suite_runner.cases("all")]
        assert names[0] == "d2 n=1"
        assert sum(1 for name in names if name.startswith("d2 ")) == 5
        assert sum(1 for name in names if name.startswith("main ")) == 5
        assert not suite_runner.defaults_only
        assert len(SUITES) == 9
