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
"""Tests for the command line."""
import io
import json

import pytest

from sheaf_plethysm.__main__ import EXIT_FAILED, EXIT_PASSED, EXIT_USAGE, main
from sheaf_plethysm.lib.report import Report


def run(*argv):
    """Exit code and standard output of one invocation."""
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


class TestSeriesCommands:
    """exp and log."""

    def test_exp(self, tmp_path):
        """Exp(q) = 1/(1 - q)."""
        path = tmp_path / "series.txt"
        path.write_text("q")
        assert run("exp", str(path), "--order", "3") == (EXIT_PASSED, "1 + q + q^2 + q^3\n")

    def test_log_from_stdin(self, monkeypatch):
        """'-' reads the series from standard input."""
        monkeypatch.setattr("sys.stdin", io.StringIO("1/(1 - q)"))
        assert run("log", "-", "--order", "4") == (EXIT_PASSED, "q\n")

    def test_json(self, tmp_path):
        """The JSON form carries order and variable count."""
        path = tmp_path / "series.txt"
        path.write_text("t1*q")
        code, output = run("exp", str(path), "--order", "2", "--format", "json")
        document = json.loads(output)
        assert code == EXIT_PASSED
        assert document["order"] == 2
        assert len(document["coefficients"]) == 3

    def test_missing_file(self, tmp_path):
        """An unreadable file is a usage error."""
        assert run("exp", str(tmp_path / "missing"))[0] == EXIT_USAGE

    def test_parse_error(self, tmp_path):
        """Malformed text is a usage error."""
        path = tmp_path / "series.txt"
        path.write_text("1 +")
        assert run("exp", str(path))[0] == EXIT_USAGE

    @pytest.mark.parametrize(
        "document",
        [
            {"order": 3, "vars": 1, "coefficients": [0, "t1"]},
            {"order": 3, "vars": "x", "coefficients": ["t1"]},
        ],
    )
    def test_malformed_json(self, tmp_path, document):
        """Wrongly typed JSON fields are a usage error."""
        path = tmp_path / "series.json"
        path.write_text(json.dumps(document))
        assert run("exp", str(path))[0] == EXIT_USAGE

    def test_constant_term(self, tmp_path):
        """Exp needs a series without constant term."""
        path = tmp_path / "series.txt"
        path.write_text("1 + q")
        assert run("exp", str(path))[0] == EXIT_USAGE


class TestTrees:
    """The trees command."""

    def test_counts(self):
        """Trees of order 3 by number of internal nodes."""
        assert run("trees", "--n", "3", "--counts") == (EXIT_PASSED, "[1,4,3]\n")

    def test_text(self):
        """One label family per line."""
        assert run("trees", "--n", "2") == (EXIT_PASSED, "[[1,2]]\n[[1],[2],[1,2]]\n")

    def test_orbits(self):
        """Order 3 has four orbits of trees."""
        code, output = run("trees", "--n", "3", "--orbits")
        assert code == EXIT_PASSED
        assert len(output.splitlines()) == 4

    def test_graph(self):
        """Edges from parent to child."""
        code, output = run("trees", "--n", "2", "--format", "graph")
        assert output == "{1,2}\n\n{1,2} -> {1}\n{1,2} -> {2}\n"

    @pytest.mark.parametrize("argv", [["trees"], ["trees", "--n", "10"], ["trees", "--n", "0"]])
    def test_bad_n(self, argv):
        """n is required and bounded."""
        assert run(*argv)[0] == EXIT_USAGE


class TestVerify:
    """The verify command."""

    def test_passing_suite(self, tmp_path):
        """A passing suite exits 0 and writes its report."""
        path = tmp_path / "report.json"
        code, output = run("verify", "d2", "--n", "3", "--output", str(path))
        assert code == EXIT_PASSED
        assert output.startswith("d2: PASSED")
        assert json.loads(path.read_text())["verdict"] == "PASSED"

    def test_json_output(self):
        """The JSON report records the parameters."""
        code, output = run("verify", "axioms", "--n", "2", "--format", "json", "--seed", "4")
        document = json.loads(output)
        assert code == EXIT_PASSED
        assert document["parameters"]["seed"] == 4
        assert document["suite"] == "axioms"

    def test_failing_suite(self, monkeypatch):
        """A failed report exits 1."""
        monkeypatch.setattr(
            "sheaf_plethysm.lib.runner.check_d_squared",
            lambda n: Report("d2", n).fail({"forced": True}),
        )
        assert run("verify", "d2", "--n", "1")[0] == EXIT_FAILED

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "nothing"],
            ["verify", "d2", "--n", "8"],
            ["verify", "d2", "--format", "graph"],
            ["verify", "d2", "--workers", "0"],
            [],
        ],
    )
    def test_usage_errors(self, argv):
        """Bad input exits 2."""
        assert run(*argv)[0] == EXIT_USAGE
