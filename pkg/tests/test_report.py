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
"""Tests for reports and the result handler."""
import json

from sheaf_plethysm.lib.report import FAILED, INCONCLUSIVE, PASSED, Report, ResultHandler


class TestReport:
    """Single reports."""

    def test_first_witness_kept(self):
        """A second failure does not replace the first witness."""
        report = Report("d2", 3)
        report.fail({"first": 1}).fail({"second": 2})
        assert report.status == FAILED
        assert report.witness == {"first": 1}

    def test_to_dict(self):
        """The dictionary form names every field."""
        report = Report("psi", 2, {"swap": True})
        assert report.to_dict() == {
            "check": "psi",
            "n": 2,
            "parameters": {"swap": True},
            "status": PASSED,
            "witness": None,
            "details": {},
        }


class TestResultHandler:
    """Suite verdicts."""

    def test_empty_is_inconclusive(self):
        """No reports, no verdict."""
        assert ResultHandler("d2").test_results()[0] == INCONCLUSIVE

    def test_failures(self):
        """One failure fails the suite and is listed."""
        handler = ResultHandler("d2")
        handler.extend([Report("d2", 1), Report("d2", 2).fail({"tree": []})])
        verdict, description = handler.test_results()
        assert verdict == FAILED
        assert "1 of 2" in description
        assert [report.n for report in handler.failures] == [2]

    def test_json_document(self):
        """The JSON document is versioned and deterministic."""
        handler = ResultHandler("axioms")
        handler.add(Report("axioms", 3))
        document = json.loads(handler.dumps({"seed": 0}))
        assert document["schema"] == 1
        assert document["verdict"] == PASSED
        assert document["parameters"] == {"seed": 0}
        assert handler.dumps({"seed": 0}) == handler.dumps({"seed": 0})

    def test_text(self):
        """One header line and one line per report, witnesses included."""
        handler = ResultHandler("signs")
        handler.add(Report("signs", 5).fail({"tree": [[1]]}))
        lines = handler.text().splitlines()
        assert lines[0].startswith("signs: FAILED")
        assert lines[1] == '  signs n=5 FAILED witness={"tree": [[1]]}'
