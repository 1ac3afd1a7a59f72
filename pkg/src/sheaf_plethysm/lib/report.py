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
"""Verification reports and their aggregation."""
import json
import logging

SCHEMA = 1
PASSED = "PASSED"
FAILED = "FAILED"
INCONCLUSIVE = "INCONCLUSIVE"


class Report:
    """Outcome of one verification check.

    Failures are values, not exceptions: a failed report carries the first
    counterexample in ``witness``.
    """

    def __init__(  # pylint:disable=too-many-arguments
        self, check, n=None, parameters=None, status=PASSED, witness=None, details=None
    ):
        """Verification report.

        :param check: Name of the check.
        :type check: str
        :param n: Size parameter, if any.
        :type n: int
        :param parameters: Parameters the check ran with.
        :type parameters: dict
        :param status: PASSED or FAILED.
        :type status: str
        :param witness: First counterexample for a failure.
        :type witness: dict
        :param details: Additional statistics.
        :type details: dict
        """
        self.check = check
        self.n = n
        self.parameters = dict(parameters or {})
        self.status = status
        self.witness = witness
        self.details = dict(details or {})

    @property
    def passed(self):
        """Whether the check passed."""
        return self.status == PASSED

    def fail(self, witness):
        """Mark as failed with a witness, keeping the first one.

        :return: This report.
        :rtype: :obj:`Report`
        """
        if self.status != FAILED:
            self.status = FAILED
            self.witness = witness
        return self

    def to_dict(self):
        """JSON-ready dictionary."""
        return {
            "check": self.check,
            "n": self.n,
            "parameters": self.parameters,
            "status": self.status,
            "witness": self.witness,
            "details": self.details,
        }

    def __repr__(self):
        return "Report({!r}, n={!r}, status={!r})".format(
            self.check, self.n, self.status
        )


class ResultHandler:
    """Collect reports from a suite and derive the overall verdict."""

    logger = logging.getLogger("SP - ResultHandler")

    def __init__(self, suite):
        """Result handler for one suite run.

        :param suite: Suite name.
        :type suite: str
        """
        self.suite = suite
        self.reports = []

    def add(self, report):
        """Record a report."""
        self.logger.info("%s: %s", report.check, report.status)
        if not report.passed:
            self.logger.warning("Witness for %s: %r", report.check, report.witness)
        self.reports.append(report)

    def extend(self, reports):
        """Record many reports in order."""
        for report in reports:
            self.add(report)

    @property
    def failures(self):
        """Iterate over all failed reports."""
        for report in self.reports:
            if not report.passed:
                yield report

    def test_results(self):
        """Verdict and description for the suite.

        :return: Verdict and description.
        :rtype: tuple
        """
        if not self.reports:
            return INCONCLUSIVE, "No checks were run."
        failures = list(self.failures)
        if failures:
            return FAILED, "{} of {} checks failed, first: {}".format(
                len(failures), len(self.reports), failures[0].check
            )
        return PASSED, "All {} checks passed.".format(len(self.reports))

    def to_dict(self, parameters=None):
        """Versioned JSON document for the suite."""
        verdict, description = self.test_results()
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "parameters": dict(parameters or {}),
            "verdict": verdict,
            "description": description,
            "reports": [report.to_dict() for report in self.reports],
        }

    def dumps(self, parameters=None):
        """Deterministic JSON text."""
        return json.dumps(self.to_dict(parameters), sort_keys=True, indent=2)

    def text(self):
        """Human readable summary, one line per report."""
        verdict, description = self.test_results()
        lines = ["{}: {} ({})".format(self.suite, verdict, description)]
        for report in self.reports:
            line = "  {} n={} {}".format(report.check, report.n, report.status)
            if report.witness is not None:
                line += " witness={}".format(json.dumps(report.witness, sort_keys=True))
            lines.append(line)
        return "\n".join(lines)
