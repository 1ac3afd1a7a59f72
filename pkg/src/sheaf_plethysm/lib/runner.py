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
"""Verification suite runner."""
import logging

from .combinat import check_axioms_A1_A5
from .equirep import shlog_sheaves, tree_formula_sheaf, verify_character_lemma
from .executor import Executor
from .mainthm import MainPipeline
from .random_data import (
    make_rng,
    random_local_datum,
    random_point_sheaves,
    random_presented,
    random_system,
)
from .report import Report, ResultHandler
from .run_parameters import ParameterError
from .serialization import system_to_dict
from .stratsys import verify_strictify
from .treecx import (
    check_d_squared,
    check_equivariance,
    check_logformula,
    check_psi_monotone,
    psi_matching,
    sign_identity_check,
    two_block_partitions,
)

SUITES = (
    "d2",
    "equivariance",
    "signs",
    "logformula",
    "psi",
    "axioms",
    "charlemma",
    "strictify",
    "main",
)
# suite -> (default largest n, largest allowed n)
SIZE_BOUNDS = {
    "d2": (5, 7),
    "equivariance": (4, 6),
    "signs": (4, 5),
    "logformula": (6, 8),
    "psi": (5, 7),
    "axioms": (5, 6),
    "strictify": (3, 4),
    "main": (4, 5),
}
DEFAULT_CASES = {"charlemma": 10, "strictify": 10, "main": 5}
CHARLEMMA_ORDER = (4, 6)
KCLASS_LIMIT = 4
LITERAL_SIGN_LIMIT = 4


class SuiteRunner:
    """Split a suite into independent cases, run them and collect the reports."""

    logger = logging.getLogger("SP - Runner")

    def __init__(self, params):
        """Initialize.

        :param params: Parameters of this run.
        :type params: :obj:`sheaf_plethysm.lib.run_parameters.RunParameters`
        """
        self.params = params
        self.executor = Executor(params.workers)
        self.defaults_only = False

    def _size(self, suite):
        default, limit = SIZE_BOUNDS[suite]
        if self.defaults_only:
            return default
        value = self.params.n_max if suite == "main" else self.params.n
        value = default if value is None else value
        if value > limit:
            raise ParameterError(
                "{} supports n up to {}, got {}".format(suite, limit, value), "n", value
            )
        return value

    def _cases(self, suite):
        return self.params.cases or DEFAULT_CASES[suite]

    def cases_d2(self):
        """Formal d^2 = 0 for every n up to the bound."""
        return [
            ("d2 n={}".format(n), lambda n=n: [check_d_squared(n)])
            for n in range(1, self._size("d2") + 1)
        ]

    def cases_equivariance(self):
        """Sign equivariance of every contraction."""
        return [
            ("equivariance n={}".format(n), lambda n=n: [check_equivariance(n)])
            for n in range(1, self._size("equivariance") + 1)
        ]

    def cases_signs(self):
        """Gluing sign identity, the literal form only where it holds."""
        cases = []
        for n in range(1, self._size("signs") + 1):
            def case(n=n):
                reports = [sign_identity_check(n, corrected=True)]
                if n <= LITERAL_SIGN_LIMIT:
                    reports.append(sign_identity_check(n, corrected=False))
                return reports
            cases.append(("signs n={}".format(n), case))
        return cases

    def _kclass(self, n):
        report = Report("kclass", n)
        factors = random_point_sheaves(
            make_rng(self.params.seed, n), n, self.params.variables, self.params.dims
        )
        trees = tree_formula_sheaf(factors, n, self.params.variables).kclass()
        inductive = shlog_sheaves(factors, n, self.params.variables)[n].kclass()
        if trees != inductive:
            report.fail({"trees": repr(trees), "inductive": repr(inductive)})
        return report

    def cases_logformula(self):
        """Tree formula against the inductive shLog, as multisets and K-classes."""
        cases = []
        for n in range(1, self._size("logformula") + 1):
            def case(n=n):
                reports = [check_logformula(n)]
                if n <= KCLASS_LIMIT:
                    reports.append(self._kclass(n))
                return reports
            cases.append(("logformula n={}".format(n), case))
        return cases

    def cases_psi(self):
        """Monotonicity and the perfect matching for both block orientations."""
        cases = []
        for n in range(2, self._size("psi") + 1):
            for swap in (False, True):
                def case(n=n, swap=swap):
                    reports = [check_psi_monotone(n, swap)]
                    reports.extend(
                        psi_matching(n, partition, swap)
                        for partition in two_block_partitions(n)
                    )
                    return reports
                cases.append(("psi n={} swap={}".format(n, swap), case))
        return cases

    def cases_axioms(self):
        """A1 to A5 for the set-partition model."""
        return [
            ("axioms n={}".format(n), lambda n=n: [check_axioms_A1_A5(n)])
            for n in range(1, self._size("axioms") + 1)
        ]

    def cases_charlemma(self):
        """Character lemma on random presented classes."""
        default, limit = CHARLEMMA_ORDER
        order = self.params.order
        if order is None or self.defaults_only:
            order = default
        if order > limit:
            raise ParameterError(
                "charlemma supports order up to {}, got {}".format(limit, order),
                "order",
                order,
            )
        cases = []
        for index in range(self._cases("charlemma")):
            def case(index=index):
                presented = random_presented(
                    make_rng(self.params.seed, index),
                    order,
                    self.params.variables,
                    self.params.dims,
                )
                return [verify_character_lemma(presented, {"case": index})]
            cases.append(("charlemma case={}".format(index), case))
        return cases

    def cases_strictify(self):
        """Strictification of random equivariant systems."""
        n = self._size("strictify")
        cases = []
        for index in range(self._cases("strictify")):
            def case(index=index):
                system = random_system(
                    make_rng(self.params.seed, index),
                    n,
                    self.params.points,
                    self.params.dims,
                    self.params.variables,
                )
                report = verify_strictify(system, {"case": index})
                if not report.passed:
                    report.witness = dict(report.witness, system=system_to_dict(system))
                return [report]
            cases.append(("strictify case={}".format(index), case))
        return cases

    def cases_main(self):
        """The pipeline from random local data to the main identity."""
        n_max = self._size("main")
        cases = []
        for index in range(self._cases("main")):
            def case(index=index):
                datum = random_local_datum(
                    make_rng(self.params.seed, index),
                    self.params.points,
                    self.params.dims,
                    self.params.variables,
                    n_max,
                )
                return MainPipeline(datum, n_max, {"case": index}).run()
            cases.append(("main case={}".format(index), case))
        return cases

    def cases(self, suite):
        """All cases of a suite, in a fixed order.

        :raises ParameterError: For unknown suites and out-of-range sizes.
        """
        if suite == "all":
            self.defaults_only = True
            try:
                return [case for name in SUITES for case in self.cases(name)]
            finally:
                self.defaults_only = False
        if suite not in SUITES:
            raise ParameterError("Unknown suite {!r}".format(suite), "suite", suite)
        return getattr(self, "cases_{}".format(suite))()

    def run(self, suite):
        """Run a suite.

        :param suite: Suite name or 'all'.
        :type suite: str
        :return: Handler holding every report in case order.
        :rtype: :obj:`sheaf_plethysm.lib.report.ResultHandler`
        """
        cases = self.cases(suite)
        self.logger.info(
            "Suite %s: %d cases on %d workers.", suite, len(cases), self.params.workers
        )
        handler = ResultHandler(suite)
        common = self.params.to_dict()
        for reports in self.executor.run_cases(cases):
            for report in reports:
                report.parameters = dict(common, **report.parameters)
                handler.add(report)
        return handler
