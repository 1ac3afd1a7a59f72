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
"""The complexes G_n of a strict system, their cohomology and the main identity."""
import itertools
import logging
from fractions import Fraction

from . import linalg
from .coeffring import LaurentPoly, RatFun, format_ratfun
from .combinat import SetPartition, adjacent_transpositions, permutations
from .graded import (
    WeightedSpace,
    graded_image,
    graded_kernel,
    graded_quotient,
    graded_ranks,
    inclusion,
    invariant_basis,
    supertrace,
)
from .qseries import QSeries, plethystic_exp, plethystic_log
from .report import Report
from .stratsys import (
    StrictificationError,
    SystemAxiomError,
    act_point,
    assemble_strict,
    local_action,
    local_fiber,
    strictify,
    system_from_local_datum,
    validate_strict,
)
from .treecx import (
    act_tree,
    contractions_of,
    enumerate_trees,
    psi,
    sign_l,
    term_of,
    two_block_partitions,
)


class ComplexError(RuntimeError):
    """A constructed complex is not a complex or not equivariant."""

    def __init__(self, msg, point, trees=None):
        """Complex construction error.

        :param msg: Description.
        :type msg: str
        :param point: Point of X^n where it happened.
        :type point: tuple
        :param trees: Trees involved, if any.
        :type trees: list
        """
        self.point = point
        self.trees = trees
        super().__init__("{} at {}".format(msg, point))


class AcyclicityError(RuntimeError):
    """G_n has cohomology off the small diagonal."""

    def __init__(self, msg, point):
        """Acyclicity failure at a point."""
        self.point = point
        super().__init__("{} at {}".format(msg, point))


class PointComplex:
    """G_n at one point: terms C^k and differentials d^k: C^k -> C^{k-1}.

    Terms are stored without the shift by k; the shift enters only through
    the sign (-1)^k in Euler characteristics.
    """

    def __init__(self, point, terms, differentials, index=None):
        """Complex of weighted spaces.

        :param point: The point.
        :type point: tuple
        :param terms: Mapping k -> :obj:`WeightedSpace`.
        :type terms: dict
        :param differentials: Mapping k -> matrix C^k -> C^{k-1}.
        :type differentials: dict
        :param index: Mapping k -> {tree: offset of its summand}.
        :type index: dict
        """
        self.point = point
        self.terms = dict(terms)
        self.differentials = dict(differentials)
        self.index = dict(index or {})
        self.nvars = next(iter(self.terms.values())).nvars if self.terms else 0

    @property
    def degrees(self):
        """Degrees k carrying a term."""
        return sorted(self.terms)

    def term(self, k):
        """C^k, zero outside the stored degrees."""
        return self.terms.get(k) or WeightedSpace.zero(self.nvars)

    def differential(self, k):
        """d^k: C^k -> C^{k-1}."""
        mat = self.differentials.get(k)
        if mat is None:
            return linalg.zeros(self.term(k - 1).dim, self.term(k).dim)
        return mat

    def d_squared_failure(self):
        """First k with d^{k-1} d^k != 0, or None."""
        for k in self.degrees:
            if not linalg.is_zero(
                linalg.matmul(self.differential(k - 1), self.differential(k))
            ):
                return k
        return None

    def cohomology(self):
        """Cohomology H^k as weighted spaces, from ranks in every block."""
        result = {}
        for k in self.degrees:
            space = self.term(k)
            outgoing = graded_ranks(self.differential(k), space, self.term(k - 1))
            incoming = graded_ranks(self.differential(k + 1), self.term(k + 1), space)
            basis = []
            for label, indices in space.blocks().items():
                count = len(indices) - outgoing.get(label, 0) - incoming.get(label, 0)
                basis.extend([label] * count)
            result[k] = WeightedSpace(self.nvars, basis)
        return result

    def cohomology_basis(self, k):
        """Kernel basis, complement indices, projection and H^k as a space."""
        kernel, kernel_space = graded_kernel(
            self.differential(k), self.term(k), self.term(k - 1)
        )
        image, _ = graded_image(self.differential(k + 1), self.term(k + 1), self.term(k))
        relations = linalg.coordinates(kernel, image)
        indices, projection, quotient = graded_quotient(relations, kernel_space)
        return kernel, indices, projection, quotient

    def euler(self, spaces=None):
        """sum (-1)^k ch(spaces[k]), the terms by default."""
        spaces = self.terms if spaces is None else spaces
        total = LaurentPoly.zero(self.nvars)
        for k, space in spaces.items():
            character = space.character()
            total = total - character if k % 2 else total + character
        return total

    def is_exact(self):
        """Whether all cohomology vanishes."""
        return not any(space.dim for space in self.cohomology().values())


class GnComplex:
    """The complexes G_n built from a strict equivariant system.

    C^k(x) is the sum over trees T with k non-leaf nodes of F'_{A(T)}(x);
    d sums the signed ordinary and exceptional contraction terms.
    """

    logger = logging.getLogger("SP - GnComplex")

    def __init__(self, strict, check=True):
        """Complex of a strict system.

        :param strict: Strict equivariant system on X^n.
        :type strict: :obj:`StrictSystem`
        :param check: Verify d^2 = 0 at every point.
        :type check: bool
        :raises ComplexError: If d^2 does not vanish.
        """
        self.system = strict
        self.n = strict.n
        self.space = strict.space
        self.nvars = strict.nvars
        self.trees = enumerate_trees(self.n)
        self._partition = {tree: tree.leaves_partition() for tree in self.trees}
        self._outgoing = {
            tree: [(c, term_of(c)) for c in contractions_of(tree)] for tree in self.trees
        }
        self._cache = {}
        if check:
            self.check_d_squared()

    def at(self, point, trees=None):
        """The complex at a point, optionally restricted to a set of trees.

        :rtype: :obj:`PointComplex`
        """
        if trees is None and point in self._cache:
            return self._cache[point]
        allowed = None if trees is None else set(trees)
        terms, index = {}, {}
        for k in range(self.n):
            space = WeightedSpace.zero(self.nvars)
            index[k] = {}
            for tree in self.trees:
                if tree.k != k or (allowed is not None and tree not in allowed):
                    continue
                index[k][tree] = space.dim
                space = space.direct_sum(self.system.fiber(self._partition[tree], point))
            terms[k] = space
        differentials = {}
        for k in range(1, self.n):
            pieces = []
            for tree, column in index[k].items():
                for contraction, term in self._outgoing[tree]:
                    row = index[k - 1].get(contraction.target)
                    if row is None:
                        continue
                    block = self.system.phi(
                        term.source_partition, term.target_partition, point
                    )
                    pieces.append((row, column, linalg.scale(block, term.coefficient)))
            differentials[k] = linalg.block(terms[k - 1].dim, terms[k].dim, pieces)
        result = PointComplex(point, terms, differentials, index)
        if trees is None:
            self._cache[point] = result
        return result

    def check_d_squared(self, points=None):
        """Numeric d^2 = 0.

        :raises ComplexError: Naming the point and degree on failure.
        """
        for point in points or self.space.points:
            k = self.at(point).d_squared_failure()
            if k is not None:
                raise ComplexError("d^2 does not vanish in degree {}".format(k), point)
        self.logger.debug("d^2 = 0 at every point for n=%d", self.n)

    def action(self, sigma, k, point):
        """(-1)^{l(T, sigma)} rho_sigma summed over trees: C^k(x) -> C^k(sigma x)."""
        source = self.at(point)
        target = self.at(act_point(sigma, point))
        pieces = []
        for tree, column in source.index[k].items():
            moved = act_tree(sigma, tree)
            _, _, rho = self.system.rho(sigma, self._partition[tree], point)
            sign = -1 if sign_l(tree, sigma) % 2 else 1
            pieces.append((target.index[k][moved], column, linalg.scale(rho, sign)))
        return linalg.block(target.term(k).dim, source.term(k).dim, pieces)

    def check_equivariance(self, point, sigmas):
        """The action commutes with d.

        :raises ComplexError: On the first failing sigma and degree.
        """
        for sigma in sigmas:
            moved = act_point(sigma, point)
            for k in range(1, self.n):
                left = linalg.matmul(
                    self.action(sigma, k - 1, point), self.at(point).differential(k)
                )
                right = linalg.matmul(
                    self.at(moved).differential(k), self.action(sigma, k, point)
                )
                if not linalg.equal(left, right):
                    raise ComplexError(
                        "Action of {} does not commute with d in degree {}".format(
                            list(sigma.images), k
                        ),
                        point,
                    )

    def stabilizer_generators(self, point):
        """Generators of the stabilizer of a point."""
        if len(set(point)) == 1:
            return adjacent_transpositions(self.n)
        return [
            sigma
            for sigma in permutations(self.n)
            if not sigma.is_identity() and act_point(sigma, point) == point
        ]

    def stabilizer(self, point):
        """All permutations fixing the point."""
        return [sigma for sigma in permutations(self.n) if act_point(sigma, point) == point]


def pointwise_cohomology(cx, points=None):
    """Cohomology of G_n at every point.

    :return: Mapping point -> {k: :obj:`WeightedSpace`}.
    :rtype: dict
    """
    return {point: cx.at(point).cohomology() for point in points or cx.space.points}


def euler_conservation(cx, point):
    """Whether the Euler characteristics of terms and cohomology agree."""
    complex_ = cx.at(point)
    return complex_.euler() == complex_.euler(complex_.cohomology())


def cohomology_invariants(cx, point):
    """Invariants of the induced stabilizer action on H^k(x).

    :return: Mapping k -> :obj:`WeightedSpace`.
    :rtype: dict
    """
    complex_ = cx.at(point)
    generators = cx.stabilizer_generators(point)
    result = {}
    for k in complex_.degrees:
        kernel, indices, projection, quotient = complex_.cohomology_basis(k)
        representatives = linalg.matmul(kernel, inclusion(indices, kernel.shape[1]))
        induced = []
        for sigma in generators:
            moved = linalg.matmul(cx.action(sigma, k, point), representatives)
            induced.append(linalg.matmul(projection, linalg.coordinates(kernel, moved)))
        _, invariants = invariant_basis(quotient, induced)
        result[k] = invariants
    return result


def invariant_cohomology(cx, point):
    """Cohomology of the subcomplex of stabilizer invariants at a point.

    :return: Mapping k -> :obj:`WeightedSpace`.
    :rtype: dict
    """
    complex_ = cx.at(point)
    generators = cx.stabilizer_generators(point)
    bases, spaces = {}, {}
    for k in complex_.degrees:
        bases[k], spaces[k] = invariant_basis(
            complex_.term(k), [cx.action(sigma, k, point) for sigma in generators]
        )
    differentials = {}
    for k in complex_.degrees:
        if k - 1 not in bases:
            continue
        moved = linalg.matmul(complex_.differential(k), bases[k])
        differentials[k] = linalg.coordinates(bases[k - 1], moved)
    return PointComplex(point, spaces, differentials).cohomology()


def averaged_supertrace(cx, point):
    """(1/|H|) sum over the stabilizer H of the graded supertrace on the complex."""
    complex_ = cx.at(point)
    stabilizer = cx.stabilizer(point)
    total = LaurentPoly.zero(cx.nvars)
    for sigma in stabilizer:
        for k in complex_.degrees:
            value = supertrace(cx.action(sigma, k, point), complex_.term(k))
            total = total - value if k % 2 else total + value
    return total.scale(Fraction(1, len(stabilizer)))


class DiagonalSheaf:
    """H_n on the small diagonal with the invariants of its S_n-action."""

    def __init__(self, n, nvars, cohomology, invariants):
        """Diagonal sheaf.

        :param cohomology: Mapping point -> {k: H^k}.
        :type cohomology: dict
        :param invariants: Mapping point -> {k: (H^k)^{S_n}}.
        :type invariants: dict
        """
        self.n = n
        self.nvars = nvars
        self.cohomology = cohomology
        self.invariants = invariants

    def _euler(self, spaces):
        total = LaurentPoly.zero(self.nvars)
        for by_degree in spaces.values():
            for k, space in by_degree.items():
                total = total - space.character() if k % 2 else total + space.character()
        return total

    def character(self):
        """Euler characteristic of H_n over X."""
        return self._euler(self.cohomology)

    def en_character(self):
        """chi(X, E_n) with E_n the S_n-invariants of H_n."""
        return self._euler(self.invariants)


def extract_hn(cx):
    """H_n after verifying that G_n is exact off the small diagonal.

    Exactness is checked at one point of every S_n-orbit.

    :rtype: :obj:`DiagonalSheaf`
    :raises AcyclicityError: If cohomology survives off the diagonal.
    :raises ComplexError: If the invariant computations disagree.
    """
    diagonal = set(cx.space.diagonal())
    for point in cx.space.orbit_representatives():
        if point in diagonal:
            continue
        if not cx.at(point).is_exact():
            raise AcyclicityError("Nonzero cohomology off the diagonal", point)
    cohomology, invariants = {}, {}
    for point in cx.space.diagonal():
        cx.check_equivariance(point, cx.stabilizer_generators(point))
        cohomology[point] = cx.at(point).cohomology()
        invariants[point] = cohomology_invariants(cx, point)
        induced = PointComplex(point, invariants[point], {}).euler()
        subcomplex = PointComplex(point, invariant_cohomology(cx, point), {}).euler()
        if not induced == subcomplex == averaged_supertrace(cx, point):
            raise ComplexError("Invariant cohomology computations disagree", point)
    return DiagonalSheaf(cx.n, cx.nvars, cohomology, invariants)


def en(diagonal_sheaf):
    """chi(X, E_n) as a Laurent polynomial."""
    return diagonal_sheaf.en_character()


def filtration_check(cx, partition, swap=False):
    """The psi-filtration for a two-block partition B.

    No differential component increases psi, and every psi-level subcomplex
    is exact at every point of U_B.

    :rtype: :obj:`Report`
    """
    blocks = [list(members) for members in partition.block_members()]
    report = Report("filtration", cx.n, {"partition": blocks, "swap": swap})
    values = {tree: psi(tree, partition, swap) for tree in cx.trees}
    for tree in cx.trees:
        for contraction in contractions_of(tree):
            if values[tree] < values[contraction.target]:
                return report.fail(
                    {"tree": tree.to_list(), "target": contraction.target.to_list()}
                )
    levels = {}
    for tree in cx.trees:
        levels.setdefault(values[tree], []).append(tree)
    points = [point for point in cx.space.points if cx.space.in_open(point, partition)]
    for value in sorted(levels):
        for point in points:
            if not cx.at(point, levels[value]).is_exact():
                return report.fail(
                    {
                        "psi": value.to_dict(),
                        "point": list(point),
                        "trees": [tree.to_list() for tree in levels[value]],
                    }
                )
    report.details = {"levels": len(levels), "points": len(points)}
    return report


def lhs_series(datum, order):
    """1 + sum_n chi(Sym^n X, F_n) q^n by enumerating multisets of points.

    At a multiset x the invariants of F_{[n]}(x) under the stabilizer of x
    contribute their character.

    :rtype: :obj:`QSeries`
    """
    coefficients = [RatFun.one(datum.nvars)]
    for n in range(1, order + 1):
        top = SetPartition.one_block(n)
        total = LaurentPoly.zero(datum.nvars)
        for point in itertools.combinations_with_replacement(datum.labels, n):
            fiber = local_fiber(datum, top, point)
            operators = [
                local_action(datum, sigma, top, point)
                for sigma in permutations(n)
                if not sigma.is_identity() and act_point(sigma, point) == point
            ]
            _, invariants = invariant_basis(fiber, operators)
            total = total + invariants.character()
        coefficients.append(RatFun(total))
    return QSeries(order, coefficients, datum.nvars)


def en_oracle(datum, order):
    """sum over points p of Log(1 + sum_m ch(V'_{p,m}) q^m)."""
    total = QSeries.zero(order, datum.nvars)
    for label in datum.labels:
        total = total + plethystic_log(datum.series(label, order))
    return total


class MainPipeline:
    """Datum -> system -> strict system -> G_n -> H_n -> E_n, for n <= n_max."""

    logger = logging.getLogger("SP - Main")

    def __init__(self, datum, n_max, parameters=None):
        """Pipeline for one local datum.

        :param datum: Local datum.
        :type datum: :obj:`LocalDatum`
        :param n_max: Largest n, also the series order.
        :type n_max: int
        :param parameters: Parameters recorded in every report.
        :type parameters: dict
        """
        self.datum = datum
        self.n_max = n_max
        self.parameters = dict(parameters or {})
        self.en_series = None

    def complex_for(self, n):
        """G_n of the strictified system of the datum."""
        system = system_from_local_datum(self.datum, n)
        signed = strictify(system)
        strict = assemble_strict(signed, system.space, self.datum.nvars)
        validate_strict(strict)
        self.logger.info("Strict system for n=%d assembled from %d entries", n, len(signed))
        return GnComplex(strict)

    def _filtration(self, cx):
        report = Report("filtration", cx.n, self.parameters)
        levels = {}
        for partition in two_block_partitions(cx.n):
            single = filtration_check(cx, partition)
            if not single.passed:
                return report.fail(single.witness)
            levels[str(single.parameters["partition"])] = single.details["levels"]
        report.details = {"levels": levels}
        return report

    def _euler(self, cx):
        report = Report("euler", cx.n, self.parameters)
        for point in cx.space.orbit_representatives():
            if not euler_conservation(cx, point):
                return report.fail({"point": list(point)})
        return report

    def run(self):
        """Run every stage.

        :return: Reports for the complexes, the filtrations, acyclicity, the
            E_n oracle and the main identity, in that order.
        :rtype: list
        """
        reports = []
        nvars = self.datum.nvars
        coefficients = [RatFun.zero(nvars)]
        for n in range(1, self.n_max + 1):
            self.logger.info("Building G_%d", n)
            build = Report("gn", n, self.parameters)
            reports.append(build)
            try:
                cx = self.complex_for(n)
            except (ComplexError, SystemAxiomError, StrictificationError) as exception:
                build.fail({"error": str(exception)})
                coefficients.append(RatFun.zero(nvars))
                continue
            build.details = {
                "trees": len(cx.trees),
                "points": len(cx.space.points),
            }
            reports.append(self._euler(cx))
            if n >= 2:
                reports.append(self._filtration(cx))
            acyclic = Report("acyclicity", n, self.parameters)
            reports.append(acyclic)
            try:
                diagonal = extract_hn(cx)
            except (AcyclicityError, ComplexError) as exception:
                acyclic.fail({"error": str(exception), "point": list(exception.point)})
                coefficients.append(RatFun.zero(nvars))
                continue
            coefficients.append(RatFun(en(diagonal)))
        self.en_series = QSeries(self.n_max, coefficients, nvars)
        reports.append(self._oracle())
        reports.append(self._main())
        return reports

    def _oracle(self):
        report = Report("en-oracle", self.n_max, self.parameters)
        oracle = en_oracle(self.datum, self.n_max)
        index = self.en_series.first_difference(oracle)
        if index is not None:
            report.fail(
                {
                    "order": index,
                    "pipeline": format_ratfun(self.en_series[index]),
                    "oracle": format_ratfun(oracle[index]),
                }
            )
        return report

    def _main(self):
        report = Report("main", self.n_max, self.parameters)
        lhs = lhs_series(self.datum, self.n_max)
        rhs = plethystic_exp(self.en_series)
        index = lhs.first_difference(rhs)
        if index is not None:
            report.fail(
                {
                    "order": index,
                    "lhs": format_ratfun(lhs[index]),
                    "rhs": format_ratfun(rhs[index]),
                    "datum": self.datum.to_dict(),
                }
            )
        report.details = {"lhs": [format_ratfun(c) for c in lhs.coefficients]}
        return report


def verify_main(datum, n_max, parameters=None):
    """Check 1 + sum chi(Sym^n X, F_n) q^n = Exp(sum chi(X, E_n) q^n).

    :rtype: :obj:`Report`
    """
    return MainPipeline(datum, n_max, parameters).run()[-1]
