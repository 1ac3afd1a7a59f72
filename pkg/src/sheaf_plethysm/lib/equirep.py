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
"""Equivariant sheaves on finite S-sets, their characters and localised classes.

A :obj:`WeightedSheaf` is carried by an explicit finite set with an action of
a subgroup of S_n. It stores one weighted space per point and one matrix per
(group element, point). Everything else in this module is linear algebra on
those tables.
"""
import itertools
import logging
from fractions import Fraction
from math import factorial

from . import linalg
from .coeffring import LaurentPoly, RatFun
from .combinat import (
    IntPartition,
    Permutation,
    act_partition,
    block_images,
    canonical_partition,
    count_cycle_type,
    cycle_type,
    enumerate_int_partitions,
    enumerate_set_partitions,
    members_of,
    permutations,
    restricted_permutation,
    young_subgroup,
)
from .graded import (
    WeightedSpace,
    check_homogeneous,
    invariant_basis,
    supertrace,
    tensor_all,
)
from .qseries import QSeries, plethystic_exp
from .report import Report
from .treecx import act_tree, enumerate_trees, sign_l

LOGGER = logging.getLogger(__name__)


class CocycleError(ValueError):
    """Stored action matrices do not form an action."""

    def __init__(self, msg, element, point):
        """Initialize with the offending group element and point."""
        self.element = element
        self.point = point
        super().__init__(msg)


class UnitFailure(ArithmeticError):
    """A localised class that must be a unit has a vanishing trace."""


class CarrierMismatch(ValueError):
    """Two sheaves do not live on the same S-set."""


def generating_set(elements):
    """Greedy generating set of a finite permutation group.

    :param elements: All elements of the group.
    :type elements: iterable
    :return: Generators in the order they were picked.
    :rtype: list
    """
    elements = sorted(elements)
    if not elements:
        return []
    generated = {Permutation.identity(elements[0].n)}
    generators = []
    for element in elements:
        if element in generated:
            continue
        generators.append(element)
        frontier = list(generated)
        while frontier:
            new = []
            for known in frontier:
                for generator in generators:
                    product = generator * known
                    if product not in generated:
                        generated.add(product)
                        new.append(product)
            frontier = new
    return generators


class WeightedSheaf:  # pylint:disable=too-many-instance-attributes
    """Discrete model of a torus and S-equivariant sheaf.

    The group is a subgroup of S_n given by all its elements. ``image`` maps
    (sigma, point) to sigma(point) and ``maps`` holds the matrix
    fiber(point) -> fiber(sigma(point)).
    """

    def __init__(  # pylint:disable=too-many-arguments
        self, n, elements, points, fibers, image, maps, nvars, check=True
    ):
        """Equivariant sheaf.

        :param n: Degree of the ambient symmetric group.
        :type n: int
        :param elements: Elements of the acting subgroup.
        :type elements: iterable
        :param points: Points of the carrier.
        :type points: iterable
        :param fibers: Mapping point -> :obj:`WeightedSpace`.
        :type fibers: dict
        :param image: Mapping (sigma, point) -> point.
        :type image: dict
        :param maps: Mapping (sigma, point) -> matrix.
        :type maps: dict
        :param nvars: Number of torus variables.
        :type nvars: int
        :param check: Validate the action on construction.
        :type check: bool
        :raises CocycleError: If the matrices do not define an action.
        """
        self.n = n
        self.elements = tuple(sorted(elements))
        self.points = tuple(points)
        self.fibers = dict(fibers)
        self.image = dict(image)
        self.maps = dict(maps)
        self.nvars = nvars
        self._members = frozenset(self.elements)
        self._generators = None
        if check:
            self.validate()

    @property
    def generators(self):
        """Generating set of the acting group."""
        if self._generators is None:
            self._generators = generating_set(self.elements)
        return self._generators

    def validate(self):
        """Check identity, homogeneity and the cocycle law.

        The cocycle law is checked for generators on the left, which implies
        it for all pairs.

        :raises CocycleError: On the first violation.
        """
        identity = Permutation.identity(self.n)
        members = self._members
        if identity not in members:
            raise CocycleError("Group does not contain the identity", identity, None)
        for point in self.points:
            if self.image[identity, point] != point:
                raise CocycleError("Identity moves a point", identity, point)
            if not linalg.equal(
                self.maps[identity, point], linalg.identity(self.fibers[point].dim)
            ):
                raise CocycleError("Identity acts non-trivially", identity, point)
        for (sigma, point), mat in self.maps.items():
            try:
                check_homogeneous(
                    mat, self.fibers[point], self.fibers[self.image[sigma, point]]
                )
            except ValueError as exception:
                raise CocycleError(str(exception), sigma, point) from exception
        for sigma in self.generators:
            for tau in self.elements:
                product = sigma * tau
                if product not in members:
                    raise CocycleError("Group is not closed", product, None)
                for point in self.points:
                    moved = self.image[tau, point]
                    if self.image[product, point] != self.image[sigma, moved]:
                        raise CocycleError("Point action is not an action", product, point)
                    composite = linalg.matmul(
                        self.maps[sigma, moved], self.maps[tau, point]
                    )
                    if not linalg.equal(composite, self.maps[product, point]):
                        raise CocycleError(
                            "Cocycle law fails for {} * {}".format(sigma, tau),
                            product,
                            point,
                        )

    def is_full(self):
        """Whether the acting group is all of S_n."""
        return len(self.elements) == factorial(self.n)

    def dim(self):
        """Total dimension over all points."""
        return sum(self.fibers[p].dim for p in self.points)

    def trace(self, sigma):
        """Graded trace of sigma as a Laurent polynomial.

        :raises ValueError: If sigma is not in the group.
        """
        if sigma not in self._members:
            raise ValueError("{} is not in the acting group".format(sigma))
        total = LaurentPoly.zero(self.nvars)
        for point in self.points:
            if self.image[sigma, point] == point:
                total = total + supertrace(self.maps[sigma, point], self.fibers[point])
        return total

    def character(self):
        """Graded character of the underlying space."""
        total = LaurentPoly.zero(self.nvars)
        for point in self.points:
            total = total + self.fibers[point].character()
        return total

    def kclass(self):
        """Trace at one representative of every cycle type.

        :raises ValueError: If the group is not all of S_n.
        """
        if not self.is_full():
            raise ValueError("Class functions need the full symmetric group")
        return ClassFunction(
            self.n,
            {
                shape: RatFun(self.trace(shape.representative()))
                for shape in enumerate_int_partitions(self.n)
            },
            self.nvars,
        )

    def _same_carrier(self, other):
        if (
            self.n != other.n
            or self.elements != other.elements
            or self.points != other.points
            or any(self.image[k] != other.image[k] for k in self.image)
        ):
            raise CarrierMismatch("Sheaves live on different S-sets")

    def shift(self, amount=1):
        """Parity shift of every fiber."""
        return WeightedSheaf(
            self.n,
            self.elements,
            self.points,
            {p: space.shift(amount) for p, space in self.fibers.items()},
            self.image,
            self.maps,
            self.nvars,
            check=False,
        )

    def twist(self, weight):
        """Tensor with an even line of the given weight."""
        return WeightedSheaf(
            self.n,
            self.elements,
            self.points,
            {p: space.twist(weight) for p, space in self.fibers.items()},
            self.image,
            self.maps,
            self.nvars,
            check=False,
        )

    def direct_sum(self, other):
        """Fiberwise direct sum on a common carrier.

        :raises CarrierMismatch: If the carriers differ.
        """
        self._same_carrier(other)
        maps = {}
        for key, mat in self.maps.items():
            second = other.maps[key]
            maps[key] = linalg.block(
                mat.shape[0] + second.shape[0],
                mat.shape[1] + second.shape[1],
                [(0, 0, mat), (mat.shape[0], mat.shape[1], second)],
            )
        return WeightedSheaf(
            self.n,
            self.elements,
            self.points,
            {p: self.fibers[p].direct_sum(other.fibers[p]) for p in self.points},
            self.image,
            maps,
            self.nvars,
            check=False,
        )

    def tensor(self, other):
        """Fiberwise tensor product on a common carrier.

        :raises CarrierMismatch: If the carriers differ.
        """
        self._same_carrier(other)
        return WeightedSheaf(
            self.n,
            self.elements,
            self.points,
            {p: self.fibers[p].tensor(other.fibers[p]) for p in self.points},
            self.image,
            {key: linalg.kron(mat, other.maps[key]) for key, mat in self.maps.items()},
            self.nvars,
            check=False,
        )

    def restrict(self, elements):
        """Restriction to a subgroup.

        :raises ValueError: If some element is not in the group.
        """
        elements = tuple(elements)
        if not set(elements) <= set(self.elements):
            raise ValueError("Restriction needs a subgroup")
        return WeightedSheaf(
            self.n,
            elements,
            self.points,
            self.fibers,
            {k: v for k, v in self.image.items() if k[0] in set(elements)},
            {k: v for k, v in self.maps.items() if k[0] in set(elements)},
            self.nvars,
        )

    def at_point(self, point):
        """The fiber at one point as a sheaf over its stabilizer."""
        stabilizer = [g for g in self.elements if self.image[g, point] == point]
        return WeightedSheaf(
            self.n,
            stabilizer,
            (point,),
            {point: self.fibers[point]},
            {(g, point): point for g in stabilizer},
            {(g, point): self.maps[g, point] for g in stabilizer},
            self.nvars,
        )

    def orbits(self):
        """Orbits of the carrier, each listed from its first point."""
        seen = set()
        orbits = []
        for point in self.points:
            if point in seen:
                continue
            orbit = sorted(
                {self.image[g, point] for g in self.elements}, key=self.points.index
            )
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def invariants(self):
        """Invariant sections as a weighted space.

        Computed orbit by orbit as the fixed space of the stabilizer of the
        first point.

        :rtype: :obj:`WeightedSpace`
        """
        result = WeightedSpace.zero(self.nvars)
        for orbit in self.orbits():
            point = orbit[0]
            stabilizer = [g for g in self.elements if self.image[g, point] == point]
            operators = [self.maps[g, point] for g in generating_set(stabilizer)]
            _, space = invariant_basis(self.fibers[point], operators)
            result = result.direct_sum(space)
        return result

    def __repr__(self):
        return "WeightedSheaf(n={}, |G|={}, points={}, dim={})".format(
            self.n, len(self.elements), len(self.points), self.dim()
        )


def point_sheaf(n, space, matrix_of, elements=None):
    """Sheaf on a single point from a representation of the group.

    :param n: Degree.
    :type n: int
    :param space: The fiber.
    :type space: :obj:`WeightedSpace`
    :param matrix_of: Function sigma -> matrix on the fiber.
    :type matrix_of: callable
    :param elements: Group elements, all of S_n by default.
    :type elements: iterable
    """
    elements = tuple(elements or permutations(n))
    return WeightedSheaf(
        n,
        elements,
        ("*",),
        {"*": space},
        {(g, "*"): "*" for g in elements},
        {(g, "*"): matrix_of(g) for g in elements},
        space.nvars,
    )


def trivial_sheaf(space, n, elements=None):
    """The space with the trivial action."""
    return point_sheaf(n, space, lambda _: linalg.identity(space.dim), elements)


def sign_sheaf(n, nvars, weight=None, parity=0):
    """The sign representation on a line."""
    return point_sheaf(
        n,
        WeightedSpace.line(nvars, weight, parity),
        lambda g: linalg.from_entries(1, 1, {(0, 0): g.sign()}),
    )


def permutation_sheaf(n, nvars, weight=None, parity=0):
    """The defining permutation representation, all of one weight and parity."""
    space = WeightedSpace(nvars, [(weight or (0,) * nvars, parity)] * n)
    return point_sheaf(
        n,
        space,
        lambda g: linalg.from_entries(n, n, {(g(i) - 1, i - 1): 1 for i in range(1, n + 1)}),
    )


def disjoint_union(sheaves, tags=None):
    """Sheaf on the disjoint union of the carriers; points become (tag, point).

    :raises CarrierMismatch: If the groups differ.
    """
    sheaves = list(sheaves)
    tags = list(tags if tags is not None else range(len(sheaves)))
    first = sheaves[0]
    points, fibers, image, maps = [], {}, {}, {}
    for tag, sheaf in zip(tags, sheaves):
        if sheaf.n != first.n or sheaf.elements != first.elements:
            raise CarrierMismatch("Disjoint union needs a common group")
        for point in sheaf.points:
            points.append((tag, point))
            fibers[tag, point] = sheaf.fibers[point]
        for (g, point), target in sheaf.image.items():
            image[g, (tag, point)] = (tag, target)
            maps[g, (tag, point)] = sheaf.maps[g, point]
    return WeightedSheaf(
        first.n, first.elements, points, fibers, image, maps, first.nvars, check=False
    )


def _check_subgroup(elements):
    members = set(elements)
    for first in members:
        for second in members:
            if first * second not in members:
                raise ValueError("{} is not closed under composition".format(sorted(members)))


def induce(sheaf, check=True):
    """Induce a sheaf over a subgroup H of S_n to all of S_n.

    The carrier becomes S_n x_H points, indexed by (coset index, point),
    with cosets represented by their smallest element.

    :raises ValueError: If the group is not closed under composition.
    """
    n = sheaf.n
    if check:
        _check_subgroup(sheaf.elements)
    representatives = []
    coset_of = {}
    for g in permutations(n):
        if g in coset_of:
            continue
        for h in sheaf.elements:
            coset_of[g * h] = len(representatives)
        representatives.append(g)
    inverses = [g.inverse() for g in representatives]
    points = [(r, p) for r in range(len(representatives)) for p in sheaf.points]
    image, maps = {}, {}
    for sigma in permutations(n):
        for r, g in enumerate(representatives):
            moved = sigma * g
            target = coset_of[moved]
            h = inverses[target] * moved
            for p in sheaf.points:
                image[sigma, (r, p)] = (target, sheaf.image[h, p])
                maps[sigma, (r, p)] = sheaf.maps[h, p]
    return WeightedSheaf(
        n,
        permutations(n),
        points,
        {(r, p): sheaf.fibers[p] for r, p in points},
        image,
        maps,
        sheaf.nvars,
        check=check,
    )


def block_tensor_matrix(spaces, positions, factor_maps):
    """Map of tensor products that permutes the factors with Koszul signs.

    Factor a of the source is sent by ``factor_maps[a]`` into factor
    ``positions[a]`` of the target. Swapping two odd vectors contributes -1.

    :param spaces: Source factor spaces.
    :type spaces: list
    :param positions: Target position of each source factor.
    :type positions: list
    :param factor_maps: One square-shaped matrix per factor.
    :type factor_maps: list
    :return: Matrix from the source to the target tensor product.
    :rtype: :obj:`DomainMatrix`
    """
    count = len(spaces)
    dims = [space.dim for space in spaces]
    target_dims = [0] * count
    for a, position in enumerate(positions):
        target_dims[position] = factor_maps[a].shape[0]
    strides = [1] * count
    for position in range(count - 2, -1, -1):
        strides[position] = strides[position + 1] * target_dims[position + 1]
    swapped = [
        (a, b)
        for a in range(count)
        for b in range(a + 1, count)
        if positions[a] > positions[b]
    ]
    columns = []
    for mat in factor_maps:
        column = {}
        for (row, col), value in linalg.entries(mat).items():
            column.setdefault(col, []).append((row, value))
        columns.append(column)
    entries = {}
    total_target = 1
    for dim in target_dims:
        total_target *= dim
    for source_index, source in enumerate(itertools.product(*[range(d) for d in dims])):
        parities = [spaces[a].basis[i][1] for a, i in enumerate(source)]
        sign = -1 if sum(parities[a] * parities[b] for a, b in swapped) % 2 else 1
        options = [columns[a].get(i, []) for a, i in enumerate(source)]
        for choice in itertools.product(*options):
            value = Fraction(sign)
            target_index = 0
            for a, (row, entry) in enumerate(choice):
                value *= entry
                target_index += row * strides[positions[a]]
            entries[target_index, source_index] = (
                entries.get((target_index, source_index), 0) + value
            )
    total_source = 1
    for dim in dims:
        total_source *= dim
    return linalg.from_entries(total_target, total_source, entries)


def tensor_sheaf(  # pylint:disable=too-many-arguments,too-many-locals
    n, keys, partition_of, act_key, factors, nvars, sign_of=None, shift_of=None,
    elements=None,
):
    """Sheaf over S_n whose fiber at (key, points) is a tensor of factor fibers.

    Each key carries a set partition; block A contributes a fiber of the
    factor sheaf of degree |A| at the chosen point. sigma sends block A to
    sigma(A) and acts on that factor through the permutation induced on A.

    :param n: Degree.
    :type n: int
    :param keys: Keys closed under the group; partitions or trees.
    :type keys: list
    :param partition_of: Key -> :obj:`SetPartition`.
    :type partition_of: callable
    :param act_key: (sigma, key) -> key.
    :type act_key: callable
    :param factors: Mapping m -> sheaf over S_m.
    :type factors: dict
    :param nvars: Number of torus variables.
    :type nvars: int
    :param sign_of: (key, sigma) -> +1 or -1, an extra sign on the action.
    :type sign_of: callable
    :param shift_of: Key -> parity shift of the fiber.
    :type shift_of: callable
    :param elements: Group elements, all of S_n by default.
    :type elements: iterable
    """
    elements = tuple(elements or permutations(n))
    points, fibers, image, maps = [], {}, {}, {}
    by_key = {}
    for key in keys:
        partition = partition_of(key)
        sizes = [len(members_of(block)) for block in partition.blocks]
        for choice in itertools.product(*[factors[size].points for size in sizes]):
            point = (key, choice)
            points.append(point)
            by_key.setdefault(key, []).append(point)
            space = tensor_all(
                [factors[size].fibers[p] for size, p in zip(sizes, choice)], nvars
            )
            fibers[point] = space.shift(shift_of(key)) if shift_of else space
    for sigma in elements:
        for key in keys:
            partition = partition_of(key)
            target_key = act_key(sigma, key)
            positions = block_images(sigma, partition)
            restricted = [restricted_permutation(sigma, b) for b in partition.blocks]
            sign = sign_of(key, sigma) if sign_of else 1
            sizes = [len(members_of(block)) for block in partition.blocks]
            for point in by_key.get(key, []):
                choice = point[1]
                target_choice = [None] * len(choice)
                factor_maps = []
                spaces = []
                for a, (size, p) in enumerate(zip(sizes, choice)):
                    factor = factors[size]
                    target_choice[positions[a]] = factor.image[restricted[a], p]
                    factor_maps.append(factor.maps[restricted[a], p])
                    spaces.append(factor.fibers[p])
                image[sigma, point] = (target_key, tuple(target_choice))
                mat = block_tensor_matrix(spaces, positions, factor_maps)
                maps[sigma, point] = linalg.scale(mat, sign)
    return WeightedSheaf(n, elements, points, fibers, image, maps, nvars)


def f_lambda(factors, shape, nvars):
    """F_lambda: the sum of F_A over all set partitions A of type lambda.

    :param factors: Mapping m -> sheaf over S_m.
    :type factors: dict
    :param shape: Integer partition of n.
    :type shape: :obj:`IntPartition`
    :param nvars: Number of torus variables.
    :type nvars: int
    :raises ValueError: If a factor of a needed degree is missing.
    """
    n = shape.size
    missing = [m for m in set(shape) if m not in factors]
    if missing:
        raise ValueError("No factor sheaf of degree {}".format(missing))
    keys = [p for p in enumerate_set_partitions(n) if p.shape() == shape]
    return tensor_sheaf(
        n, keys, lambda key: key, act_partition, factors, nvars
    )


def sh_exp_coefficient(factors, n, nvars):
    """Degree n part of shExp: the union of F_lambda over all lambda of n."""
    shapes = enumerate_int_partitions(n)
    return disjoint_union(
        [f_lambda(factors, shape, nvars) for shape in shapes],
        [shape.parts for shape in shapes],
    )


def shlog_sheaves(factors, order, nvars):
    """Inductive shLog: G_n = F_n + (sum of G_lambda over lambda != (n))[1].

    :param factors: Mapping m -> sheaf F_m over S_m for m = 1..order.
    :type factors: dict
    :return: Mapping m -> G_m.
    :rtype: dict
    """
    logarithm = {}
    for n in range(1, order + 1):
        pieces = [factors[n]]
        tags = ["F"]
        for shape in enumerate_int_partitions(n):
            if len(shape) == 1:
                continue
            pieces.append(f_lambda(logarithm, shape, nvars).shift())
            tags.append(shape.parts)
        logarithm[n] = disjoint_union(pieces, tags)
        LOGGER.debug("shLog degree %d has dimension %d", n, logarithm[n].dim())
    return logarithm


def tree_formula_sheaf(factors, n, nvars):
    """Sum over index trees T of F_{A(T)}[|P(T)|] with the signs (-1)^l(T, sigma).

    :param factors: Mapping m -> sheaf over S_m for m = 1..n.
    :type factors: dict
    """
    return tensor_sheaf(
        n,
        enumerate_trees(n),
        lambda tree: tree.leaves_partition(),
        act_tree,
        factors,
        nvars,
        sign_of=lambda tree, sigma: -1 if sign_l(tree, sigma) % 2 else 1,
        shift_of=lambda tree: len(tree.internal_labels()),
    )


class ClassFunction:
    """Function on the cycle types of S_n with rational function values."""

    def __init__(self, n, values, nvars):
        """Class function.

        :param n: Degree.
        :type n: int
        :param values: Mapping IntPartition -> RatFun; missing types are zero.
        :type values: dict
        :param nvars: Number of torus variables.
        :type nvars: int
        """
        self.n = n
        self.nvars = nvars
        self.values = {
            shape: values.get(shape, RatFun.zero(nvars))
            for shape in enumerate_int_partitions(n)
        }

    @classmethod
    def zero(cls, n, nvars):
        """The zero class function."""
        return cls(n, {}, nvars)

    def __getitem__(self, shape):
        return self.values[shape]

    def __add__(self, other):
        return ClassFunction(
            self.n, {k: v + other.values[k] for k, v in self.values.items()}, self.nvars
        )

    def __sub__(self, other):
        return ClassFunction(
            self.n, {k: v - other.values[k] for k, v in self.values.items()}, self.nvars
        )

    def invariant(self):
        """Trace of the invariant part: the average over S_n."""
        total = RatFun.zero(self.nvars)
        for shape, value in self.values.items():
            if not value.is_zero():
                total = total + value * count_cycle_type(shape)
        return total * Fraction(1, factorial(self.n))

    def is_zero(self):
        """Whether every value vanishes."""
        return all(value.is_zero() for value in self.values.values())

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.n == other.n
            and all(v == other.values[k] for k, v in self.values.items())
        )

    def __hash__(self):
        return hash((self.n, tuple(self.values)))

    def __repr__(self):
        return "ClassFunction({}, {})".format(
            self.n, {k.parts: str(v) for k, v in self.values.items()}
        )


class KClassSeries:
    """Class functions alpha_1..alpha_N, entry n over S_n."""

    def __init__(self, order, entries, nvars):
        """Series of class functions; missing entries are zero."""
        self.order = order
        self.nvars = nvars
        self.entries = {
            n: entries.get(n, ClassFunction.zero(n, nvars)) for n in range(1, order + 1)
        }

    def __getitem__(self, n):
        return self.entries[n]

    def invariant_series(self, constant=0):
        """Series sum tr(alpha_n^{S_n}) q^n with the given constant term."""
        coefficients = [RatFun.from_int(constant, self.nvars)]
        coefficients += [self.entries[n].invariant() for n in range(1, self.order + 1)]
        return QSeries(self.order, coefficients, self.nvars)

    def __eq__(self, other):
        return (
            isinstance(other, KClassSeries)
            and self.order == other.order
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.order)


class PresentedClassSeries:
    """Localised classes alpha_m = [F_m]/[D] with one common denominator D.

    D is a weighted space pulled back from a point, so S_m acts on it
    trivially.
    """

    def __init__(self, order, denominator, numerators):
        """Presented series.

        :param order: Truncation order.
        :type order: int
        :param denominator: The space D.
        :type denominator: :obj:`WeightedSpace`
        :param numerators: Mapping m -> sheaf F_m over S_m; missing m are zero.
        :type numerators: dict
        """
        self.order = order
        self.denominator = denominator
        self.nvars = denominator.nvars
        self.numerators = {
            m: numerators.get(m) or trivial_sheaf(WeightedSpace.zero(self.nvars), m)
            for m in range(1, order + 1)
        }

    def denominators(self):
        """Mapping m -> D with the trivial S_m action."""
        return {
            m: trivial_sheaf(self.denominator, m) for m in range(1, self.order + 1)
        }

    def class_function(self, m):
        """alpha_m as a class function.

        :raises UnitFailure: If the denominator has a vanishing trace.
        """
        return alpha_lambda(self, IntPartition([m]))

    def as_series(self):
        """The series of class functions alpha_1..alpha_N."""
        return KClassSeries(
            self.order,
            {m: self.class_function(m) for m in range(1, self.order + 1)},
            self.nvars,
        )


def alpha_lambda(presented, shape):
    """alpha_lambda = p_*([D_A]^{-1} [F_A]) as a class function on S_n.

    The quotient is formed on the stabilizer H of the canonical partition A of
    type lambda and induced to S_n by the character formula
    value(mu) = n!/(|H| count(mu)) * sum over h in H of type mu.

    :param presented: Classes alpha_m = [F_m]/[D].
    :type presented: :obj:`PresentedClassSeries`
    :param shape: lambda.
    :type shape: :obj:`IntPartition`
    :raises UnitFailure: If some trace of D_A vanishes.
    """
    n = shape.size
    nvars = presented.nvars
    partition = canonical_partition(shape)
    stabilizer = young_subgroup(partition)
    numerator = tensor_sheaf(
        n, [partition], lambda key: key, act_partition, presented.numerators, nvars,
        elements=stabilizer,
    )
    denominator = tensor_sheaf(
        n, [partition], lambda key: key, act_partition, presented.denominators(), nvars,
        elements=stabilizer,
    )
    sums = {}
    for h in stabilizer:
        bottom = denominator.trace(h)
        if bottom.is_zero():
            raise UnitFailure(
                "[D] has vanishing trace at {} for {}".format(list(h.images), shape.parts)
            )
        top = numerator.trace(h)
        if top.is_zero():
            continue
        mu = cycle_type(h)
        sums[mu] = sums.get(mu, RatFun.zero(nvars)) + RatFun(top) / RatFun(bottom)
    values = {
        mu: total * Fraction(factorial(n), len(stabilizer) * count_cycle_type(mu))
        for mu, total in sums.items()
    }
    return ClassFunction(n, values, nvars)


def loc_exp(presented):
    """locExp: entry n is the sum of alpha_lambda over all lambda of n.

    :rtype: :obj:`KClassSeries`
    """
    entries = {}
    for n in range(1, presented.order + 1):
        total = ClassFunction.zero(n, presented.nvars)
        for shape in enumerate_int_partitions(n):
            total = total + alpha_lambda(presented, shape)
        entries[n] = total
        LOGGER.debug("locExp entry %d computed", n)
    return KClassSeries(presented.order, entries, presented.nvars)


def verify_character_lemma(presented, parameters=None):
    """Compare invariants of locExp(alpha) with Exp of the invariants of alpha.

    :param presented: Classes alpha_m = [F_m]/[D].
    :type presented: :obj:`PresentedClassSeries`
    :return: Report with the first differing coefficient on failure.
    :rtype: :obj:`Report`
    """
    report = Report("charlemma", presented.order, parameters)
    left = loc_exp(presented).invariant_series(constant=1)
    right = plethystic_exp(presented.as_series().invariant_series())
    index = left.first_difference(right)
    if index is not None:
        report.fail(
            {"coefficient": index, "lhs": str(left[index]), "rhs": str(right[index])}
        )
    report.details = {"order": presented.order}
    return report


def unit_check(denominator, n):
    """Check that every trace prod_i str(D)(t^{c_i}) is non-zero for S_n.

    :param denominator: The space D.
    :type denominator: :obj:`WeightedSpace`
    :param n: Degree.
    :type n: int
    :rtype: :obj:`Report`
    """
    report = Report("unit", n)
    character = denominator.character()
    for shape in enumerate_int_partitions(n):
        value = LaurentPoly.constant(1, denominator.nvars)
        for part in shape:
            value = value * character.adams(part)
        if value.is_zero():
            return report.fail({"cycle_type": list(shape.parts)})
    return report
