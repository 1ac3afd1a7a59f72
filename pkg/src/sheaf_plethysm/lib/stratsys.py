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
"""Systems of sheaves on X^n for a finite X and their strictification.

Points of X^n are tuples of point identifiers, stratified by coincidence
type. Sheaves are indexed by the set partitions of [n] ordered by
refinement, and the S_n-structure is stored on the Coxeter generators.
"""
import itertools
import logging
import math

from . import linalg
from .coeffring import LaurentPoly, RatFun
from .combinat import (
    Permutation,
    act_partition,
    coincidence_partition,
    enumerate_set_partitions,
    permutations,
    refines,
    sim_alpha,
)
from .equirep import block_tensor_matrix
from .graded import (
    WeightedSpace,
    check_homogeneous,
    graded_image,
    graded_kernel,
    graded_quotient,
    inclusion,
    supertrace,
    tensor_all,
)
from .qseries import QSeries
from .report import Report

INFINITE = math.inf


class SystemAxiomError(ValueError):
    """A system violates one of its axioms."""

    def __init__(self, msg, axiom, witness):
        """Axiom violation.

        :param msg: Description.
        :type msg: str
        :param axiom: Name of the axiom, for example "C2" or "D3".
        :type axiom: str
        :param witness: Data locating the violation.
        :type witness: dict
        """
        self.axiom = axiom
        self.witness = witness
        super().__init__("{}: {}".format(axiom, msg))


class StrictificationError(RuntimeError):
    """The strictification loop broke one of its invariants."""

    def __init__(self, msg, witness=None):
        """Internal strictification error."""
        self.witness = witness
        super().__init__(msg)


def _lookup(matrices, key, nrows, ncols):
    mat = matrices.get(key)
    return linalg.zeros(nrows, ncols) if mat is None else mat


def act_point(sigma, point):
    """sigma(x) with sigma(x)_k = x_{sigma^-1(k)}."""
    inverse = sigma.inverse()
    return tuple(point[inverse(k) - 1] for k in range(1, len(point) + 1))


def _partition_key(partition):
    return (-len(partition), partition.blocks)


def _describe(partition):
    return [list(members) for members in partition.block_members()]


class StratSpace:
    """X^n for a finite set X, stratified by coincidence partitions."""

    def __init__(self, n, labels, weights=None, nvars=0):
        """Stratified space.

        :param n: Exponent.
        :type n: int
        :param labels: Point identifiers of X.
        :type labels: list
        :param weights: Weight vector of every point of X.
        :type weights: dict
        :param nvars: Number of torus variables.
        :type nvars: int
        :raises ValueError: On duplicate identifiers.
        """
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("Duplicate point identifiers in {}".format(labels))
        self.n = n
        self.labels = labels
        self.nvars = nvars
        self.weights = {
            label: tuple((weights or {}).get(label, (0,) * nvars)) for label in labels
        }
        self.points = tuple(itertools.product(labels, repeat=n))
        self.partitions = tuple(sorted(enumerate_set_partitions(n), key=_partition_key))
        self.stratum_of = {point: coincidence_partition(point) for point in self.points}
        self.strata = {partition: [] for partition in self.partitions}
        for point in self.points:
            self.strata[self.stratum_of[point]].append(point)
        self._position = {label: index for index, label in enumerate(labels)}

    def act(self, sigma, point):
        """sigma(x), see :func:`act_point`."""
        return act_point(sigma, point)

    def in_open(self, point, alpha):
        """Whether the point lies in U_alpha."""
        return refines(self.stratum_of[point], alpha)

    def open_set(self, alpha):
        """U_alpha: points whose coincidence partition refines alpha."""
        return [point for point in self.points if self.in_open(point, alpha)]

    def representative(self, point):
        """Canonical representative of the S_n-orbit of a point."""
        return tuple(sorted(point, key=self._position.__getitem__))

    def orbit_representatives(self):
        """One sorted tuple per S_n-orbit."""
        return sorted({self.representative(point) for point in self.points},
                      key=lambda p: [self._position[label] for label in p])

    def diagonal(self):
        """Points of the small diagonal."""
        return [(label,) * self.n for label in self.labels]

    def validate(self):
        """Check that strata cover the points and the action permutes them.

        :raises ValueError: On the first violation.
        """
        if sum(len(points) for points in self.strata.values()) != len(self.points):
            raise ValueError("Strata do not partition the points")
        for sigma in permutations(self.n):
            for point in self.points:
                moved = self.act(sigma, point)
                if self.stratum_of[moved] != act_partition(sigma, self.stratum_of[point]):
                    raise ValueError("Action does not permute the strata at {}".format(point))


def build_space(n, labels, weights=None, nvars=0):
    """X^n with its coincidence stratification."""
    return StratSpace(n, labels, weights, nvars)


class LocalDatum:
    """Spaces V_{p,m} for every point p of X and m >= 1.

    The fiber used at p in degree m is V_{p,m} twisted by m times the weight
    of p, so that a point of weight w carries w^m in Sym^m.
    """

    def __init__(self, labels, weights, spaces, nvars):
        """Local datum.

        :param labels: Point identifiers.
        :type labels: list
        :param weights: Mapping label -> weight vector.
        :type weights: dict
        :param spaces: Mapping (label, m) -> :obj:`WeightedSpace`.
        :type spaces: dict
        :param nvars: Number of torus variables.
        :type nvars: int
        """
        self.labels = list(labels)
        self.weights = {label: tuple(weights[label]) for label in self.labels}
        self.spaces = dict(spaces)
        self.nvars = nvars

    @classmethod
    def structure_sheaf(cls, labels, weights, nvars, order):
        """Every V_{p,m} the even trivial line."""
        line = WeightedSpace.line(nvars)
        return cls(
            labels,
            weights,
            {(label, m): line for label in labels for m in range(1, order + 1)},
            nvars,
        )

    @classmethod
    def zero(cls, labels, weights, nvars):
        """Every V_{p,m} zero."""
        return cls(labels, weights, {}, nvars)

    def raw(self, label, m):
        """V_{p,m} before the point twist."""
        return self.spaces.get((label, m)) or WeightedSpace.zero(self.nvars)

    def effective(self, label, m):
        """V_{p,m} twisted by m times the weight of p."""
        return self.raw(label, m).twist(tuple(m * w for w in self.weights[label]))

    def series(self, label, order):
        """1 + sum_m ch(V'_{p,m}) q^m."""
        coefficients = [RatFun.one(self.nvars)] + [
            RatFun(self.effective(label, m).character()) for m in range(1, order + 1)
        ]
        return QSeries(order, coefficients, self.nvars)

    def space(self, n):
        """The stratified space X^n for this datum."""
        return build_space(n, self.labels, self.weights, self.nvars)

    def to_dict(self):
        """JSON-ready form."""
        return {
            "vars": self.nvars,
            "points": [
                {
                    "label": label,
                    "weight": list(self.weights[label]),
                    "spaces": {
                        str(m): space.to_dict()
                        for (other, m), space in sorted(self.spaces.items())
                        if other == label
                    },
                }
                for label in self.labels
            ],
        }

    @classmethod
    def from_dict(cls, document):
        """Inverse of :meth:`to_dict`."""
        nvars = document["vars"]
        labels, weights, spaces = [], {}, {}
        for entry in document["points"]:
            label = entry["label"]
            labels.append(label)
            weights[label] = tuple(entry["weight"])
            for m, space in entry["spaces"].items():
                spaces[label, int(m)] = WeightedSpace.from_dict(nvars, space)
        return cls(labels, weights, spaces, nvars)


def reduced_word(sigma):
    """Indices a_1, ..., a_k with sigma = s_{a_k} ... s_{a_1}.

    Applying the generators in the returned order evaluates sigma.
    """
    word = []
    current = sigma
    while not current.is_identity():
        index = next(a for a in range(1, sigma.n) if current(a) > current(a + 1))
        word.append(index)
        current = current * Permutation.transposition(sigma.n, index, index + 1)
    return word


class System:
    """System of sheaves: fibers F_i(x), partial maps phi_{i,j}(x) and actions.

    ``maps`` holds phi_{i,j}(x) for i strictly finer than j wherever the map
    is defined; phi_{i,i} is the identity. ``actions`` holds, for the
    generator s_a, the matrix F_i(x) -> F_{s_a i}(s_a x), or is None for a
    system without S_n-structure.
    """

    strict = False

    def __init__(self, space, fibers, maps, actions=None, nvars=None):
        """System of sheaves on a stratified space.

        :param space: Underlying space.
        :type space: :obj:`StratSpace`
        :param fibers: Mapping (i, x) -> :obj:`WeightedSpace`; missing is zero.
        :type fibers: dict
        :param maps: Mapping (i, j, x) -> matrix.
        :type maps: dict
        :param actions: Mapping (a, i, x) -> matrix, or None.
        :type actions: dict
        :param nvars: Number of torus variables.
        :type nvars: int
        """
        self.space = space
        self.n = space.n
        self.nvars = space.nvars if nvars is None else nvars
        self.fibers = {key: value for key, value in fibers.items() if value.dim}
        self.maps = {key: value for key, value in maps.items() if not linalg.is_zero(value)}
        self.actions = None if actions is None else {
            key: value for key, value in actions.items() if not linalg.is_zero(value)
        }
        self._generators = [
            Permutation.transposition(self.n, a, a + 1) for a in range(1, self.n)
        ]

    @property
    def equivariant(self):
        """Whether the system carries an S_n-structure."""
        return self.actions is not None

    def fiber(self, index, point):
        """F_i(x)."""
        return self.fibers.get((index, point)) or WeightedSpace.zero(self.nvars)

    def defined(self, first, second, point):
        """Whether phi_{first, second} is defined at the point."""
        if not refines(first, second):
            return False
        return self.strict or sim_alpha(first, second, self.space.stratum_of[point])

    def phi(self, first, second, point):
        """phi_{first, second}(x).

        :raises ValueError: If the map is not defined at the point.
        """
        if not self.defined(first, second, point):
            raise ValueError(
                "phi({}, {}) is not defined at {}".format(first, second, point)
            )
        source = self.fiber(first, point).dim
        if first == second:
            return linalg.identity(source)
        return _lookup(
            self.maps, (first, second, point), self.fiber(second, point).dim, source
        )

    def generator(self, index, partition, point):
        """Action of s_index: target index, target point and matrix."""
        sigma = self._generators[index - 1]
        target, moved = act_partition(sigma, partition), self.space.act(sigma, point)
        mat = _lookup(
            self.actions or {},
            (index, partition, point),
            self.fiber(target, moved).dim,
            self.fiber(partition, point).dim,
        )
        return target, moved, mat

    def rho(self, sigma, partition, point):
        """rho_sigma: F_i(x) -> F_{sigma i}(sigma x) along a reduced word.

        :raises ValueError: If the system has no S_n-structure.
        """
        if not self.equivariant:
            raise ValueError("System carries no S_n-structure")
        mat = linalg.identity(self.fiber(partition, point).dim)
        for index in reduced_word(sigma):
            partition, point, step = self.generator(index, partition, point)
            mat = linalg.matmul(step, mat)
        return partition, point, mat

    def support(self):
        """Points where some F_i is nonzero."""
        return frozenset(point for _, point in self.fibers)

    def is_zero(self):
        """Whether every fiber vanishes."""
        return not self.fibers

    def comparable_pairs(self):
        """Pairs (i, j) with i strictly finer than j."""
        return [
            (first, second)
            for first in self.space.partitions
            for second in self.space.partitions
            if first != second and refines(first, second)
        ]

    def __repr__(self):
        return "{}(n={}, points={}, support={})".format(
            type(self).__name__, self.n, len(self.space.points), len(self.support())
        )


class StrictSystem(System):
    """System whose maps phi_{i,j} are defined at every point."""

    strict = True


class SignedSystemList:
    """Strict systems with nonzero integer multiplicities."""

    def __init__(self, entries=None):
        """Signed list."""
        self.entries = list(entries or [])

    def append(self, system, multiplicity):
        """Add an entry."""
        if not multiplicity:
            raise ValueError("Multiplicities must be nonzero")
        self.entries.append((system, multiplicity))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _factor_blocks(partition, point):
    """Blocks of meet(A, c(x)) ordered by their A-block, then in binary order."""
    coincidence = coincidence_partition(point)
    blocks = []
    for position, block in enumerate(partition.blocks):
        for other in coincidence.blocks:
            if block & other:
                blocks.append((position, block & other))
    return [mask for _, mask in sorted(blocks)]


def _element(mask):
    return (mask & -mask).bit_length() - 1


def _factor_spaces(datum, blocks, point):
    return [
        datum.effective(point[_element(mask) - 1], bin(mask).count("1")) for mask in blocks
    ]


def _regroup(spaces, images, target_blocks):
    """Koszul-signed map sending the factor on images[a] to its target slot."""
    positions = [target_blocks.index(mask) for mask in images]
    return block_tensor_matrix(
        spaces, positions, [linalg.identity(s.dim) for s in spaces]
    )


def local_fiber(datum, partition, point):
    """F_A(x) for the system of a local datum."""
    blocks = _factor_blocks(partition, point)
    return tensor_all(_factor_spaces(datum, blocks, point), datum.nvars)


def local_action(datum, sigma, partition, point):
    """rho_sigma: F_A(x) -> F_{sigma A}(sigma x) for the system of a local datum."""
    blocks = _factor_blocks(partition, point)
    return _regroup(
        _factor_spaces(datum, blocks, point),
        [sigma.apply_mask(mask) for mask in blocks],
        _factor_blocks(act_partition(sigma, partition), act_point(sigma, point)),
    )


def system_from_local_datum(datum, n):
    """The equivariant system of a local datum on X^n.

    F_A(x) is the tensor product over the blocks C of meet(A, c(x)) of
    V'_{x_C, |C|}; phi and the action only reorder factors, with Koszul
    signs.

    :param datum: Local datum.
    :type datum: :obj:`LocalDatum`
    :param n: Exponent.
    :type n: int
    :rtype: :obj:`System`
    """
    space = datum.space(n)
    fibers, maps, actions = {}, {}, {}
    blocks_of = {}
    for partition in space.partitions:
        for point in space.points:
            blocks = _factor_blocks(partition, point)
            blocks_of[partition, point] = blocks
            fibers[partition, point] = tensor_all(
                _factor_spaces(datum, blocks, point), datum.nvars
            )
    system = System(space, fibers, {}, {}, datum.nvars)
    for first, second in system.comparable_pairs():
        for point in space.points:
            if system.defined(first, second, point) and fibers[first, point].dim:
                blocks = blocks_of[first, point]
                maps[first, second, point] = _regroup(
                    _factor_spaces(datum, blocks, point), blocks, blocks_of[second, point]
                )
    for index in range(1, n):
        sigma = Permutation.transposition(n, index, index + 1)
        for partition in space.partitions:
            for point in space.points:
                if not fibers[partition, point].dim:
                    continue
                target = act_partition(sigma, partition)
                moved = space.act(sigma, point)
                blocks = blocks_of[partition, point]
                actions[index, partition, point] = _regroup(
                    _factor_spaces(datum, blocks, point),
                    [sigma.apply_mask(mask) for mask in blocks],
                    blocks_of[target, moved],
                )
    return System(space, fibers, maps, actions, datum.nvars)


def _fail(axiom, msg, **witness):
    raise SystemAxiomError(msg, axiom, witness)


def _check_homogeneity(system):
    for (first, second, point), mat in system.maps.items():
        try:
            check_homogeneous(mat, system.fiber(first, point), system.fiber(second, point))
        except ValueError as exception:
            _fail("homogeneity", str(exception), first=_describe(first),
                  second=_describe(second), point=list(point))
    for (index, partition, point), mat in (system.actions or {}).items():
        target, moved, _ = system.generator(index, partition, point)
        try:
            check_homogeneous(mat, system.fiber(partition, point), system.fiber(target, moved))
        except ValueError as exception:
            _fail("homogeneity", str(exception), generator=index,
                  index=_describe(partition), point=list(point))


def _check_functoriality(system, axiom):
    partitions = system.space.partitions
    for first, second, third in itertools.product(partitions, repeat=3):
        if first == second or second == third:
            continue
        if not (refines(first, second) and refines(second, third)):
            continue
        for point in system.space.points:
            if not (
                system.defined(first, second, point)
                and system.defined(second, third, point)
                and system.defined(first, third, point)
            ):
                continue
            composite = linalg.matmul(
                system.phi(second, third, point), system.phi(first, second, point)
            )
            if not linalg.equal(composite, system.phi(first, third, point)):
                _fail(axiom, "phi does not compose", first=_describe(first),
                      second=_describe(second), third=_describe(third), point=list(point))


def _check_invertible(system, axiom):
    for first, second in system.comparable_pairs():
        for point in system.space.points:
            if not sim_alpha(first, second, system.space.stratum_of[point]):
                continue
            if not linalg.is_invertible(system.phi(first, second, point)):
                _fail(axiom, "phi is not invertible on its locus", first=_describe(first),
                      second=_describe(second), point=list(point))


def _check_coxeter(system):
    n = system.n
    relations = [([a, a], a) for a in range(1, n)]
    relations += [([a, a + 1] * 3, a) for a in range(1, n - 1)]
    relations += [
        ([a, b] * 2, a) for a in range(1, n) for b in range(a + 2, n)
    ]
    for word, _ in relations:
        for partition in system.space.partitions:
            for point in system.space.points:
                current, moved = partition, point
                mat = linalg.identity(system.fiber(partition, point).dim)
                for index in word:
                    current, moved, step = system.generator(index, current, moved)
                    mat = linalg.matmul(step, mat)
                if (current, moved) != (partition, point) or not linalg.equal(
                    mat, linalg.identity(mat.shape[1])
                ):
                    _fail("coxeter", "relation fails", word=word,
                          index=_describe(partition), point=list(point))


def _check_equivariance(system):
    for index in range(1, system.n):
        for first, second in system.comparable_pairs():
            for point in system.space.points:
                if not system.defined(first, second, point):
                    continue
                source_target, moved, rho_first = system.generator(index, first, point)
                second_target, _, rho_second = system.generator(index, second, point)
                left = linalg.matmul(rho_second, system.phi(first, second, point))
                right = linalg.matmul(
                    system.phi(source_target, second_target, moved), rho_first
                )
                if not linalg.equal(left, right):
                    _fail("equivariance", "rho does not commute with phi", generator=index,
                          first=_describe(first), second=_describe(second), point=list(point))


def validate_system(system):
    """Check (C1), (C2), invertibility on U_{i,j} and the S_n-structure.

    :raises SystemAxiomError: On the first violation.
    """
    _check_homogeneity(system)
    for (first, second, point) in system.maps:
        if not system.defined(first, second, point):
            _fail("C1", "map stored outside its domain", first=_describe(first),
                  second=_describe(second), point=list(point))
    _check_invertible(system, "C1")
    _check_functoriality(system, "C2")
    if system.equivariant:
        _check_coxeter(system)
        _check_equivariance(system)


def validate_strict(system):
    """Check (D1), (D2), (D3) and the S_n-structure if present.

    :raises SystemAxiomError: On the first violation.
    """
    if not system.strict:
        _fail("D1", "system is not strict", system=repr(system))
    _check_homogeneity(system)
    _check_functoriality(system, "D1")
    _check_invertible(system, "D3")
    if system.equivariant:
        _check_coxeter(system)
        _check_equivariance(system)


class Morphism:
    """Homomorphism of systems given fiberwise."""

    def __init__(self, source, target, components):
        """Morphism source -> target with components (i, x) -> matrix."""
        self.source = source
        self.target = target
        self.components = dict(components)

    def component(self, partition, point):
        """The matrix F_i(x) -> G_i(x)."""
        return _lookup(
            self.components,
            (partition, point),
            self.target.fiber(partition, point).dim,
            self.source.fiber(partition, point).dim,
        )

    def validate(self):
        """Check commutation with phi on the domain of the source and with rho.

        :raises SystemAxiomError: On the first violation.
        """
        space = self.source.space
        for first, second in self.source.comparable_pairs():
            for point in space.points:
                if not self.source.defined(first, second, point):
                    continue
                left = linalg.matmul(
                    self.target.phi(first, second, point), self.component(first, point)
                )
                right = linalg.matmul(
                    self.component(second, point), self.source.phi(first, second, point)
                )
                if not linalg.equal(left, right):
                    _fail("morphism", "does not commute with phi", first=_describe(first),
                          second=_describe(second), point=list(point))
        if self.source.equivariant and self.target.equivariant:
            for index in range(1, space.n):
                for partition in space.partitions:
                    for point in space.points:
                        target, moved, rho_source = self.source.generator(index, partition, point)
                        _, _, rho_target = self.target.generator(index, partition, point)
                        left = linalg.matmul(rho_target, self.component(partition, point))
                        right = linalg.matmul(self.component(target, moved), rho_source)
                        if not linalg.equal(left, right):
                            _fail("morphism", "does not commute with rho", generator=index,
                                  index=_describe(partition), point=list(point))


def _image_data(system, alpha):
    """Fibers, image bases and maps of D_alpha(F) on the stratum of alpha."""
    space = system.space
    fibers, bases, maps = {}, {}, {}
    points = space.strata[alpha]
    for point in points:
        for partition in space.partitions:
            sources = [partition] + [
                other
                for other in space.partitions
                if other != partition
                and refines(other, partition)
                and sim_alpha(other, partition, alpha)
            ]
            target = system.fiber(partition, point)
            source_space = WeightedSpace.zero(system.nvars)
            pieces = []
            for other in sources:
                pieces.append((0, source_space.dim, system.phi(other, partition, point)))
                source_space = source_space.direct_sum(system.fiber(other, point))
            assembled = linalg.block(target.dim, source_space.dim, pieces)
            basis, image_space = graded_image(assembled, source_space, target)
            bases[partition, point] = basis
            fibers[partition, point] = image_space
    for first, second in system.comparable_pairs():
        if not sim_alpha(first, second, alpha):
            continue
        for point in points:
            moved = linalg.matmul(system.phi(first, second, point), bases[first, point])
            maps[first, second, point] = linalg.coordinates(bases[second, point], moved)
    return fibers, bases, maps


def functor_D_alpha(system, alpha):
    """D_alpha(F): F restricted to the stratum of alpha, extended by zero.

    Fibers are images of the sum of phi_{k,i} over k finer than i with
    k ~_alpha i; maps are the induced maps for i ~_alpha j and zero otherwise.

    :rtype: :obj:`StrictSystem`
    """
    fibers, _, maps = _image_data(system, alpha)
    return StrictSystem(system.space, fibers, maps, None, system.nvars)


def I_alpha(system, alpha):  # pylint:disable=invalid-name
    """The morphism F -> D_alpha(F)."""
    fibers, bases, maps = _image_data(system, alpha)
    target = StrictSystem(system.space, fibers, maps, None, system.nvars)
    components = {
        key: linalg.coordinates(basis, linalg.identity(basis.shape[0]))
        for key, basis in bases.items()
    }
    return Morphism(system, target, components)


def orbit_of(alpha):
    """S_n-orbit of a set partition in canonical order."""
    return sorted(
        {act_partition(sigma, alpha) for sigma in permutations(alpha.n)}, key=_partition_key
    )


def _tilde(system, alpha):
    fibers, bases, maps = {}, {}, {}
    for beta in orbit_of(alpha):
        beta_fibers, beta_bases, beta_maps = _image_data(system, beta)
        fibers.update(beta_fibers)
        bases.update(beta_bases)
        maps.update(beta_maps)
    actions = None
    if system.equivariant:
        actions = {}
        for (partition, point), basis in bases.items():
            for index in range(1, system.n):
                target, moved, mat = system.generator(index, partition, point)
                actions[index, partition, point] = linalg.coordinates(
                    bases[target, moved], linalg.matmul(mat, basis)
                )
    strict = StrictSystem(system.space, fibers, maps, actions, system.nvars)
    return strict, bases


def tilde_D_alpha(system, alpha):  # pylint:disable=invalid-name
    """Sum of D_beta(F) over the S_n-orbit of alpha, with its S_n-structure."""
    return _tilde(system, alpha)[0]


def tilde_I_alpha(system, alpha):  # pylint:disable=invalid-name
    """The morphism F -> tilde D_alpha(F), the sum of the I_beta."""
    target, bases = _tilde(system, alpha)
    components = {
        key: linalg.coordinates(basis, linalg.identity(basis.shape[0]))
        for key, basis in bases.items()
    }
    return Morphism(system, target, components)


def kernel_system(morphism):
    """Fiberwise kernel, a system of the same kind as the source."""
    source = morphism.source
    space = source.space
    bases, fibers, maps = {}, {}, {}
    for partition in space.partitions:
        for point in space.points:
            basis, kernel = graded_kernel(
                morphism.component(partition, point),
                source.fiber(partition, point),
                morphism.target.fiber(partition, point),
            )
            bases[partition, point] = basis
            fibers[partition, point] = kernel
    for first, second in source.comparable_pairs():
        for point in space.points:
            if source.defined(first, second, point) and fibers[first, point].dim:
                moved = linalg.matmul(source.phi(first, second, point), bases[first, point])
                maps[first, second, point] = linalg.coordinates(bases[second, point], moved)
    actions = None
    if source.equivariant:
        actions = {}
        for (partition, point), basis in bases.items():
            if not basis.shape[1]:
                continue
            for index in range(1, space.n):
                target, moved, mat = source.generator(index, partition, point)
                actions[index, partition, point] = linalg.coordinates(
                    bases[target, moved], linalg.matmul(mat, basis)
                )
    return type(source)(space, fibers, maps, actions, source.nvars)


def cokernel_system(morphism):
    """Fiberwise cokernel, with maps on the domain of the source."""
    source, target = morphism.source, morphism.target
    space = source.space
    quotients, fibers, maps = {}, {}, {}
    for partition in space.partitions:
        for point in space.points:
            ambient = target.fiber(partition, point)
            image_basis, _ = graded_image(
                morphism.component(partition, point), source.fiber(partition, point), ambient
            )
            indices, projection, quotient = graded_quotient(image_basis, ambient)
            quotients[partition, point] = (inclusion(indices, ambient.dim), projection)
            fibers[partition, point] = quotient
    for first, second in source.comparable_pairs():
        for point in space.points:
            if source.defined(first, second, point) and fibers[first, point].dim:
                include, _ = quotients[first, point]
                _, project = quotients[second, point]
                maps[first, second, point] = linalg.matmul(
                    project, linalg.matmul(target.phi(first, second, point), include)
                )
    actions = None
    if source.equivariant and target.equivariant:
        actions = {}
        for (partition, point), (include, _) in quotients.items():
            if not include.shape[1]:
                continue
            for index in range(1, space.n):
                moved_index, moved, mat = target.generator(index, partition, point)
                _, project = quotients[moved_index, moved]
                actions[index, partition, point] = linalg.matmul(
                    project, linalg.matmul(mat, include)
                )
    return type(source)(space, fibers, maps, actions, source.nvars)


def support_measure(system, alpha):
    """0, 1 or infinity: how the system meets U_alpha.

    0 when every fiber vanishes on U_alpha, 1 when the part of the support
    inside U_alpha lies in the stratum of alpha, infinity otherwise.
    """
    inside = [
        point for point in system.support() if system.space.in_open(point, alpha)
    ]
    if not inside:
        return 0
    if all(system.space.stratum_of[point] == alpha for point in inside):
        return 1
    return INFINITE


def supp(system):
    """Support of a system as a set of points."""
    return system.support()


class Strictifier:
    """Replace an equivariant system by strict systems with the same K-class.

    Repeatedly splits off tilde D_alpha(F) for a minimal alpha with nonzero
    support measure and continues with the kernel (same sign) and the
    cokernel (opposite sign) of tilde I_alpha.
    """

    logger = logging.getLogger("SP - Strictify")

    def __init__(self, system, max_steps=None):
        """Strictifier for one system.

        :param system: Equivariant system.
        :type system: :obj:`System`
        :param max_steps: Bound on the number of split steps.
        :type max_steps: int
        """
        self.system = system
        self.max_steps = max_steps or 4 * len(system.space.partitions) + 4
        self.steps = []

    def minimal_stratum(self, system):
        """First alpha in canonical order with nonzero support measure."""
        for alpha in system.space.partitions:
            measure = support_measure(system, alpha)
            if measure:
                if measure == INFINITE:
                    raise StrictificationError(
                        "Minimal stratum has infinite support measure",
                        {"alpha": _describe(alpha)},
                    )
                return alpha
        return None

    def _shrinks(self, before, after, branch, alpha):
        if after.is_zero():
            return
        if not after.support() < before.support():
            raise StrictificationError(
                "Support did not shrink on the {} branch".format(branch),
                {"alpha": _describe(alpha), "support": sorted(map(list, after.support()))},
            )

    def run(self):
        """Strictify.

        :return: Strict equivariant systems with multiplicities.
        :rtype: :obj:`SignedSystemList`
        :raises StrictificationError: If the support does not shrink.
        """
        result = SignedSystemList()
        pending = [(self.system, 1)]
        while pending:
            system, sign = pending.pop(0)
            if system.is_zero():
                continue
            if len(self.steps) >= self.max_steps:
                raise StrictificationError("Strictification did not terminate")
            alpha = self.minimal_stratum(system)
            morphism = tilde_I_alpha(system, alpha)
            self.logger.debug(
                "Splitting off stratum %s with sign %+d", _describe(alpha), sign
            )
            self.steps.append({"alpha": _describe(alpha), "sign": sign})
            result.append(morphism.target, sign)
            kernel = kernel_system(morphism)
            cokernel = cokernel_system(morphism)
            self._shrinks(system, kernel, "kernel", alpha)
            self._shrinks(system, cokernel, "cokernel", alpha)
            pending.append((kernel, sign))
            pending.append((cokernel, -sign))
        self.logger.info(
            "Strictified into %d strict systems in %d steps", len(result), len(self.steps)
        )
        return result


def strictify(system):
    """Strictify an equivariant system, see :class:`Strictifier`."""
    return Strictifier(system).run()


def direct_sum_systems(systems, space, nvars, shifts=None):
    """Direct sum of strict systems; shifts[k] flips the parity of summand k."""
    shifts = shifts or [0] * len(systems)
    fibers, maps, actions = {}, {}, {}
    offsets = {}
    for partition in space.partitions:
        for point in space.points:
            total = WeightedSpace.zero(nvars)
            offsets[partition, point] = []
            for system, shift in zip(systems, shifts):
                offsets[partition, point].append(total.dim)
                total = total.direct_sum(system.fiber(partition, point).shift(shift))
            fibers[partition, point] = total

    def assemble(source_key, target_key, pieces):
        pieces = [
            (offsets[target_key][k], offsets[source_key][k], piece)
            for k, piece in enumerate(pieces)
        ]
        return linalg.block(fibers[target_key].dim, fibers[source_key].dim, pieces)

    for first, second in itertools.permutations(space.partitions, 2):
        if not refines(first, second):
            continue
        for point in space.points:
            if fibers[first, point].dim and fibers[second, point].dim:
                maps[first, second, point] = assemble(
                    (first, point),
                    (second, point),
                    [system.phi(first, second, point) for system in systems],
                )
    equivariant = all(system.equivariant for system in systems)
    for index in range(1, space.n):
        sigma = Permutation.transposition(space.n, index, index + 1)
        for partition in space.partitions:
            for point in space.points:
                if not fibers[partition, point].dim or not equivariant:
                    continue
                target = (act_partition(sigma, partition), space.act(sigma, point))
                actions[index, partition, point] = assemble(
                    (partition, point),
                    target,
                    [system.generator(index, partition, point)[2] for system in systems],
                )
    return StrictSystem(space, fibers, maps, actions if equivariant else None, nvars)


def assemble_strict(signed, space, nvars):
    """One strict system from a signed list; negative entries are parity shifted.

    An entry of multiplicity m contributes |m| copies.
    """
    systems, shifts = [], []
    for system, multiplicity in signed:
        for _ in range(abs(multiplicity)):
            systems.append(system)
            shifts.append(1 if multiplicity < 0 else 0)
    return direct_sum_systems(systems, space, nvars, shifts)


def system_kclass(system):
    """Supertraces of rho_sigma at every (i, x, sigma) with sigma fixing i and x.

    Zero values are omitted.

    :rtype: dict
    """
    traces = {}
    for (partition, point), fiber in system.fibers.items():
        for sigma in permutations(system.n):
            if act_partition(sigma, partition) != partition:
                continue
            if system.space.act(sigma, point) != point:
                continue
            _, _, mat = system.rho(sigma, partition, point)
            value = supertrace(mat, fiber)
            if not value.is_zero():
                traces[partition, point, sigma] = value
    return traces


def signed_kclass(signed):
    """Sum of multiplicity times the K-class of every entry."""
    totals = {}
    for system, multiplicity in signed:
        for key, value in system_kclass(system).items():
            totals[key] = totals.get(key, LaurentPoly.zero(value.nvars)) + value.scale(
                multiplicity
            )
    return {key: value for key, value in totals.items() if not value.is_zero()}


def verify_strictify(system, parameters=None):
    """Strictify and check strictness, shrinking supports and K-classes.

    :rtype: :obj:`Report`
    """
    report = Report("strictify", system.n, parameters)
    strictifier = Strictifier(system)
    try:
        signed = strictifier.run()
        for entry, _ in signed:
            validate_strict(entry)
        assembled = assemble_strict(signed, system.space, system.nvars)
        validate_strict(assembled)
    except (StrictificationError, SystemAxiomError) as exception:
        return report.fail(
            {
                "error": str(exception),
                "witness": getattr(exception, "witness", None),
                "steps": strictifier.steps,
            }
        )
    expected = system_kclass(system)
    for name, found in (("signed", signed_kclass(signed)), ("assembled", system_kclass(assembled))):
        if found != expected:
            key = sorted(
                set(found) ^ set(expected)
                or {k for k in found if found[k] != expected.get(k)},
                key=repr,
            )[0]
            return report.fail(
                {
                    "comparison": name,
                    "index": _describe(key[0]),
                    "point": list(key[1]),
                    "sigma": list(key[2].images),
                }
            )
    report.details = {"entries": len(signed), "steps": strictifier.steps}
    return report
