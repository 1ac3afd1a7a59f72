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
"""Subsets of [n], set partitions, permutations and integer partitions.

Subsets are bit masks in which element i contributes 2^i, so comparing masks
as integers is exactly the binary order.
"""
import itertools
import logging
from collections import Counter
from functools import lru_cache
from math import factorial

from .report import Report

LOGGER = logging.getLogger(__name__)


class SizeMismatchError(ValueError):
    """Two objects live on different ground sets."""

    def __init__(self, left, right):
        """Initialize with the two ambient sizes."""
        self.left = left
        self.right = right
        super().__init__("Ambient size mismatch: {} != {}".format(left, right))


def mask_of(members):
    """Bit mask of a collection of elements of [n]."""
    mask = 0
    for member in members:
        if member < 1:
            raise ValueError("Elements of [n] start at 1, got {}".format(member))
        mask |= 1 << member
    return mask


def members_of(mask):
    """Sorted elements of a bit mask."""
    members = []
    element = 0
    while mask:
        if mask & 1:
            members.append(element)
        mask >>= 1
        element += 1
    return tuple(members)


def full_mask(n):
    """The mask of [n]."""
    return (1 << (n + 1)) - 2


class Subset:
    """Subset of [n] compared in the binary order."""

    __slots__ = ("n", "mask")

    def __init__(self, n, members=()):
        """Subset of [n] with the given members."""
        self.n = n
        self.mask = mask_of(members)
        if self.mask & ~full_mask(n):
            raise ValueError("{} is not a subset of [{}]".format(members, n))

    @classmethod
    def from_mask(cls, n, mask):
        """Subset from a bit mask."""
        return cls(n, members_of(mask))

    @property
    def members(self):
        """Sorted elements."""
        return members_of(self.mask)

    def __eq__(self, other):
        return (
            isinstance(other, Subset) and self.n == other.n and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.n, self.mask))

    def __lt__(self, other):
        return binary_cmp(self, other) < 0

    def __repr__(self):
        return "Subset({}, {})".format(self.n, set(self.members) or "{}")


def binary_cmp(left, right):
    """Compare two subsets in the binary order.

    :param left: First subset.
    :type left: :obj:`Subset`
    :param right: Second subset.
    :type right: :obj:`Subset`
    :return: -1, 0 or 1.
    :rtype: int
    :raises SizeMismatchError: If the ambient sizes differ.
    """
    if left.n != right.n:
        raise SizeMismatchError(left.n, right.n)
    return (left.mask > right.mask) - (left.mask < right.mask)


class Permutation:
    """Permutation of [n] with images[i - 1] = sigma(i).

    Composition follows (sigma * tau)(i) = sigma(tau(i)).
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        """Permutation from its image list."""
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("{} is not a permutation".format(images))
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n):
        """Identity of S_n."""
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n, first, second):
        """The transposition (first second) in S_n."""
        images = list(range(1, n + 1))
        images[first - 1], images[second - 1] = second, first
        return cls(images)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Permutation from disjoint cycles given as element sequences."""
        images = list(range(1, n + 1))
        for cycle in cycles:
            for position, element in enumerate(cycle):
                images[element - 1] = cycle[(position + 1) % len(cycle)]
        return cls(images)

    @property
    def n(self):
        """Size of the ground set."""
        return len(self.images)

    def __call__(self, element):
        return self.images[element - 1]

    def __mul__(self, other):
        if self.n != other.n:
            raise SizeMismatchError(self.n, other.n)
        return Permutation(self.images[image - 1] for image in other.images)

    def inverse(self):
        """Inverse permutation."""
        images = [0] * self.n
        for element, image in enumerate(self.images, start=1):
            images[image - 1] = element
        return Permutation(images)

    def is_identity(self):
        """Whether every element is fixed."""
        return all(image == element for element, image in enumerate(self.images, 1))

    def apply_mask(self, mask):
        """Image of a subset mask."""
        image = 0
        for element in members_of(mask):
            image |= 1 << self.images[element - 1]
        return image

    def cycles(self):
        """Disjoint cycles including fixed points, each starting at its minimum."""
        seen = set()
        cycles = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            element = self(start)
            while element != start:
                cycle.append(element)
                seen.add(element)
                element = self(element)
            cycles.append(tuple(cycle))
        return cycles

    def sign(self):
        """Sign +1 or -1."""
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Permutation({})".format(list(self.images))


class IntPartition:
    """Weakly decreasing tuple of positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        """Integer partition; parts are sorted on construction."""
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(part < 1 for part in parts):
            raise ValueError("Parts must be positive: {}".format(parts))
        self.parts = parts

    @property
    def size(self):
        """Sum of the parts."""
        return sum(self.parts)

    def multiplicities(self):
        """Mapping part -> number of occurrences."""
        return Counter(self.parts)

    def representative(self):
        """Permutation of this cycle type built from consecutive blocks."""
        cycles = []
        start = 1
        for part in self.parts:
            cycles.append(tuple(range(start, start + part)))
            start += part
        return Permutation.from_cycles(self.size, cycles)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, IntPartition) and self.parts == other.parts

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "IntPartition({})".format(self.parts)


class SetPartition:
    """Partition of [n]; blocks are masks sorted in the binary order."""

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n, blocks):
        """Set partition of [n].

        :param n: Ground set size.
        :type n: int
        :param blocks: Blocks as masks or as collections of elements.
        :type blocks: iterable
        :raises ValueError: If the blocks do not partition [n].
        """
        masks = [b if isinstance(b, int) else mask_of(b) for b in blocks]
        union = 0
        for mask in masks:
            if not mask or union & mask:
                raise ValueError("Blocks must be nonempty and disjoint")
            union |= mask
        if union != full_mask(n):
            raise ValueError("Blocks do not cover [{}]".format(n))
        self.n = n
        self.blocks = tuple(sorted(masks))
        self._hash = hash((n, self.blocks))

    @classmethod
    def _raw(cls, n, blocks):
        partition = cls.__new__(cls)
        partition.n = n
        partition.blocks = blocks
        partition._hash = hash((n, blocks))
        return partition

    @classmethod
    def singletons(cls, n):
        """The finest partition."""
        return cls._raw(n, tuple(1 << i for i in range(1, n + 1)))

    @classmethod
    def one_block(cls, n):
        """The coarsest partition."""
        return cls._raw(n, (full_mask(n),))

    def block_members(self):
        """Blocks as sorted element tuples."""
        return [members_of(block) for block in self.blocks]

    def block_of(self, element):
        """Mask of the block containing element."""
        for block in self.blocks:
            if block >> element & 1:
                return block
        raise ValueError("{} not in [{}]".format(element, self.n))

    def shape(self):
        """The integer partition of block sizes."""
        return IntPartition(bin(block).count("1") for block in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "SetPartition({})".format(
            [list(members) for members in self.block_members()]
        )


def _same_size(first, second):
    if first.n != second.n:
        raise SizeMismatchError(first.n, second.n)


def refines(finer, coarser):
    """Whether every block of finer lies in a block of coarser.

    :raises SizeMismatchError: If the ambient sizes differ.
    """
    _same_size(finer, coarser)
    return all(
        any(block & other == block for other in coarser.blocks)
        for block in finer.blocks
    )


def meet(first, second):
    """Coarsest common refinement: all nonempty pairwise block intersections.

    :raises SizeMismatchError: If the ambient sizes differ.
    """
    _same_size(first, second)
    blocks = [a & b for a in first.blocks for b in second.blocks if a & b]
    return SetPartition._raw(first.n, tuple(sorted(blocks)))


def act_partition(sigma, partition):
    """Image sigma(A) of a set partition, re-canonicalized.

    :raises SizeMismatchError: If the sizes differ.
    """
    if sigma.n != partition.n:
        raise SizeMismatchError(sigma.n, partition.n)
    return SetPartition._raw(
        partition.n, tuple(sorted(sigma.apply_mask(b) for b in partition.blocks))
    )


def sim_alpha(first, second, alpha):
    """Whether first ~_alpha second, that is meet(first, alpha) = meet(second, alpha)."""
    return meet(first, alpha) == meet(second, alpha)


def coincidence_partition(point):
    """Partition of the index set of a tuple by equality of the entries.

    :param point: Tuple (x_1, ..., x_n).
    :type point: tuple
    :return: The partition whose blocks are the level sets.
    :rtype: :obj:`SetPartition`
    """
    blocks = {}
    for index, value in enumerate(point, start=1):
        blocks[value] = blocks.get(value, 0) | 1 << index
    return SetPartition._raw(len(point), tuple(sorted(blocks.values())))


@lru_cache(maxsize=None)
def _set_partitions(n):
    if n == 0:
        return [()]
    result = []
    for smaller in _set_partitions(n - 1):
        new = 1 << n
        result.append(smaller + (new,))
        for index, block in enumerate(smaller):
            result.append(smaller[:index] + (block | new,) + smaller[index + 1 :])
    return result


def enumerate_set_partitions(n):
    """All set partitions of [n] in canonical order."""
    return sorted(SetPartition._raw(n, tuple(sorted(b))) for b in _set_partitions(n))


def enumerate_int_partitions(n):
    """All integer partitions of n, in decreasing lexicographic order."""

    def generate(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in generate(remaining - part, part):
                yield (part,) + rest

    return [IntPartition(parts) for parts in generate(n, n)]


@lru_cache(maxsize=None)
def permutations(n):
    """All of S_n in lexicographic image order."""
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def adjacent_transpositions(n):
    """Coxeter generators (i i+1) of S_n."""
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n)]


def cycle_type(sigma):
    """Cycle type of a permutation."""
    return IntPartition(len(cycle) for cycle in sigma.cycles())


def count_cycle_type(shape):
    """Number of elements of S_n with the given cycle type, n!/prod j^a_j a_j!."""
    denominator = 1
    for part, count in shape.multiplicities().items():
        denominator *= part ** count * factorial(count)
    return factorial(shape.size) // denominator


def bell_numbers(limit):
    """Bell numbers B_0..B_limit from the Bell triangle."""
    numbers = [1]
    row = [1]
    for _ in range(limit):
        new_row = [row[-1]]
        for value in row:
            new_row.append(new_row[-1] + value)
        numbers.append(new_row[0])
        row = new_row
    return numbers[: limit + 1]


def order_preserving_map(mask):
    """The increasing bijection i_A from [|A|] onto A, as a tuple of images."""
    return members_of(mask)


def restricted_permutation(sigma, mask):
    """tau = i_{sigma A}^{-1} sigma i_A as an element of S_{|A|}."""
    source = members_of(mask)
    target = members_of(sigma.apply_mask(mask))
    position = {element: index for index, element in enumerate(target, start=1)}
    return Permutation(position[sigma(element)] for element in source)


def block_images(sigma, partition):
    """Position of sigma(A_a) among the blocks of sigma(partition), for each a."""
    target = act_partition(sigma, partition)
    position = {block: index for index, block in enumerate(target.blocks)}
    return [position[sigma.apply_mask(block)] for block in partition.blocks]


@lru_cache(maxsize=None)
def young_subgroup(partition):
    """The stabilizer S_A of a set partition, block permutations included."""
    return tuple(
        sigma
        for sigma in permutations(partition.n)
        if act_partition(sigma, partition) == partition
    )


def canonical_partition(shape):
    """Set partition of type shape with consecutive blocks, largest first."""
    blocks = []
    start = 1
    for part in shape:
        blocks.append(mask_of(range(start, start + part)))
        start += part
    return SetPartition(shape.size, blocks)


class PartitionLattice:
    """Index tables for the set partitions of [n]: meet, refinement and action."""

    logger = logging.getLogger("SP - PartitionLattice")

    def __init__(self, n):
        """Tabulate meet and the S_n-action for n."""
        self.n = n
        self.partitions = enumerate_set_partitions(n)
        self.index = {p: i for i, p in enumerate(self.partitions)}
        size = len(self.partitions)
        self.meet = [
            [self.index[meet(a, b)] for b in self.partitions] for a in self.partitions
        ]
        self.leq = [
            [self.meet[a][b] == a for b in range(size)] for a in range(size)
        ]
        self.group = permutations(n)
        self.action = [
            [self.index[act_partition(sigma, p)] for p in self.partitions]
            for sigma in self.group
        ]
        self.logger.debug("Tabulated %d partitions of [%d]", size, n)

    def sim(self, first, second, alpha):
        """first ~_alpha second on indices."""
        return self.meet[first][alpha] == self.meet[second][alpha]


def check_axioms_A1_A5(n):  # pylint:disable=invalid-name,too-many-locals,too-many-branches
    """Exhaustively verify the axioms of the set-partition stratification model.

    Both the stratum index set and the sheaf index set are the set partitions
    of [n] ordered by refinement; i ~_alpha j means meet(i, alpha) =
    meet(j, alpha).

    :param n: Ground set size.
    :type n: int
    :return: Report with the first counterexample, if any.
    :rtype: :obj:`sheaf_plethysm.lib.report.Report`
    """
    report = Report("axioms", n)
    if n < 1 or n > 6:
        raise ValueError("Axiom check supports 1 <= n <= 6, got {}".format(n))
    lattice = PartitionLattice(n)
    parts = lattice.partitions
    size = len(parts)
    leq = lattice.leq

    def name(index):
        return [list(m) for m in parts[index].block_members()]

    # (A1) order preserved by every sigma.
    for g, table in enumerate(lattice.action):
        for i in range(size):
            for j in range(size):
                if leq[i][j] != leq[table[i]][table[j]]:
                    return report.fail(
                        {"axiom": "A1", "sigma": list(lattice.group[g].images),
                         "i": name(i), "j": name(j)}
                    )
    # (A2) i ~_alpha j iff sigma i ~_{sigma alpha} sigma j.
    for g, table in enumerate(lattice.action):
        for alpha in range(size):
            forward = {}
            backward = {}
            for i in range(size):
                label = lattice.meet[i][alpha]
                image = lattice.meet[table[i]][table[alpha]]
                consistent = forward.setdefault(label, image) == image
                if not consistent or backward.setdefault(image, label) != label:
                    return report.fail(
                        {"axiom": "A2", "sigma": list(lattice.group[g].images),
                         "alpha": name(alpha), "i": name(i)}
                    )
    # (A3) alpha >= beta means beta refines alpha; ~_alpha implies ~_beta.
    for alpha in range(size):
        for beta in range(size):
            if not leq[beta][alpha]:
                continue
            labels = {}
            for i in range(size):
                finer = lattice.meet[i][beta]
                if labels.setdefault(lattice.meet[i][alpha], finer) != finer:
                    return report.fail(
                        {"axiom": "A3", "alpha": name(alpha), "beta": name(beta),
                         "i": name(i)}
                    )
    below = [[i for i in range(size) if leq[i][j]] for j in range(size)]
    # (A4) for i <= j <= k: i ~ k iff i ~ j and j ~ k.
    for k in range(size):
        for j in below[k]:
            for i in below[j]:
                for alpha in range(size):
                    left = lattice.sim(i, k, alpha)
                    right = lattice.sim(i, j, alpha) and lattice.sim(j, k, alpha)
                    if left != right:
                        return report.fail(
                            {"axiom": "A4", "i": name(i), "j": name(j), "k": name(k),
                             "alpha": name(alpha)}
                        )
    # (A5) witness k' = meet(i, k).
    witnesses = 0
    for j in range(size):
        for i in below[j]:
            for k in below[j]:
                witness = lattice.meet[i][k]
                for alpha in range(size):
                    if lattice.sim(k, j, alpha) and not lattice.sim(witness, i, alpha):
                        return report.fail(
                            {"axiom": "A5", "i": name(i), "j": name(j), "k": name(k),
                             "alpha": name(alpha)}
                        )
                for beta in range(size):
                    if lattice.sim(i, j, beta) and not lattice.sim(witness, k, beta):
                        return report.fail(
                            {"axiom": "A5", "i": name(i), "j": name(j), "k": name(k),
                             "beta": name(beta)}
                        )
                witnesses += 1
    report.details = {"partitions": size, "a5_triples": witnesses}
    LOGGER.info("Axioms A1-A5 verified for n=%d over %d partitions", n, size)
    return report
