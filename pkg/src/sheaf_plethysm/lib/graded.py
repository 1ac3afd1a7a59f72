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
"""Torus-weighted Z/2-graded vector spaces and block-wise linear algebra.

Every map between weighted spaces in this package is homogeneous: a basis
vector of weight w and parity p maps into the span of basis vectors with the
same weight and parity. Kernels, images and quotients are therefore computed
one (weight, parity) block at a time, which keeps all chosen bases
homogeneous.
"""
from collections import Counter

from . import linalg
from .coeffring import LaurentPoly


class WeightedSpace:
    """Finite-dimensional space with a basis of (weight, parity) labels."""

    __slots__ = ("nvars", "basis")

    def __init__(self, nvars, basis=()):
        """Weighted space.

        :param nvars: Number of torus variables.
        :type nvars: int
        :param basis: Sequence of (weight vector, parity) pairs.
        :type basis: iterable
        """
        cleaned = []
        for weight, parity in basis:
            weight = tuple(int(value) for value in weight)
            if len(weight) != nvars:
                raise ValueError(
                    "Weight {} does not have {} entries".format(weight, nvars)
                )
            cleaned.append((weight, int(parity) % 2))
        self.nvars = nvars
        self.basis = tuple(cleaned)

    @classmethod
    def zero(cls, nvars):
        """The zero space."""
        return cls(nvars)

    @classmethod
    def line(cls, nvars, weight=None, parity=0):
        """Rank one space of the given weight and parity."""
        return cls(nvars, [(weight or (0,) * nvars, parity)])

    @property
    def dim(self):
        """Dimension."""
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def character(self):
        """Graded character: the sum of (-1)^parity t^weight over the basis."""
        terms = Counter()
        for weight, parity in self.basis:
            terms[weight] += -1 if parity else 1
        return LaurentPoly(self.nvars, terms)

    def shift(self, amount=1):
        """Parity shift by amount."""
        return WeightedSpace(
            self.nvars, [(w, p + amount) for w, p in self.basis]
        )

    def twist(self, weight):
        """Tensor with the even line of the given weight."""
        return WeightedSpace(
            self.nvars,
            [(tuple(a + b for a, b in zip(w, weight)), p) for w, p in self.basis],
        )

    def direct_sum(self, other):
        """Direct sum; the basis of self comes first."""
        if other.nvars != self.nvars:
            raise ValueError("Variable count mismatch")
        return WeightedSpace(self.nvars, self.basis + other.basis)

    def tensor(self, other):
        """Tensor product; the index of self is the most significant one."""
        if other.nvars != self.nvars:
            raise ValueError("Variable count mismatch")
        return WeightedSpace(
            self.nvars,
            [
                (tuple(a + b for a, b in zip(w1, w2)), p1 + p2)
                for w1, p1 in self.basis
                for w2, p2 in other.basis
            ],
        )

    def subspace(self, indices):
        """Space spanned by the basis vectors with the given indices."""
        return WeightedSpace(self.nvars, [self.basis[i] for i in indices])

    def blocks(self):
        """Mapping (weight, parity) -> basis indices, sorted by key."""
        blocks = {}
        for index, label in enumerate(self.basis):
            blocks.setdefault(label, []).append(index)
        return dict(sorted(blocks.items()))

    def to_dict(self):
        """JSON-ready form."""
        return [{"weight": list(w), "parity": p} for w, p in self.basis]

    @classmethod
    def from_dict(cls, nvars, document):
        """Inverse of :meth:`to_dict`."""
        return cls(nvars, [(entry["weight"], entry["parity"]) for entry in document])

    def __eq__(self, other):
        return (
            isinstance(other, WeightedSpace)
            and self.nvars == other.nvars
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.nvars, self.basis))

    def __repr__(self):
        return "WeightedSpace({}, {})".format(self.nvars, list(self.basis))


def tensor_all(spaces, nvars):
    """Tensor product of a sequence of spaces, the first being most significant."""
    result = WeightedSpace(nvars, [((0,) * nvars, 0)])
    for space in spaces:
        result = result.tensor(space)
    return result


def check_homogeneous(mat, source, target):
    """Raise ValueError unless mat maps each basis label into the same label."""
    if mat.shape != (target.dim, source.dim):
        raise ValueError(
            "Matrix shape {} does not match {} -> {}".format(
                mat.shape, source.dim, target.dim
            )
        )
    for (row, col) in mat.to_dok():
        if target.basis[row] != source.basis[col]:
            raise ValueError(
                "Entry ({}, {}) joins {} and {}".format(
                    row, col, source.basis[col], target.basis[row]
                )
            )


def _block_pairs(source, target):
    target_blocks = target.blocks()
    for label, columns in source.blocks().items():
        yield label, columns, target_blocks.get(label, [])


def graded_ranks(mat, source, target):
    """Rank of a homogeneous map in each (weight, parity) block.

    :return: Mapping label -> rank, labels with rank 0 omitted.
    :rtype: dict
    """
    ranks = {}
    for label, columns, rows in _block_pairs(source, target):
        value = linalg.rank(linalg.submatrix(mat, rows, columns))
        if value:
            ranks[label] = value
    return ranks


def graded_kernel(mat, source, target):
    """Homogeneous basis of the kernel of a homogeneous map.

    :return: Basis matrix (columns in source coordinates) and the kernel as
        a weighted space.
    :rtype: tuple
    """
    pieces = []
    labels = []
    for label, columns, rows in _block_pairs(source, target):
        basis = linalg.kernel(linalg.submatrix(mat, rows, columns))
        pieces.append((columns, basis))
        labels.extend([label] * basis.shape[1])
    return _assemble(pieces, source.dim), WeightedSpace(source.nvars, labels)


def graded_image(mat, source, target):
    """Homogeneous basis of the image of a homogeneous map.

    :return: Basis matrix (columns in target coordinates) and the image as a
        weighted space.
    :rtype: tuple
    """
    pieces = []
    labels = []
    for label, columns, rows in _block_pairs(source, target):
        basis = linalg.image(linalg.submatrix(mat, rows, columns))
        pieces.append((rows, basis))
        labels.extend([label] * basis.shape[1])
    return _assemble(pieces, target.dim), WeightedSpace(target.nvars, labels)


def _assemble(pieces, dimension):
    total = sum(basis.shape[1] for _, basis in pieces)
    entries = {}
    offset = 0
    for rows, basis in pieces:
        for (row, col), value in linalg.entries(basis).items():
            entries[rows[row], offset + col] = value
        offset += basis.shape[1]
    return linalg.from_entries(dimension, total, entries)


def graded_quotient(basis, space):
    """Quotient of a space by the span of homogeneous columns.

    :return: Complement indices, the projection onto the quotient and the
        quotient as a weighted space.
    :rtype: tuple
    """
    indices, projection = linalg.quotient(basis, space.dim)
    return indices, projection, space.subspace(indices)


def inclusion(indices, dimension):
    """Matrix including the standard basis vectors with the given indices."""
    return linalg.from_entries(
        dimension, len(indices), {(index, k): 1 for k, index in enumerate(indices)}
    )


def invariant_basis(space, operators):
    """Homogeneous basis of the common fixed space of the given operators.

    :param space: Space acted on.
    :type space: :obj:`WeightedSpace`
    :param operators: Square homogeneous matrices on the space.
    :type operators: list
    :return: Basis matrix and the invariants as a weighted space.
    :rtype: tuple
    """
    if not operators:
        return linalg.identity(space.dim), space
    identity = linalg.identity(space.dim)
    stacked = linalg.block(
        space.dim * len(operators),
        space.dim,
        [
            (k * space.dim, 0, linalg.add(op, linalg.scale(identity, -1)))
            for k, op in enumerate(operators)
        ],
    )
    stacked_target = WeightedSpace(space.nvars, space.basis * len(operators))
    return graded_kernel(stacked, space, stacked_target)


def supertrace(mat, space):
    """Graded trace of a homogeneous endomorphism as a Laurent polynomial."""
    terms = Counter()
    for (row, col), value in linalg.entries(mat).items():
        if row == col:
            weight, parity = space.basis[row]
            terms[weight] += -value if parity else value
    return LaurentPoly(space.nvars, terms)
