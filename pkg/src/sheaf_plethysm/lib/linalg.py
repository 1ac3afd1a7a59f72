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
"""Exact rational matrices on top of sympy's sparse DomainMatrix.

All helpers accept empty shapes; sympy's elimination routines are only
called on matrices with at least one row and one column.
"""
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def qq(value):
    """Convert an int or Fraction to a QQ element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(element):
    """Convert a QQ element to a Fraction."""
    return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))


def from_entries(nrows, ncols, entries):
    """Sparse matrix from {(row, col): value}; zero values are dropped."""
    dok = {}
    for (row, col), value in entries.items():
        value = qq(value)
        if value:
            dok[row, col] = value
    return DomainMatrix.from_dok(dok, (nrows, ncols), QQ)


def matrix(rows, ncols=None):
    """Matrix from a list of rows of ints or Fractions.

    :param rows: Row lists.
    :type rows: list
    :param ncols: Column count, needed when rows is empty.
    :type ncols: int
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return from_entries(
        len(rows),
        ncols,
        {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v},
    )


def zeros(nrows, ncols):
    """Zero matrix of the given shape."""
    return DomainMatrix.from_dok({}, (nrows, ncols), QQ)


def identity(size):
    """Identity matrix."""
    return DomainMatrix.from_dok({(i, i): QQ(1) for i in range(size)}, (size, size), QQ)


def entries(mat):
    """Nonzero entries as {(row, col): Fraction}."""
    return {key: to_fraction(value) for key, value in mat.to_dok().items()}


def to_rows(mat):
    """Dense list of Fraction rows."""
    rows = [[Fraction(0)] * mat.shape[1] for _ in range(mat.shape[0])]
    for (row, col), value in entries(mat).items():
        rows[row][col] = value
    return rows


def scale(mat, factor):
    """Multiply every entry by a rational factor."""
    factor = Fraction(factor)
    if factor == 1:
        return mat
    return DomainMatrix.from_dok(
        {k: v * qq(factor) for k, v in mat.to_dok().items() if factor},
        mat.shape,
        QQ,
    )


def is_zero(mat):
    """Whether all entries vanish."""
    return not mat.to_dok()


def equal(first, second):
    """Entrywise equality of two matrices of equal shape."""
    return first.shape == second.shape and first.to_dok() == second.to_dok()


def matmul(first, second):
    """Matrix product with empty shapes allowed."""
    if first.shape[1] != second.shape[0]:
        raise ValueError(
            "Cannot multiply {} by {}".format(first.shape, second.shape)
        )
    if 0 in first.shape or 0 in second.shape:
        return zeros(first.shape[0], second.shape[1])
    return first.matmul(second)


def add(first, second):
    """Matrix sum."""
    if first.shape != second.shape:
        raise ValueError("Cannot add {} and {}".format(first.shape, second.shape))
    dok = dict(first.to_dok())
    for key, value in second.to_dok().items():
        total = dok.get(key, QQ(0)) + value
        if total:
            dok[key] = total
        else:
            dok.pop(key, None)
    return DomainMatrix.from_dok(dok, first.shape, QQ)


def submatrix(mat, rows, cols):
    """Rows and columns by index lists."""
    rows, cols = list(rows), list(cols)
    if not rows or not cols:
        return zeros(len(rows), len(cols))
    return mat.extract(rows, cols)


def embed(mat, nrows, ncols, rows, cols):
    """Place mat at the given row and column indices of a larger zero matrix."""
    return DomainMatrix.from_dok(
        {(rows[i], cols[j]): v for (i, j), v in mat.to_dok().items()},
        (nrows, ncols),
        QQ,
    )


def block(nrows, ncols, pieces):
    """Assemble a matrix from pieces given as (row offset, col offset, matrix)."""
    dok = {}
    for row_offset, col_offset, piece in pieces:
        for (i, j), value in piece.to_dok().items():
            key = (row_offset + i, col_offset + j)
            total = dok.get(key, QQ(0)) + value
            if total:
                dok[key] = total
            else:
                dok.pop(key, None)
    return DomainMatrix.from_dok(dok, (nrows, ncols), QQ)


def kron(first, second):
    """Kronecker product; the first factor indexes the most significant position."""
    rows2, cols2 = second.shape
    dok = {}
    right = second.to_dok()
    for (i, j), left_value in first.to_dok().items():
        for (k, m), right_value in right.items():
            dok[i * rows2 + k, j * cols2 + m] = left_value * right_value
    return DomainMatrix.from_dok(
        dok, (first.shape[0] * rows2, first.shape[1] * cols2), QQ
    )


def trace(mat):
    """Sum of the diagonal entries as a Fraction."""
    return sum(
        (to_fraction(v) for (i, j), v in mat.to_dok().items() if i == j), Fraction(0)
    )


def rank(mat):
    """Rank over QQ."""
    if 0 in mat.shape or is_zero(mat):
        return 0
    return mat.rank()


def pivot_columns(mat):
    """Indices of the pivot columns of the reduced row echelon form."""
    if 0 in mat.shape or is_zero(mat):
        return []
    _, pivots = mat.rref()
    return list(pivots)


def image(mat):
    """Basis of the column space: the pivot columns of mat, lowest index first."""
    return submatrix(mat, range(mat.shape[0]), pivot_columns(mat))


def kernel(mat):
    """Basis of the null space as the columns of a matrix."""
    nrows, ncols = mat.shape
    if ncols == 0:
        return zeros(0, 0)
    if nrows == 0 or is_zero(mat):
        return identity(ncols)
    return mat.nullspace().transpose()


def inverse(mat):
    """Inverse of a square invertible matrix."""
    if mat.shape[0] != mat.shape[1]:
        raise ValueError("Only square matrices are invertible")
    if mat.shape[0] == 0:
        return mat
    return mat.inv()


def is_invertible(mat):
    """Whether mat is square of full rank."""
    return mat.shape[0] == mat.shape[1] and rank(mat) == mat.shape[0]


def coordinates(basis, vectors):
    """Solve basis * X = vectors for a basis with independent columns.

    :param basis: Matrix with linearly independent columns.
    :type basis: :obj:`DomainMatrix`
    :param vectors: Columns to express in the basis.
    :type vectors: :obj:`DomainMatrix`
    :return: Coordinate matrix X.
    :rtype: :obj:`DomainMatrix`
    :raises ValueError: If some column is outside the span.
    """
    size = basis.shape[1]
    if size == 0 or vectors.shape[1] == 0:
        if not is_zero(vectors):
            raise ValueError("Vectors outside the span of an empty basis")
        return zeros(size, vectors.shape[1])
    rows = pivot_columns(basis.transpose())
    if len(rows) != size:
        raise ValueError("Basis columns are linearly dependent")
    solution = matmul(
        inverse(submatrix(basis, rows, range(size))),
        submatrix(vectors, rows, range(vectors.shape[1])),
    )
    if not equal(matmul(basis, solution), vectors):
        raise ValueError("Vectors outside the span of the basis")
    return solution


def complement(basis, dimension):
    """Standard basis indices completing the columns of basis to a basis."""
    augmented = block(
        dimension,
        basis.shape[1] + dimension,
        [(0, 0, basis), (0, basis.shape[1], identity(dimension))],
    )
    return [p - basis.shape[1] for p in pivot_columns(augmented) if p >= basis.shape[1]]


def quotient(basis, dimension):
    """Complement indices and the projection onto the quotient by span(basis).

    :return: Standard basis indices spanning a complement and the matrix
        mapping ambient coordinates to coordinates on that complement.
    :rtype: tuple
    """
    indices = complement(basis, dimension)
    size = basis.shape[1]
    if dimension == 0:
        return indices, zeros(0, 0)
    square = block(
        dimension,
        dimension,
        [(0, 0, basis)]
        + [
            (0, size + position, from_entries(dimension, 1, {(index, 0): 1}))
            for position, index in enumerate(indices)
        ],
    )
    projection = submatrix(
        inverse(square), range(size, dimension), range(dimension)
    )
    return indices, projection
