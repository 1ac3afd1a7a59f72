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
"""Tests for exact rational matrices."""
from fractions import Fraction

import pytest

from sheaf_plethysm.lib import linalg


class TestLinalg:
    """Matrix helpers over QQ."""

    def test_round_trip_rows(self):
        """to_rows returns Fractions in the original layout."""
        mat = linalg.matrix([[1, Fraction(1, 2)], [0, -3]])
        assert linalg.to_rows(mat) == [[1, Fraction(1, 2)], [0, -3]]

    def test_sparse_entries(self):
        """Sparse construction drops zeros and reads back the nonzero entries."""
        mat = linalg.from_entries(2, 3, {(0, 1): Fraction(2, 3), (1, 2): 0, (1, 0): -1})
        assert linalg.entries(mat) == {(0, 1): Fraction(2, 3), (1, 0): -1}
        assert linalg.entries(linalg.scale(mat, 0)) == {}

    def test_empty_shapes(self):
        """Products, ranks and kernels accept empty shapes."""
        empty = linalg.zeros(0, 3)
        assert linalg.matmul(linalg.zeros(2, 0), empty).shape == (2, 3)
        assert linalg.rank(empty) == 0
        assert linalg.equal(linalg.kernel(empty), linalg.identity(3))
        assert linalg.kernel(linalg.zeros(2, 0)).shape == (0, 0)

    def test_shape_mismatch(self):
        """Incompatible shapes raise ValueError."""
        with pytest.raises(ValueError):
            linalg.matmul(linalg.zeros(2, 3), linalg.zeros(2, 3))
        with pytest.raises(ValueError):
            linalg.add(linalg.zeros(1, 2), linalg.zeros(2, 1))

    def test_kernel_and_image(self):
        """rank + nullity = number of columns and the kernel is killed."""
        mat = linalg.matrix([[1, 2, 3], [2, 4, 6]])
        kernel = linalg.kernel(mat)
        assert kernel.shape == (3, 2)
        assert linalg.is_zero(linalg.matmul(mat, kernel))
        assert linalg.image(mat).shape == (2, 1)

    def test_kron(self):
        """The first factor indexes the most significant position."""
        first = linalg.matrix([[0, 1], [1, 0]])
        second = linalg.matrix([[2]])
        assert linalg.to_rows(linalg.kron(first, second)) == [[0, 2], [2, 0]]
        assert linalg.trace(linalg.kron(linalg.identity(2), linalg.identity(3))) == 6

    def test_inverse(self):
        """A product with the inverse is the identity."""
        mat = linalg.matrix([[2, 1], [1, 1]])
        assert linalg.is_invertible(mat)
        assert linalg.equal(linalg.matmul(mat, linalg.inverse(mat)), linalg.identity(2))
        assert not linalg.is_invertible(linalg.matrix([[1, 1], [1, 1]]))

    def test_coordinates(self):
        """Coordinates in a basis reproduce the vectors."""
        basis = linalg.matrix([[1, 0], [1, 1], [0, 1]])
        vectors = linalg.matrix([[2], [5], [3]])
        assert linalg.to_rows(linalg.coordinates(basis, vectors)) == [[2], [3]]
        with pytest.raises(ValueError):
            linalg.coordinates(basis, linalg.matrix([[1], [0], [1]]))

    def test_quotient(self):
        """The projection kills the subspace and is onto the complement."""
        basis = linalg.matrix([[1], [1], [0]])
        indices, projection = linalg.quotient(basis, 3)
        assert len(indices) == 2
        assert linalg.is_zero(linalg.matmul(projection, basis))
        assert linalg.rank(projection) == 2

    def test_block_sums_overlaps(self):
        """Overlapping pieces add up."""
        total = linalg.block(1, 1, [(0, 0, linalg.identity(1)), (0, 0, linalg.identity(1))])
        assert linalg.entries(total) == {(0, 0): 2}
