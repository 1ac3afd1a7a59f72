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
"""Tests for weighted graded spaces."""
import pytest

from sheaf_plethysm.lib import linalg
from sheaf_plethysm.lib.coeffring import LaurentPoly
from sheaf_plethysm.lib.graded import (
    WeightedSpace,
    check_homogeneous,
    graded_image,
    graded_kernel,
    graded_quotient,
    graded_ranks,
    invariant_basis,
    supertrace,
    tensor_all,
)

EVEN = ((0,), 0)
ODD = ((0,), 1)
WEIGHT_ONE = ((1,), 0)


class TestWeightedSpace:
    """Weighted spaces and characters."""

    def test_character(self):
        """Odd vectors count negatively."""
        space = WeightedSpace(1, [EVEN, ODD, WEIGHT_ONE])
        assert space.character() == LaurentPoly(1, {(1,): 1})

    def test_weight_length(self):
        """Weights need one entry per variable."""
        with pytest.raises(ValueError):
            WeightedSpace(2, [((1,), 0)])

    def test_tensor(self):
        """Characters multiply and parities add."""
        first = WeightedSpace(1, [EVEN, WEIGHT_ONE])
        second = WeightedSpace(1, [ODD])
        product = tensor_all([first, second], 1)
        assert product.basis == (((0,), 1), ((1,), 1))
        assert product.character() == first.character() * second.character()

    def test_shift_and_twist(self):
        """shift flips parity and twist moves weights."""
        space = WeightedSpace.line(1)
        assert space.shift().character() == -space.character()
        assert space.twist((2,)).basis == (((2,), 0),)

    def test_json_form(self):
        """to_dict and from_dict agree."""
        space = WeightedSpace(1, [EVEN, ODD])
        assert WeightedSpace.from_dict(1, space.to_dict()) == space


class TestGradedMaps:
    """Block-wise kernels, images and quotients."""

    def setup_method(self):
        """A map from two even vectors of weight 0 onto one."""
        self.source = WeightedSpace(1, [EVEN, EVEN, ODD])
        self.target = WeightedSpace(1, [EVEN, ODD])
        self.mat = linalg.matrix([[1, 1, 0], [0, 0, 1]])

    def test_homogeneous(self):
        """Entries joining different labels are rejected."""
        check_homogeneous(self.mat, self.source, self.target)
        with pytest.raises(ValueError):
            check_homogeneous(linalg.matrix([[0, 0, 1], [0, 0, 0]]), self.source, self.target)

    def test_ranks(self):
        """Rank per label."""
        assert graded_ranks(self.mat, self.source, self.target) == {EVEN: 1, ODD: 1}

    def test_kernel(self):
        """The kernel is the even line spanned by e1 - e2."""
        basis, space = graded_kernel(self.mat, self.source, self.target)
        assert space.basis == (EVEN,)
        assert linalg.is_zero(linalg.matmul(self.mat, basis))

    def test_image_and_quotient(self):
        """The map is onto, so the quotient by the image is zero."""
        basis, space = graded_image(self.mat, self.source, self.target)
        assert space == self.target
        indices, _, quotient = graded_quotient(basis, self.target)
        assert indices == []
        assert quotient.dim == 0

    def test_invariants(self):
        """The swap of two even vectors fixes their sum."""
        space = WeightedSpace(1, [EVEN, EVEN])
        swap = linalg.matrix([[0, 1], [1, 0]])
        basis, invariants = invariant_basis(space, [swap])
        assert invariants.dim == 1
        assert linalg.equal(linalg.matmul(swap, basis), basis)

    def test_supertrace(self):
        """The odd diagonal counts with a minus sign."""
        space = WeightedSpace(1, [WEIGHT_ONE, ODD])
        assert supertrace(linalg.identity(2), space) == LaurentPoly(1, {(1,): 1, (0,): -1})
