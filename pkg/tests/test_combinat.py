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
"""Tests for set partitions and permutations."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheaf_plethysm.lib.combinat import (
    IntPartition,
    Permutation,
    SetPartition,
    SizeMismatchError,
    Subset,
    act_partition,
    bell_numbers,
    binary_cmp,
    block_images,
    canonical_partition,
    check_axioms_A1_A5,
    coincidence_partition,
    count_cycle_type,
    cycle_type,
    enumerate_int_partitions,
    enumerate_set_partitions,
    mask_of,
    meet,
    members_of,
    order_preserving_map,
    permutations,
    refines,
    restricted_permutation,
    young_subgroup,
)


def partitions_of(n):
    """Strategy drawing a set partition of [n]."""
    return st.sampled_from(enumerate_set_partitions(n))


def permutations_of(n):
    """Strategy drawing an element of S_n."""
    return st.sampled_from(permutations(n))


class TestSubsets:
    """Bit masks and the binary order."""

    def test_masks(self):
        """Element i is bit i."""
        assert mask_of([1, 3]) == 0b1010
        assert members_of(0b1010) == (1, 3)

    def test_zero_is_not_an_element(self):
        """Elements start at 1."""
        with pytest.raises(ValueError):
            mask_of([0, 1])

    def test_binary_order(self):
        """{3} is larger than {1, 2} in the binary order."""
        assert binary_cmp(Subset(3, [3]), Subset(3, [1, 2])) > 0
        with pytest.raises(SizeMismatchError):
            binary_cmp(Subset(2, [1]), Subset(3, [1]))

    def test_order_preserving_map(self):
        """i_A lists A increasingly."""
        assert order_preserving_map(mask_of([4, 2, 7])) == (2, 4, 7)


class TestSetPartition:
    """Set partitions and the refinement order."""

    def test_validation(self):
        """Blocks must be disjoint and cover [n]."""
        with pytest.raises(ValueError):
            SetPartition(3, [(1, 2), (2, 3)])
        with pytest.raises(ValueError):
            SetPartition(3, [(1, 2)])

    def test_bell_numbers(self):
        """Enumeration sizes are the Bell numbers."""
        bell = bell_numbers(6)
        assert bell == [1, 1, 2, 5, 15, 52, 203]
        for n in range(1, 7):
            assert len(enumerate_set_partitions(n)) == bell[n]

    def test_extremes(self):
        """Singletons refine everything; everything refines one block."""
        for partition in enumerate_set_partitions(4):
            assert refines(SetPartition.singletons(4), partition)
            assert refines(partition, SetPartition.one_block(4))

    def test_meet(self):
        """{12|3} meet {1|23} = {1|2|3}."""
        first = SetPartition(3, [(1, 2), (3,)])
        second = SetPartition(3, [(1,), (2, 3)])
        assert meet(first, second) == SetPartition.singletons(3)

    def test_size_mismatch(self):
        """Partitions of different sets do not compare."""
        with pytest.raises(SizeMismatchError):
            refines(SetPartition.singletons(2), SetPartition.singletons(3))

    def test_coincidence_partition(self):
        """Blocks are the level sets of the tuple."""
        assert coincidence_partition(("a", "b", "a")) == SetPartition(3, [(1, 3), (2,)])

    @given(partitions_of(5), partitions_of(5), partitions_of(5))
    def test_meet_laws(self, first, second, third):
        """meet is commutative, associative, idempotent and a lower bound."""
        assert meet(first, second) == meet(second, first)
        assert meet(meet(first, second), third) == meet(first, meet(second, third))
        assert meet(first, first) == first
        assert refines(meet(first, second), first)

    @given(permutations_of(5), permutations_of(5), partitions_of(5))
    def test_action_laws(self, sigma, tau, partition):
        """(sigma tau) A = sigma (tau A) and sigma sigma^-1 acts trivially."""
        assert act_partition(sigma * tau, partition) == act_partition(
            sigma, act_partition(tau, partition)
        )
        assert act_partition(sigma, act_partition(sigma.inverse(), partition)) == partition

    @given(permutations_of(4), partitions_of(4))
    def test_block_images(self, sigma, partition):
        """block_images finds the image of every block."""
        target = act_partition(sigma, partition)
        for block, position in zip(partition.blocks, block_images(sigma, partition)):
            assert target.blocks[position] == sigma.apply_mask(block)


class TestPermutation:
    """Permutations and cycle types."""

    def test_composition(self):
        """(sigma * tau)(i) = sigma(tau(i))."""
        sigma = Permutation([2, 3, 1])
        tau = Permutation.transposition(3, 1, 2)
        assert (sigma * tau).images == (3, 2, 1)

    def test_not_a_permutation(self):
        """Images must be a rearrangement of [n]."""
        with pytest.raises(ValueError):
            Permutation([1, 1, 2])

    def test_cycles_and_sign(self):
        """A 3-cycle is even, a transposition odd."""
        cycle = Permutation.from_cycles(4, [(1, 2, 3)])
        assert cycle.cycles() == [(1, 2, 3), (4,)]
        assert cycle.sign() == 1
        assert Permutation.transposition(4, 2, 4).sign() == -1

    def test_restricted_permutation(self):
        """sigma restricted to {2, 4} sending it to {1, 3} in reverse order."""
        sigma = Permutation([2, 3, 4, 1])
        assert restricted_permutation(sigma, mask_of([2, 4])).images == (2, 1)

    def test_class_sizes(self):
        """Cycle type counts add up to n!."""
        for n in range(1, 7):
            total = sum(count_cycle_type(shape) for shape in enumerate_int_partitions(n))
            assert total == len(permutations(n))

    def test_cycle_type(self):
        """Cycle type of a 2+2 permutation."""
        sigma = Permutation.from_cycles(4, [(1, 3), (2, 4)])
        assert cycle_type(sigma) == IntPartition([2, 2])

    def test_young_subgroup(self):
        """Stabilizer of {12|34} includes the swap of the two blocks."""
        partition = canonical_partition(IntPartition([2, 2]))
        assert len(young_subgroup(partition)) == 8


class TestAxioms:
    """Exhaustive axiom check of the set-partition model."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_axioms(self, n):
        """A1 to A5 hold."""
        assert check_axioms_A1_A5(n).passed

    @pytest.mark.slow
    def test_axioms_five(self):
        """A1 to A5 hold for n = 5."""
        assert check_axioms_A1_A5(5).passed

    def test_bounds(self):
        """Sizes outside the supported range raise."""
        with pytest.raises(ValueError):
            check_axioms_A1_A5(7)
