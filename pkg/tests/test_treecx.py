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
"""Tests for index trees, the differential and psi."""
import pytest

from sheaf_plethysm.lib.combinat import Permutation, SetPartition, mask_of
from sheaf_plethysm.lib.treecx import (
    EXCEPTIONAL,
    ORDINARY,
    Contraction,
    ContractionError,
    FormalTerm,
    IndexTree,
    InvalidTreeError,
    act_tree,
    check_d_squared,
    check_equivariance,
    check_logformula,
    check_psi_monotone,
    contractions_of,
    differential,
    distinguished_node,
    dump_graph,
    enumerate_trees,
    glue,
    hierarchy_count,
    psi,
    psi_matching,
    sign_identity_check,
    sign_l,
    sign_s,
    split,
    two_block_partitions,
)

PAIRS_TREE = IndexTree(4, [[1], [2], [3], [4], [1, 2], [3, 4], [1, 2, 3, 4]])


class TestIndexTree:
    """Label families and enumeration."""

    def test_overlap_rejected(self):
        """Labels must be nested or disjoint."""
        with pytest.raises(InvalidTreeError):
            IndexTree(3, [[1, 2], [2, 3], [1, 2, 3]])

    def test_union_rejected(self):
        """An internal label is the union of its sub-labels."""
        with pytest.raises(InvalidTreeError):
            IndexTree(3, [[1, 2], [1, 2, 3]])

    def test_root_required(self):
        """[n] is always a label."""
        with pytest.raises(InvalidTreeError):
            IndexTree(2, [[1], [2]])

    def test_structure(self):
        """Leaves, internal labels and children of the two-pairs tree."""
        assert PAIRS_TREE.leaves_partition() == SetPartition.singletons(4)
        assert PAIRS_TREE.k == 3
        assert sorted(PAIRS_TREE.children(mask_of([1, 2, 3, 4]))) == [
            mask_of([1, 2]),
            mask_of([3, 4]),
        ]
        assert PAIRS_TREE.is_exceptional(mask_of([1, 2]))
        assert not PAIRS_TREE.is_exceptional(mask_of([1, 2, 3, 4]))

    def test_counts(self):
        """Trees of order 2 and 3 by number of internal nodes."""
        assert [len(enumerate_trees(2, k)) for k in range(2)] == [1, 1]
        assert [len(enumerate_trees(3, k)) for k in range(3)] == [1, 4, 3]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_hierarchy_count(self, n):
        """Enumeration agrees with the independent recurrence."""
        assert len(enumerate_trees(n)) == hierarchy_count(n)

    def test_four(self):
        """There are 58 index trees of order 4."""
        assert hierarchy_count(4) == 58

    def test_range(self):
        """Enumeration is bounded."""
        with pytest.raises(ValueError):
            enumerate_trees(10)

    def test_dump_graph(self):
        """Edges go from parent to child."""
        text = dump_graph([IndexTree.leaf(2), IndexTree(2, [[1], [2], [1, 2]])])
        assert text == "{1,2}\n\n{1,2} -> {1}\n{1,2} -> {2}"


class TestSigns:
    """s(v), l(T, sigma) and the gluing identity."""

    def test_sign_s(self):
        """s counts the smaller internal labels."""
        assert sign_s(PAIRS_TREE, mask_of([1, 2])) == 1
        assert sign_s(PAIRS_TREE, mask_of([3, 4])) == -1
        with pytest.raises(ContractionError):
            sign_s(PAIRS_TREE, mask_of([1]))

    def test_sign_l(self):
        """Swapping the two pairs inverts their order."""
        sigma = Permutation.from_cycles(4, [(1, 3), (2, 4)])
        assert sign_l(PAIRS_TREE, sigma) == 1
        assert act_tree(sigma, PAIRS_TREE) == PAIRS_TREE

    def test_glue_and_split(self):
        """split undoes glue."""
        partition = SetPartition(3, [(1, 3), (2,)])
        trees = [IndexTree.leaf(1), IndexTree(2, [[1], [2], [1, 2]])]
        tree = glue(partition, trees)
        assert tree == IndexTree(3, [[1], [3], [1, 3], [2], [1, 2, 3]])
        assert split(tree) == (partition, trees)

    def test_glue_needs_two_blocks(self):
        """A one-block partition does not glue."""
        with pytest.raises(InvalidTreeError):
            glue(SetPartition.one_block(2), [IndexTree.leaf(2)])

    def test_split_leaf(self):
        """The single-leaf tree has nothing to split."""
        with pytest.raises(InvalidTreeError):
            split(IndexTree.leaf(3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_corrected_identity(self, n):
        """The identity with concatenation parities holds."""
        assert sign_identity_check(n, corrected=True).passed

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_literal_identity_small(self, n):
        """The literal identity holds up to n = 4."""
        assert sign_identity_check(n, corrected=False).passed

    @pytest.mark.slow
    def test_literal_identity_fails_at_five(self):
        """The literal identity has counterexamples at n = 5, the corrected one none."""
        report = sign_identity_check(5, corrected=False)
        assert not report.passed
        assert report.details["literal_failures"] > 0
        assert sign_identity_check(5, corrected=True).passed


class TestDifferential:
    """Contractions and d^2 = 0."""

    def test_contractions_of_pairs(self):
        """Two ordinary and two exceptional contractions."""
        kinds = sorted(c.kind for c in contractions_of(PAIRS_TREE))
        assert kinds == [EXCEPTIONAL, EXCEPTIONAL, ORDINARY, ORDINARY]

    def test_missing_contractions(self):
        """The root has no ordinary contraction, a leaf no exceptional one."""
        with pytest.raises(ContractionError):
            Contraction(PAIRS_TREE, mask_of([1, 2, 3, 4]), ORDINARY)
        with pytest.raises(ContractionError):
            Contraction(PAIRS_TREE, mask_of([1]), EXCEPTIONAL)
        with pytest.raises(ContractionError):
            Contraction(PAIRS_TREE, mask_of([1, 2]), "other")

    def test_exceptional_term(self):
        """An exceptional contraction merges the leaves with sign -s(v)."""
        contraction = Contraction(PAIRS_TREE, mask_of([1, 2]), EXCEPTIONAL)
        term = differential(4, 3)[PAIRS_TREE, contraction.target]
        assert term.coefficient == -1
        assert term.target_partition == SetPartition(4, [(1, 2), (3,), (4,)])

    def test_formal_composition(self):
        """Composites need matching endpoints."""
        first = FormalTerm(SetPartition.singletons(2), SetPartition.one_block(2), -1)
        second = FormalTerm(SetPartition.one_block(2), SetPartition.one_block(2), -1)
        assert first.then(second).coefficient == 1
        with pytest.raises(ValueError):
            second.then(first)

    def test_degree_range(self):
        """d_{n,k} needs 1 <= k <= n - 1."""
        with pytest.raises(ValueError):
            differential(3, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_d_squared(self, n):
        """d^2 = 0 formally."""
        assert check_d_squared(n).passed

    @pytest.mark.slow
    def test_d_squared_six(self):
        """d^2 = 0 for n = 6."""
        assert check_d_squared(6).passed

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_equivariance(self, n):
        """The differential commutes with the signed action."""
        assert check_equivariance(n).passed

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_logformula(self, n):
        """Trees reproduce the inductive logarithm."""
        assert check_logformula(n).passed


class TestPsi:
    """The filtration function psi."""

    def test_two_block_partitions(self):
        """[3] has three two-block partitions."""
        assert len(two_block_partitions(3)) == 3
        assert all(len(p) == 2 for p in two_block_partitions(4))

    def test_leaf_tree(self):
        """The single-leaf tree has the root as distinguished node."""
        partition = SetPartition(3, [(1,), (2, 3)])
        tree = IndexTree.leaf(3)
        assert distinguished_node(tree, partition) == mask_of([1, 2, 3])
        assert psi(tree, partition).psi2 == 0

    def test_needs_two_blocks(self):
        """psi is defined for two-block partitions only."""
        with pytest.raises(ValueError):
            psi(IndexTree.leaf(3), SetPartition.singletons(3))

    @pytest.mark.parametrize("swap", [False, True])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_monotone(self, n, swap):
        """Contractions never increase psi."""
        assert check_psi_monotone(n, swap).passed

    @pytest.mark.parametrize("swap", [False, True])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matching(self, n, swap):
        """psi-preserving contractions pair up all trees."""
        for partition in two_block_partitions(n):
            assert psi_matching(n, partition, swap).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("swap", [False, True])
    @pytest.mark.parametrize("n", [5, 6])
    def test_monotone_large(self, n, swap):
        """Contractions never increase psi at the largest sizes."""
        assert check_psi_monotone(n, swap).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("swap", [False, True])
    @pytest.mark.parametrize("n", [5, 6])
    def test_matching_large(self, n, swap):
        """psi-preserving contractions pair up all trees at the largest sizes."""
        for partition in two_block_partitions(n):
            assert psi_matching(n, partition, swap).passed
