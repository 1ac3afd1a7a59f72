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
"""Index trees, their contractions and the signed differential.

An index tree of order n is stored as its label family: a laminar family of
subsets of [n] containing [n] in which every non-minimal member is the union
of its strict sub-members. Leaves are the minimal members.
"""
import itertools
import logging
from collections import Counter
from functools import lru_cache

from .combinat import (
    Permutation,
    SetPartition,
    adjacent_transpositions,
    block_images,
    full_mask,
    mask_of,
    meet,
    members_of,
    order_preserving_map,
    permutations,
    restricted_permutation,
)
from .report import Report

LOGGER = logging.getLogger(__name__)

ORDINARY = "ordinary"
EXCEPTIONAL = "exceptional"


class InvalidTreeError(ValueError):
    """A label family is not an index tree."""


class ContractionError(ValueError):
    """A contraction was requested at a node where it does not exist."""


class IndexTree:
    """Index tree of order n as a sorted tuple of label masks."""

    __slots__ = ("n", "labels", "_hash", "_children")

    def __init__(self, n, labels, check=True):
        """Index tree.

        :param n: Order.
        :type n: int
        :param labels: Label family as masks or element collections.
        :type labels: iterable
        :param check: Validate the family.
        :type check: bool
        :raises InvalidTreeError: If the family is not an index tree.
        """
        masks = {label if isinstance(label, int) else mask_of(label) for label in labels}
        self.n = n
        self.labels = tuple(sorted(masks))
        self._hash = hash((n, self.labels))
        self._children = None
        if check:
            self.validate()

    @classmethod
    def leaf(cls, n):
        """The single-leaf tree."""
        return cls(n, [full_mask(n)], check=False)

    def validate(self):
        """Check the index tree conditions.

        :raises InvalidTreeError: On the first violated condition.
        """
        root = full_mask(self.n)
        if root not in self.labels:
            raise InvalidTreeError("[{}] is not a label".format(self.n))
        for first, second in itertools.combinations(self.labels, 2):
            common = first & second
            if common and common not in (first, second):
                raise InvalidTreeError(
                    "Labels {} and {} overlap".format(members_of(first), members_of(second))
                )
        for label in self.labels:
            if label & ~root or not label:
                raise InvalidTreeError("{} is not a subset of [{}]".format(label, self.n))
            below = [other for other in self.labels if other & label == other != label]
            if below:
                union = 0
                for other in below:
                    union |= other
                if union != label:
                    raise InvalidTreeError(
                        "{} is not the union of its sub-labels".format(members_of(label))
                    )

    def children(self, label):
        """Maximal labels strictly inside label."""
        if self._children is None:
            children = {label: [] for label in self.labels}
            for label_ in self.labels:
                parent = self.parent(label_)
                if parent is not None:
                    children[parent].append(label_)
            self._children = children
        return self._children[label]

    def parent(self, label):
        """Smallest label strictly containing label, None for the root."""
        candidates = [
            other for other in self.labels if other & label == label and other != label
        ]
        return min(candidates, key=lambda mask: bin(mask).count("1")) if candidates else None

    def is_leaf(self, label):
        """Whether the label is minimal."""
        return not self.children(label)

    def is_exceptional(self, label):
        """Whether the node is internal and all of its children are leaves."""
        children = self.children(label)
        return bool(children) and all(self.is_leaf(child) for child in children)

    def leaves_partition(self):
        """The partition A(T) of [n] into leaves."""
        return SetPartition(self.n, [label for label in self.labels if self.is_leaf(label)])

    def internal_labels(self):
        """P(T): non-minimal labels in the binary order."""
        return [label for label in self.labels if not self.is_leaf(label)]

    @property
    def k(self):
        """Number of non-leaf nodes."""
        return len(self.internal_labels())

    def to_list(self):
        """Labels as sorted element lists."""
        return [list(members_of(label)) for label in self.labels]

    def __eq__(self, other):
        return (
            isinstance(other, IndexTree)
            and self.n == other.n
            and self.labels == other.labels
        )

    def __lt__(self, other):
        return (self.n, self.labels) < (other.n, other.labels)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "IndexTree({}, {})".format(self.n, self.to_list())


def leaves_partition(tree):
    """A(T)."""
    return tree.leaves_partition()


def internal_labels(tree):
    """P(T) in the binary order."""
    return tree.internal_labels()


def _mask_partitions(mask):
    """Set partitions of the elements of a mask, as tuples of masks."""
    if not mask:
        yield ()
        return
    lowest = mask & -mask
    rest = mask ^ lowest
    subset = rest
    while True:
        block = lowest | subset
        for tail in _mask_partitions(rest ^ subset):
            yield (block,) + tail
        if not subset:
            break
        subset = (subset - 1) & rest


@lru_cache(maxsize=None)
def _trees_on(mask):
    families = [frozenset([mask])]
    for blocks in _mask_partitions(mask):
        if len(blocks) < 2:
            continue
        for parts in itertools.product(*[_trees_on(block) for block in blocks]):
            families.append(frozenset([mask]).union(*parts))
    return tuple(families)


@lru_cache(maxsize=None)
def _enumerate(n):
    trees = [IndexTree(n, family, check=False) for family in _trees_on(full_mask(n))]
    return tuple(sorted(trees, key=lambda tree: (tree.k, tree.labels)))


def enumerate_trees(n, k=None):
    """All index trees of order n, optionally those with k non-leaf nodes.

    :param n: Order, 1 <= n <= 9.
    :type n: int
    :param k: Number of non-leaf nodes.
    :type k: int
    :return: Trees sorted by (k, labels).
    :rtype: list
    :raises ValueError: If n is out of range.
    """
    if n < 1 or n > 9:
        raise ValueError("Tree enumeration supports 1 <= n <= 9, got {}".format(n))
    trees = _enumerate(n)
    if k is None:
        return list(trees)
    return [tree for tree in trees if tree.k == k]


def hierarchy_count(n):
    """|T_n| from the recurrence t(n) = sum over partitions A of [n] of h(|A|).

    h(1) = 1 and h(k) sums, over set partitions of k leaves into at least two
    parts, the product of h(part size). Independent of :func:`enumerate_trees`.
    """

    @lru_cache(maxsize=None)
    def hierarchies(leaves):
        if leaves == 1:
            return 1
        total = 0
        for blocks in _mask_partitions(full_mask(leaves)):
            if len(blocks) < 2:
                continue
            product = 1
            for block in blocks:
                product *= hierarchies(bin(block).count("1"))
            total += product
        return total

    total = 0
    for blocks in _mask_partitions(full_mask(n)):
        total += hierarchies(len(blocks))
    return total


def act_tree(sigma, tree):
    """sigma(T): labels mapped elementwise."""
    return IndexTree(tree.n, [sigma.apply_mask(label) for label in tree.labels], check=False)


def s_exponent(tree, label):
    """Number of labels of P(T) smaller than label in the binary order.

    :raises ContractionError: If label is not internal.
    """
    internal = tree.internal_labels()
    if label not in internal:
        raise ContractionError("{} is not an internal label".format(members_of(label)))
    return internal.index(label)


def sign_s(tree, label):
    """s(v) = (-1)^(number of smaller labels in P(T))."""
    return -1 if s_exponent(tree, label) % 2 else 1


def inversions(sequence):
    """Number of pairs out of increasing order."""
    return sum(
        1
        for first, second in itertools.combinations(range(len(sequence)), 2)
        if sequence[first] > sequence[second]
    )


def sign_l(tree, sigma):
    """l(T, sigma) = #{A < B in P(T) : sigma(A) > sigma(B)}."""
    return inversions([sigma.apply_mask(label) for label in tree.internal_labels()])


class Contraction:
    """Ordinary or exceptional contraction of a tree at a node."""

    __slots__ = ("source", "node", "kind", "target")

    def __init__(self, source, node, kind):
        """Contraction of source at the node with the given label.

        :raises ContractionError: If the contraction does not exist.
        """
        if kind == ORDINARY:
            if source.is_leaf(node) or node == full_mask(source.n):
                raise ContractionError("Ordinary contraction needs an internal non-root node")
            labels = [label for label in source.labels if label != node]
        elif kind == EXCEPTIONAL:
            if not source.is_exceptional(node):
                raise ContractionError("Exceptional contraction needs leaf children")
            removed = set(source.children(node))
            labels = [label for label in source.labels if label not in removed]
        else:
            raise ContractionError("Unknown contraction kind {!r}".format(kind))
        self.source = source
        self.node = node
        self.kind = kind
        self.target = IndexTree(source.n, labels, check=False)

    def __repr__(self):
        return "Contraction({}, {}, {})".format(
            self.source.to_list(), list(members_of(self.node)), self.kind
        )


def contractions_of(tree):
    """All ordinary and exceptional contractions of a tree."""
    root = full_mask(tree.n)
    result = []
    for label in tree.internal_labels():
        if label != root:
            result.append(Contraction(tree, label, ORDINARY))
        if tree.is_exceptional(label):
            result.append(Contraction(tree, label, EXCEPTIONAL))
    return result


class FormalTerm:
    """coefficient * phi_{source, target} for set partitions source <= target."""

    __slots__ = ("source_partition", "target_partition", "coefficient")

    def __init__(self, source_partition, target_partition, coefficient):
        """Formal signed structure map."""
        self.source_partition = source_partition
        self.target_partition = target_partition
        self.coefficient = coefficient

    def then(self, other):
        """Composite other after self, collapsed by phi_{j,k} phi_{i,j} = phi_{i,k}.

        :raises ValueError: If the endpoints do not match.
        """
        if self.target_partition != other.source_partition:
            raise ValueError("Formal terms are not composable")
        return FormalTerm(
            self.source_partition,
            other.target_partition,
            self.coefficient * other.coefficient,
        )

    def __eq__(self, other):
        return (
            isinstance(other, FormalTerm)
            and self.source_partition == other.source_partition
            and self.target_partition == other.target_partition
            and self.coefficient == other.coefficient
        )

    def __hash__(self):
        return hash((self.source_partition, self.target_partition, self.coefficient))

    def __repr__(self):
        return "{:+d} phi({}, {})".format(
            self.coefficient, self.source_partition, self.target_partition
        )


def term_of(contraction):
    """Signed formal term of one contraction.

    Ordinary contractions carry s(v) times the identity, exceptional ones
    -s(v) times phi_{A(T), A(E(T, v))}.
    """
    sign = sign_s(contraction.source, contraction.node)
    source = contraction.source.leaves_partition()
    if contraction.kind == ORDINARY:
        return FormalTerm(source, source, sign)
    return FormalTerm(source, contraction.target.leaves_partition(), -sign)


def differential(n, k):
    """d_{n,k} as a mapping (T, T') -> FormalTerm over T in T_{n,k}.

    :raises ValueError: If k is not in 1..n-1.
    """
    if k < 1 or k > n - 1:
        raise ValueError("d_{{n,k}} needs 1 <= k <= n - 1, got k={}".format(k))
    matrix = {}
    for tree in enumerate_trees(n, k):
        for contraction in contractions_of(tree):
            matrix[tree, contraction.target] = term_of(contraction)
    return matrix


def classify_pair(first, second):
    """Label a composable pair of contractions by kinds and node relation."""
    kinds = first.kind[0].upper() + second.kind[0].upper()
    if first.node == second.node:
        relation = "same"
    elif first.node & second.node:
        relation = "nested"
    else:
        relation = "disjoint"
    return "{}-{}".format(kinds, relation)


def check_d_squared(n):
    """Formal d^2 = 0: coefficients of every phi_{A(T), A(T'')} cancel.

    :param n: Order, at most 7.
    :type n: int
    :rtype: :obj:`Report`
    """
    if n < 1 or n > 7:
        raise ValueError("d^2 check supports 1 <= n <= 7, got {}".format(n))
    report = Report("d2", n)
    cases = Counter()
    memo = {}

    def outgoing(tree):
        if tree not in memo:
            memo[tree] = contractions_of(tree)
        return memo[tree]

    checked = 0
    for tree in enumerate_trees(n):
        if tree.k < 2:
            continue
        totals = Counter()
        for first in outgoing(tree):
            first_term = term_of(first)
            for second in outgoing(first.target):
                composite = first_term.then(term_of(second))
                totals[second.target] += composite.coefficient
                cases[classify_pair(first, second)] += 1
        for target, total in totals.items():
            checked += 1
            if total:
                return report.fail(
                    {"tree": tree.to_list(), "target": target.to_list(), "total": total}
                )
    report.details = {"pairs": checked, "cases": dict(sorted(cases.items()))}
    LOGGER.info("d^2 = 0 verified for n=%d on %d tree pairs", n, checked)
    return report


def default_sigmas(n):
    """All of S_n for n <= 4, otherwise the Coxeter generators and a long cycle."""
    if n <= 4:
        return list(permutations(n))
    return adjacent_transpositions(n) + [Permutation.from_cycles(n, [tuple(range(1, n + 1))])]


def check_equivariance(n, sigmas=None):
    """Equivariance of the differential at the level of signs.

    For every contraction T -> T' at v and every sigma, sigma(T') must be the
    same kind of contraction of sigma(T) at sigma(v), and
    l(T', sigma) + s(v in T) = l(T, sigma) + s(sigma v in sigma T) mod 2.

    :rtype: :obj:`Report`
    """
    report = Report("equivariance", n)
    sigmas = list(sigmas) if sigmas is not None else default_sigmas(n)
    checked = 0
    for tree in enumerate_trees(n):
        contractions = contractions_of(tree)
        for sigma in sigmas:
            moved = act_tree(sigma, tree)
            for contraction in contractions:
                image = Contraction(moved, sigma.apply_mask(contraction.node), contraction.kind)
                if image.target != act_tree(sigma, contraction.target):
                    return report.fail(
                        {"tree": tree.to_list(), "sigma": list(sigma.images),
                         "node": list(members_of(contraction.node)), "reason": "target"}
                    )
                left = sign_l(contraction.target, sigma) + s_exponent(tree, contraction.node)
                right = sign_l(tree, sigma) + s_exponent(moved, image.node)
                if (left - right) % 2:
                    return report.fail(
                        {"tree": tree.to_list(), "sigma": list(sigma.images),
                         "node": list(members_of(contraction.node)),
                         "kind": contraction.kind, "reason": "sign"}
                    )
                checked += 1
    report.details = {"cases": checked, "sigmas": len(sigmas)}
    return report


def glue(partition, trees):
    """Tree with root [n] whose children are the blocks, block a carrying trees[a].

    :param partition: Partition with at least two blocks, binary order.
    :type partition: :obj:`SetPartition`
    :param trees: trees[a] is a tree of order |A_a|.
    :type trees: list
    :raises InvalidTreeError: If the data do not fit.
    """
    if len(partition) < 2 or len(trees) != len(partition):
        raise InvalidTreeError("Gluing needs one tree per block and at least two blocks")
    labels = [full_mask(partition.n)]
    for block, tree in zip(partition.blocks, trees):
        embedding = order_preserving_map(block)
        if tree.n != len(embedding):
            raise InvalidTreeError("Tree order does not match block size")
        for label in tree.labels:
            labels.append(mask_of(embedding[i - 1] for i in members_of(label)))
    return IndexTree(partition.n, labels)


def split(tree):
    """Inverse of :func:`glue` for trees whose root is not a leaf."""
    root = full_mask(tree.n)
    blocks = sorted(tree.children(root))
    if not blocks:
        raise InvalidTreeError("A single-leaf tree does not split")
    trees = []
    for block in blocks:
        position = {element: i for i, element in enumerate(members_of(block), start=1)}
        labels = [
            mask_of(position[e] for e in members_of(label))
            for label in tree.labels
            if label & block == label
        ]
        trees.append(IndexTree(len(position), labels, check=False))
    return SetPartition(tree.n, blocks), trees


def concatenation_parity(tree):
    """Parity between the binary order on P(T) and the block concatenation order.

    The concatenation order lists the internal labels inside each child of
    the root, children in binary order, and the root last.
    """
    root = full_mask(tree.n)
    sequence = []
    for block in sorted(tree.children(root)):
        sequence.extend(label for label in tree.internal_labels() if label & block == label)
    sequence.append(root)
    return inversions(sequence) % 2


def gluing_signs(tree, sigma):
    """Sign data of the gluing identity for one tree and permutation.

    :return: Mapping with s, the sum of l(T_i, tau_i), both concatenation
        parities and l(T, sigma).
    :rtype: dict
    """
    partition, trees = split(tree)
    positions = block_images(sigma, partition)
    sizes = [t.k for t in trees]
    crossing = sum(
        sizes[a] * sizes[b]
        for a, b in itertools.combinations(range(len(sizes)), 2)
        if positions[a] > positions[b]
    )
    local = sum(
        sign_l(t, restricted_permutation(sigma, block))
        for t, block in zip(trees, partition.blocks)
    )
    return {
        "s": crossing,
        "local": local,
        "epsilon": concatenation_parity(tree),
        "epsilon_image": concatenation_parity(act_tree(sigma, tree)),
        "l": sign_l(tree, sigma),
    }


def sign_identity_check(n, corrected=True):
    """Check the gluing sign identity over all split trees and all sigma.

    The literal identity is s + sum l(T_i, tau_i) = l(T, sigma) mod 2; the
    corrected one adds the concatenation parities of T and sigma(T).

    :param n: Order, at most 5.
    :type n: int
    :param corrected: Check the corrected identity instead of the literal one.
    :type corrected: bool
    :rtype: :obj:`Report`
    """
    if n < 1 or n > 5:
        raise ValueError("Sign identity check supports 1 <= n <= 5, got {}".format(n))
    report = Report("signs", n, {"corrected": corrected})
    literal_failures = 0
    checked = 0
    for tree in enumerate_trees(n):
        if tree.k == 0:
            continue
        for sigma in permutations(n):
            data = gluing_signs(tree, sigma)
            literal = data["s"] + data["local"]
            if (literal - data["l"]) % 2:
                literal_failures += 1
                if not corrected:
                    report.fail({"tree": tree.to_list(), "sigma": list(sigma.images), **data})
            total = literal + data["epsilon"] + data["epsilon_image"]
            if corrected and (total - data["l"]) % 2:
                report.fail({"tree": tree.to_list(), "sigma": list(sigma.images), **data})
            checked += 1
    report.details = {"cases": checked, "literal_failures": literal_failures}
    return report


def shlog_tree_formula(n):
    """Multiset of (A(T), |P(T)|) over all index trees of order n."""
    return Counter((tree.leaves_partition(), tree.k) for tree in enumerate_trees(n))


@lru_cache(maxsize=None)
def _inductive(mask):
    terms = Counter({((mask,), 0): 1})
    for blocks in _mask_partitions(mask):
        if len(blocks) < 2:
            continue
        product = Counter({((), 1): 1})
        for block in blocks:
            expanded = Counter()
            for (left, shift), count in product.items():
                for (right, extra), other in _inductive(block).items():
                    expanded[tuple(sorted(left + right)), shift + extra] += count * other
            product = expanded
        terms.update(product)
    return terms


def shlog_inductive(n):
    """Multiset of (partition, shift) from G_n = F_n + (sum of G_A)[1]."""
    return Counter(
        {
            (SetPartition(n, blocks), shift): count
            for (blocks, shift), count in _inductive(full_mask(n)).items()
        }
    )


def check_logformula(n):
    """Compare the tree formula with the inductive expansion.

    :rtype: :obj:`Report`
    """
    report = Report("logformula", n)
    trees = shlog_tree_formula(n)
    inductive = shlog_inductive(n)
    if trees != inductive:
        difference = (trees - inductive) + (inductive - trees)
        key = min(difference)
        report.fail(
            {
                "partition": [list(m) for m in key[0].block_members()],
                "shift": key[1],
                "trees": trees[key],
                "inductive": inductive[key],
            }
        )
    report.details = {"terms": sum(trees.values())}
    return report


def dump_graph(trees):
    """Edges ``parent -> child`` of every tree, trees separated by blank lines."""
    chunks = []
    for tree in trees:
        lines = []
        for label in tree.labels:
            parent = tree.parent(label)
            if parent is not None:
                lines.append(
                    "{} -> {}".format(_format_label(parent), _format_label(label))
                )
        chunks.append("\n".join(lines) if lines else _format_label(tree.labels[0]))
    return "\n\n".join(chunks)


def _format_label(label):
    return "{" + ",".join(str(e) for e in members_of(label)) + "}"


def two_block_partitions(n):
    """All set partitions of [n] with exactly two blocks."""
    root = full_mask(n)
    first = 1 << 1
    partitions = []
    rest = root ^ first
    subset = rest
    while subset:
        partitions.append(SetPartition(n, [first | (rest ^ subset), subset]))
        subset = (subset - 1) & rest
    return sorted(partitions)


def _orientation(partition, swap):
    if len(partition) != 2:
        raise ValueError("psi needs a two-block partition, got {}".format(partition))
    first, second = partition.blocks
    return (second, first) if swap else (first, second)


class PsiValue:
    """psi = (psi1, ..., psi5) with psi1 compared in the reversed binary order."""

    __slots__ = ("psi1", "psi2", "psi3", "psi4", "psi5")

    def __init__(self, psi1, psi2, psi3, psi4, psi5):  # pylint:disable=too-many-arguments
        """Value of psi on one tree."""
        self.psi1 = psi1
        self.psi2 = psi2
        self.psi3 = psi3
        self.psi4 = psi4
        self.psi5 = psi5

    @property
    def key(self):
        """Sort key realising the lexicographic order."""
        return (-self.psi1, self.psi2, self.psi3, self.psi4, self.psi5)

    def __eq__(self, other):
        return isinstance(other, PsiValue) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __hash__(self):
        return hash(self.key)

    def to_dict(self):
        """JSON-ready form."""
        return {
            "psi1": list(members_of(self.psi1)),
            "psi2": self.psi2,
            "psi3": self.psi3,
            "psi4": self.psi4,
            "psi5": self.psi5,
        }

    def __repr__(self):
        return "PsiValue({}, {}, {}, {}, {})".format(
            list(members_of(self.psi1)), self.psi2, self.psi3, self.psi4, self.psi5
        )


def distinguished_node(tree, partition, swap=False):
    """d(T): the binary-smallest label contained in neither block."""
    first, second = _orientation(partition, swap)
    return min(
        label
        for label in tree.labels
        if label & first != label and label & second != label
    )


def psi(tree, partition, swap=False):
    """psi(T) for a two-block partition B = {B1, B2}.

    B1 is the binary-smaller block unless swap is set.

    :raises ValueError: If the partition does not have two blocks.
    :rtype: :obj:`PsiValue`
    """
    first, second = _orientation(partition, swap)
    node = distinguished_node(tree, partition, swap)
    below = [label for label in tree.labels if label & node == label and label != node]
    inside_first = first & node
    inside_second = second & node
    psi3 = sum(1 for label in below if label & inside_first == label != inside_first)
    psi5 = sum(1 for label in below if label & inside_second == label != inside_second)
    weak_second = sum(1 for label in below if label & inside_second == label)
    return PsiValue(
        node,
        sum(1 for label in tree.labels if label & node != label),
        psi3,
        psi3 * weak_second,
        psi5,
    )


def contraction_type(contraction, partition, swap=False):
    """Type P, Q1 or Q2 of a contraction with respect to B, None otherwise."""
    first, second = _orientation(partition, swap)
    tree = contraction.source
    node = distinguished_node(tree, partition, swap)
    if contraction.kind == EXCEPTIONAL:
        if contraction.node == node and sorted(tree.children(node)) == sorted(
            [first & node, second & node]
        ):
            return "P"
        return None
    if contraction.node == first & node:
        return "Q1"
    if contraction.node == second & node:
        return "Q2"
    return None


def check_psi_monotone(n, swap=False):
    """Every contraction weakly decreases psi, for every two-block partition.

    :rtype: :obj:`Report`
    """
    report = Report("psi-monotone", n, {"swap": swap})
    checked = 0
    for partition in two_block_partitions(n):
        values = {tree: psi(tree, partition, swap) for tree in enumerate_trees(n)}
        for tree in enumerate_trees(n):
            for contraction in contractions_of(tree):
                if values[tree] < values[contraction.target]:
                    return report.fail(
                        {
                            "partition": [list(m) for m in partition.block_members()],
                            "tree": tree.to_list(),
                            "target": contraction.target.to_list(),
                            "psi": values[tree].to_dict(),
                            "psi_target": values[contraction.target].to_dict(),
                        }
                    )
                checked += 1
    report.details = {"contractions": checked}
    return report


def psi_preserving(n, partition, swap=False):
    """All psi-preserving contractions of trees of order n."""
    values = {tree: psi(tree, partition, swap) for tree in enumerate_trees(n)}
    return [
        contraction
        for tree in enumerate_trees(n)
        for contraction in contractions_of(tree)
        if values[tree] == values[contraction.target]
    ]


def psi_matching(n, partition, swap=False):
    """psi-preserving contractions form a perfect matching on the trees.

    Every preserving contraction must be of type P, Q1 or Q2 and keep
    meet(A(T), B) unchanged.

    :rtype: :obj:`Report`
    """
    report = Report(
        "psi-matching",
        n,
        {"partition": [list(m) for m in partition.block_members()], "swap": swap},
    )
    endpoints = Counter()
    preserving = psi_preserving(n, partition, swap)
    types = Counter()
    for contraction in preserving:
        kind = contraction_type(contraction, partition, swap)
        if kind is None:
            return report.fail({"contraction": repr(contraction), "reason": "type"})
        types[kind] += 1
        if meet(contraction.source.leaves_partition(), partition) != meet(
            contraction.target.leaves_partition(), partition
        ):
            return report.fail({"contraction": repr(contraction), "reason": "meet"})
        endpoints[contraction.source] += 1
        endpoints[contraction.target] += 1
    for tree in enumerate_trees(n):
        if endpoints[tree] != 1:
            return report.fail(
                {"tree": tree.to_list(), "endpoints": endpoints[tree], "reason": "matching"}
            )
    report.details = {"pairs": len(preserving), "types": dict(sorted(types.items()))}
    return report
