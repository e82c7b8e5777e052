"""
How rotations move balanced trees around the Tamari lattice

Covers the imbalance classification of rotations, admissible words and
characteristic words, the imbalance witness used for the closure of balanced
intervals, and the hypercube structure of those intervals. The exhaustive
verifiers return report objects rather than raising, so a sweep can print
PASS/FAIL lines.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from balanced_tamari.binary_tree import (
    Tree,
    all_balanced_trees,
    descend,
    dumps,
    height,
    is_balanced,
    left_child_position,
    nodes,
    size,
    subtree_at,
)
from balanced_tamari.config import get_settings
from balanced_tamari.exceptions import (
    EmptyLeftSubtreeError,
    HypercubeError,
    InvalidRotationError,
    NotAdmissibleError,
    UnbalancedTreeError,
)
from balanced_tamari.tamari import (
    Interval,
    RotationSite,
    SiteLike,
    TamariPoset,
    build_poset,
    poset_from_elements,
    predecessors,
    rotate,
    successors,
)

logger = logging.getLogger(__name__)

ImbalancePair = Tuple[int, int]
Word = Tuple[int, ...]


# --- rotation classification -------------------------------------------------

class RotationClass(NamedTuple):
    """Imbalances of (x, y) before and after a right rotation of root y, x its left child"""

    tag: str
    before: ImbalancePair
    after: ImbalancePair

    @property
    def conservative(self) -> bool:
        return self.tag in CONSERVATIVE_TAGS


ROTATION_TABLE: Dict[ImbalancePair, RotationClass] = {
    rc.before: rc
    for rc in (
        RotationClass("B1", (-1, -1), (1, 1)),
        RotationClass("U1", (-1, 0), (2, 2)),
        RotationClass("U2", (-1, 1), (3, 3)),
        RotationClass("B2", (0, -1), (1, 0)),
        RotationClass("U3", (0, 0), (2, 1)),
        RotationClass("U4", (0, 1), (3, 2)),
        RotationClass("U5", (1, -1), (2, 0)),
        RotationClass("U6", (1, 0), (3, 1)),
        RotationClass("U7", (1, 1), (4, 2)),
    )
}
CONSERVATIVE_TAGS = frozenset({"B1", "B2"})
CONSERVATIVE_BEFORE = frozenset({(-1, -1), (0, -1)})


def _site_position(t: Tree, site: SiteLike) -> int:
    position = site.node if isinstance(site, RotationSite) else int(site)
    if not 1 <= position <= size(t):
        raise InvalidRotationError(f"rotation site {position} is out of range")
    if subtree_at(t, position).left is None:
        raise InvalidRotationError(f"node {position} has no internal left child")
    return position


def local_imbalances(t: Tree, site: SiteLike) -> ImbalancePair:
    """Imbalances of (x, y) where y is the rotation root and x its left child"""
    y = subtree_at(t, _site_position(t, site))
    x = y.left
    return height(x.right) - height(x.left), height(y.right) - height(x)


def classify_rotation(t: Tree, site: SiteLike) -> RotationClass:
    """
    The row of the rotation table matching the local imbalances at ``site``

    Raises:
        InvalidRotationError: the site is not a rotation root
        UnbalancedTreeError: x or y is not balanced
    """
    before = local_imbalances(t, site)
    try:
        return ROTATION_TABLE[before]
    except KeyError:
        raise UnbalancedTreeError(f"local imbalances {before} are outside {{-1, 0, 1}}") from None


def is_conservative(t: Tree, site: SiteLike) -> bool:
    """True iff the rotation keeps the balanced tree ``t`` balanced"""
    if not is_balanced(t):
        raise UnbalancedTreeError(f"{dumps(t)} is not balanced")
    return local_imbalances(t, site) in CONSERVATIVE_BEFORE


def is_conservative_by_rotation(t: Tree, site: SiteLike) -> bool:
    """Same predicate, read off the rotated tree instead of the local imbalances"""
    if not is_balanced(t):
        raise UnbalancedTreeError(f"{dumps(t)} is not balanced")
    return is_balanced(rotate(t, site))


def conservative_sites(t: Tree) -> List[RotationSite]:
    return [
        site for site, rotated in successors(t) if local_imbalances(t, site) in CONSERVATIVE_BEFORE
    ]


def unbalance_witnesses(t: Tree) -> List[int]:
    """Nodes of imbalance at least 2 whose two subtrees are balanced"""
    return [
        position
        for position, node in nodes(t)
        if height(node.right) - height(node.left) >= 2
        and is_balanced(node.left)
        and is_balanced(node.right)
    ]


def is_maximal_by_rotations(t: Tree) -> bool:
    """No right rotation keeps ``t`` balanced"""
    if not is_balanced(t):
        raise UnbalancedTreeError(f"{dumps(t)} is not balanced")
    return not any(is_balanced(rotated) for _, rotated in successors(t))


def is_minimal_by_rotations(t: Tree) -> bool:
    """No balanced tree rotates into ``t``"""
    if not is_balanced(t):
        raise UnbalancedTreeError(f"{dumps(t)} is not balanced")
    return not any(is_balanced(rotated) for _, rotated in predecessors(t))


# --- admissible words --------------------------------------------------------

def rewrite_step(z: Sequence[int]) -> Word:
    """
    Rewrite the leftmost pair: z1 z2 -> max(z1, z2) + 1 when |z1 - z2| <= 1, else z2

    Raises:
        NotAdmissibleError: fewer than two letters, or z1 - 1 > z2
    """
    if len(z) < 2:
        raise NotAdmissibleError(f"cannot rewrite a word of length {len(z)}")
    z1, z2 = z[0], z[1]
    if z1 - 1 > z2:
        raise NotAdmissibleError(f"{z1}{z2} violates z1 - 1 <= z2")
    head = max(z1, z2) + 1 if abs(z1 - z2) <= 1 else z2
    return (head,) + tuple(z[2:])


def rewrite_trace(z: Sequence[int]) -> List[Word]:
    """Every word of the rewriting chain, from ``z`` down to a single letter"""
    trace = [tuple(z)]
    while len(trace[-1]) > 1:
        trace.append(rewrite_step(trace[-1]))
    return trace


def is_admissible(z: Sequence[int]) -> bool:
    current = tuple(z)
    while len(current) > 1:
        if current[0] - 1 > current[1]:
            return False
        current = rewrite_step(current)
    return True


def potential(z: Sequence[int]) -> int:
    """The letter left when an admissible word is fully rewritten"""
    if not z:
        raise NotAdmissibleError("the empty word has no potential")
    return rewrite_trace(z)[-1][0]


@dataclass(frozen=True)
class AdmissibleWord:
    letters: Word

    def __post_init__(self) -> None:
        if any(letter < 0 for letter in self.letters):
            raise NotAdmissibleError(f"letters must be non-negative: {self.letters}")
        if not is_admissible(self.letters):
            raise NotAdmissibleError(f"{self} is not admissible")

    @classmethod
    def parse(cls, text: str) -> "AdmissibleWord":
        """Digits (``00122``) or whitespace separated integers (``1 12 13``)"""
        parts = text.split() if any(c.isspace() for c in text.strip()) else list(text.strip())
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            if isinstance(e, NotAdmissibleError):
                raise
            raise NotAdmissibleError(f"not a word: {text!r}") from e

    @property
    def potential(self) -> int:
        return potential(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if all(letter < 10 for letter in self.letters):
            return "".join(str(letter) for letter in self.letters)
        return " ".join(str(letter) for letter in self.letters)


# --- characteristic words and the imbalance witness ---------------------------

def characteristic_subtrees(t: Tree, position: int) -> List[Tree]:
    """
    The right subtree of the node, then the right subtree of each ancestor
    reached from its left child, from the node upwards
    """
    path, node = descend(t, position)
    found = [node.right]
    found.extend(ancestor.right for ancestor, went_left in reversed(path) if went_left)
    return found


def characteristic_word(t: Tree, position: int) -> Word:
    return tuple(height(s) for s in characteristic_subtrees(t, position))


def imb_property(t: Tree, x: int, allow_empty_left: bool = False) -> bool:
    """
    The imbalance witness at node ``x``

    Holds iff x has imbalance >= 2, the left subtree of x is balanced, and, with y the
    leftmost node of that left subtree, every characteristic subtree of y is
    balanced and the characteristic word of y is admissible.

    Raises:
        EmptyLeftSubtreeError: the left subtree of ``x`` is a leaf, unless
            ``allow_empty_left``, in which case y is x itself
    """
    node = subtree_at(t, x)
    if node.left is None:
        if not allow_empty_left:
            raise EmptyLeftSubtreeError(f"node {x} has an empty left subtree")
        y = x
    else:
        y = x - size(node.left)
    if height(node.right) - height(node.left) < 2:
        return False
    if not is_balanced(node.left):
        return False
    if not all(is_balanced(s) for s in characteristic_subtrees(t, y)):
        return False
    return is_admissible(characteristic_word(t, y))


def imb_witnesses(t: Tree, allow_empty_left: bool = False) -> List[int]:
    return [
        position
        for position, node in nodes(t)
        if (allow_empty_left or node.left is not None)
        and imb_property(t, position, allow_empty_left)
    ]


# --- closure of balanced intervals -------------------------------------------

def _check_bound(n: int) -> None:
    bound = get_settings().max_verify_nodes
    if not 0 <= n <= bound:
        raise ValueError(f"node count must be between 0 and {bound}, got {n}")


@dataclass
class ClosureReport:
    n: int
    balanced: int
    pairs: int
    # (lower, upper, unbalanced tree between them)
    counterexample: Optional[Tuple[Tree, Tree, Tree]] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"n={self.n} balanced={self.balanced} pairs={self.pairs} {verdict}"
        if self.counterexample is not None:
            lower, upper, between = self.counterexample
            line += f" lower={dumps(lower)} upper={dumps(upper)} unbalanced={dumps(between)}"
        return line


def verify_closure(n: int, progress: bool = False) -> ClosureReport:
    """
    Check that every interval of the full lattice between two balanced trees
    with ``n`` nodes contains only balanced trees

    The first counterexample in canonical order is reported.
    """
    _check_bound(n)
    poset = build_poset(n)
    balanced = [is_balanced(t) for t in poset.elements]
    roots = [i for i, flag in enumerate(balanced) if flag]
    report = ClosureReport(n=n, balanced=len(roots), pairs=0)

    for i in tqdm(roots, desc=f"closure n={n}", disable=not progress):
        above = poset.reachable([i])
        report.pairs += sum(1 for j in above if balanced[j])
        if report.counterexample is not None:
            continue
        unbalanced = [j for j in above if not balanced[j]]
        reached = poset.reachable(unbalanced)
        bad = sorted(j for j in reached if balanced[j])
        if bad:
            upper = bad[0]
            below_upper = poset.reachable([upper], within=above, reverse=True)
            between = min(j for j in unbalanced if j in below_upper)
            report.counterexample = (
                poset.elements[i],
                poset.elements[upper],
                poset.elements[between],
            )
            logger.warning(f"closure fails for n={n}: {report.to_line()}")

    logger.info(report.to_line())
    return report


def balanced_subposet(n: int) -> TamariPoset:
    """The balanced trees with ``n`` nodes, covered by conservative rotations"""
    return poset_from_elements(all_balanced_trees(n), n)


def balanced_pairs(n: int) -> List[Tuple[Tree, Tree]]:
    """All (t0, t1) of balanced trees with t0 <= t1, comparability taken in the full lattice"""
    poset = build_poset(n)
    balanced = [is_balanced(t) for t in poset.elements]
    pairs = []
    for i, flag in enumerate(balanced):
        if flag:
            above = poset.reachable([i])
            pairs.extend(
                (poset.elements[i], poset.elements[j]) for j in sorted(above) if balanced[j]
            )
    return pairs


# --- hypercubes --------------------------------------------------------------

@dataclass(frozen=True)
class HypercubePoset:
    """Subsets of {0, ..., k-1} ordered by inclusion"""

    dimension: int

    def __len__(self) -> int:
        return 2 ** self.dimension

    @property
    def elements(self) -> List[FrozenSet[int]]:
        ground = range(self.dimension)
        return [frozenset(c) for r in range(self.dimension + 1) for c in combinations(ground, r)]

    def covers(self) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
        return [(s, s | {e}) for s in self.elements for e in range(self.dimension) if e not in s]

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.covers())
        return graph


def rotation_sets(iv: Interval) -> Dict[Tree, FrozenSet[int]]:
    """
    Label each element of ``iv`` by the set of rotation roots applied to the
    lower bound to reach it

    Raises:
        HypercubeError: two rotation paths reach an element with different sets
    """
    members = set(iv.elements)
    labels: Dict[Tree, FrozenSet[int]] = {iv.lower: frozenset()}
    queue = deque([iv.lower])
    while queue:
        current = queue.popleft()
        for site, rotated in successors(current):
            if rotated not in members:
                continue
            label = labels[current] | {site.node}
            seen = labels.get(rotated)
            if seen is None:
                labels[rotated] = label
                queue.append(rotated)
            elif seen != label:
                raise HypercubeError(
                    f"{dumps(rotated)} is reached with rotation sets "
                    f"{sorted(seen)} and {sorted(label)}"
                )
    return labels


def hypercube_dimension(iv: Interval) -> int:
    """
    The k for which ``iv`` is isomorphic to the hypercube of dimension k

    The isomorphism sends each element to its rotation set. Checked: 2^k
    elements, distinct rotation sets, covers adding exactly one position,
    and no applied rotation root whose left child is another applied root.

    Raises:
        UnbalancedTreeError: an endpoint is not balanced
        HypercubeError: any of the checks fails
    """
    if not (is_balanced(iv.lower) and is_balanced(iv.upper)):
        raise UnbalancedTreeError("hypercube dimension needs balanced endpoints")
    labels = rotation_sets(iv)
    top = labels[iv.upper]
    k = len(top)
    if len(iv.elements) != 2 ** k:
        raise HypercubeError(f"interval has {len(iv.elements)} elements, expected 2^{k}")
    if len(set(labels.values())) != len(labels):
        raise HypercubeError("rotation sets are not distinct")

    for position in top:
        child = left_child_position(iv.lower, position)
        if child is not None and child in top:
            raise HypercubeError(f"rotation roots {position} and {child} overlap")

    members = set(iv.elements)
    for t, label in labels.items():
        ups = [labels[rotated] for _, rotated in successors(t) if rotated in members]
        if len(ups) != k - len(label):
            raise HypercubeError(f"{dumps(t)} has {len(ups)} covers, expected {k - len(label)}")
        if any(len(up - label) != 1 or not label <= up for up in ups):
            raise HypercubeError(f"a cover of {dumps(t)} is not a single insertion")
    return k


@dataclass
class HypercubeReport:
    n: int
    balanced: int
    pairs: int
    max_k: int = 0
    dimensions: Dict[int, int] = field(default_factory=dict)
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_line(self) -> str:
        line = (
            f"n={self.n} balanced={self.balanced} pairs={self.pairs} max_k={self.max_k} "
            f"{'PASS' if self.passed else 'FAIL'}"
        )
        if self.failure:
            line += f" {self.failure}"
        return line


def hypercube_sweep(n: int, progress: bool = False) -> HypercubeReport:
    """Run the hypercube check on every interval between balanced trees with ``n`` nodes"""
    _check_bound(n)
    poset = build_poset(n)
    balanced = [is_balanced(t) for t in poset.elements]
    roots = [i for i, flag in enumerate(balanced) if flag]
    report = HypercubeReport(n=n, balanced=len(roots), pairs=0)

    for i in tqdm(roots, desc=f"hypercube n={n}", disable=not progress):
        above = poset.reachable([i])
        for j in sorted(above):
            if not balanced[j]:
                continue
            report.pairs += 1
            if report.failure is not None:
                continue
            iv = poset.interval(i, j, above=above)
            try:
                k = hypercube_dimension(iv)
            except HypercubeError as e:
                report.failure = f"lower={dumps(iv.lower)} upper={dumps(iv.upper)}: {e}"
                logger.warning(f"hypercube check fails for n={n}: {report.failure}")
                continue
            report.max_k = max(report.max_k, k)
            report.dimensions[k] = report.dimensions.get(k, 0) + 1

    logger.info(report.to_line())
    return report


# --- brute-force counts ------------------------------------------------------

def count_balanced(n: int) -> int:
    return len(all_balanced_trees(n))


def count_maximal(n: int) -> int:
    return sum(1 for t in all_balanced_trees(n) if is_maximal_by_rotations(t))


def count_intervals(n: int) -> int:
    return len(balanced_pairs(n))


def count_maximal_intervals(n: int) -> int:
    """Intervals from a minimal balanced tree up to a maximal one"""
    return sum(
        1
        for t0, t1 in balanced_pairs(n)
        if is_minimal_by_rotations(t0) and is_maximal_by_rotations(t1)
    )


def brute_force_counts(which: str, max_leaves: int) -> List[int]:
    """Counts indexed by leaves 1..max_leaves, computed from the lattice"""
    counters = {
        "balanced": count_balanced,
        "maximal": count_maximal,
        "intervals": count_intervals,
        "maximal_intervals": count_maximal_intervals,
    }
    try:
        counter = counters[which.replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown family {which!r}; expected one of {sorted(counters)}") from None
    return [counter(leaves - 1) for leaves in range(1, max_leaves + 1)]
