"""
Synchronous grammars over bud trees, and marked trees encoding intervals

A bud tree is built from buds (``Bud``) and labeled nodes (``BudNode``). One
derivation step replaces every bud at once by one alternative of its rule.
When all remaining buds may be finalized, they become leaves and the
result is a labeled (possibly marked) tree.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from tqdm import tqdm

from balanced_tamari.balance_dynamics import conservative_sites, rotation_sets
from balanced_tamari.binary_tree import (
    LabeledNode,
    LabeledTree,
    Tree,
    all_balanced_trees,
    dumps,
    is_balanced,
    left_child_position,
    size,
    strip_labels,
)
from balanced_tamari.config import get_settings
from balanced_tamari.exceptions import InvalidMarkingError, UnbalancedTreeError
from balanced_tamari.tamari import Interval, interval, rotate

logger = logging.getLogger(__name__)


class Bud(NamedTuple):
    symbol: str

    def __str__(self) -> str:
        return self.symbol


class BudNode(NamedTuple):
    label: int
    left: "BudTree"
    right: "BudTree"
    marked: bool = False

    def __str__(self) -> str:
        label = f"[{self.label}]" if self.marked else str(self.label)
        return f"({self.left} {label} {self.right})"


# None is a leaf, left behind by finalization
BudTree = Union[Bud, BudNode, None]


def buds(t: BudTree) -> List[Bud]:
    """Buds from left to right"""
    if t is None:
        return []
    if isinstance(t, Bud):
        return [t]
    return buds(t.left) + buds(t.right)


def node_count(t: BudTree) -> int:
    if not isinstance(t, BudNode):
        return 0
    return 1 + node_count(t.left) + node_count(t.right)


@dataclass(frozen=True)
class SynchronousGrammar:
    name: str
    axiom: str
    rules: Dict[str, Tuple[BudTree, ...]]
    finalizable: FrozenSet[str] = frozenset({"x"})

    def __post_init__(self) -> None:
        symbols = set(self.rules)
        if self.axiom not in symbols:
            raise ValueError(f"{self.name}: axiom {self.axiom!r} has no rule")
        for symbol, alternatives in self.rules.items():
            for alternative in alternatives:
                unknown = {b.symbol for b in buds(alternative)} - symbols
                if unknown:
                    raise ValueError(
                        f"{self.name}: rule for {symbol!r} uses unknown buds {sorted(unknown)}"
                    )

    def alternatives(self, symbol: str) -> Tuple[BudTree, ...]:
        return self.rules[symbol]


class GeneratedTree(NamedTuple):
    """A finalized derivation: an imbalance-labeled tree and its marked infix positions"""

    labeled: LabeledTree
    marks: FrozenSet[int] = frozenset()

    @property
    def tree(self) -> Tree:
        return strip_labels(self.labeled)

    @property
    def leaves(self) -> int:
        return size(self.tree) + 1

    def to_marked(self) -> "MarkedTree":
        return MarkedTree(self.tree, self.marks)


# --- the four grammars ----------------------------------------------------------

def _n(left: BudTree, label: int, right: BudTree, marked: bool = False) -> BudNode:
    return BudNode(label, left, right, marked)


X, Y, Z, T = Bud("x"), Bud("y"), Bud("z"), Bud("t")
Z1, Z2 = Bud("z1"), Bud("z2")

# a marked root of a conservative rotation: its left child has label 0 or -1
_MARKED_TEMPLATES = (
    _n(_n(X, 0, X), -1, X, marked=True),
    _n(_n(X, -1, Y), -1, X, marked=True),
)


def builtin_grammar(which: str) -> SynchronousGrammar:
    """The grammar of balanced, maximal, intervals or maximal_intervals"""
    key = which.strip().lower().replace("-", "_")
    if key == "balanced":
        rules = {"x": (_n(X, -1, Y), _n(X, 0, X), _n(Y, 1, X)), "y": (X,)}
    elif key == "maximal":
        rules = {
            "x": (_n(X, 0, X), _n(Y, 1, X), _n(Z, -1, Y)),
            "y": (X,),
            "z": (_n(Y, 1, X),),
        }
    elif key == "intervals":
        rules = {
            "x": (_n(X, -1, Y), _n(X, 0, X), _n(Y, 1, X), Z),
            "y": (X,),
            "z": _MARKED_TEMPLATES,
        }
    elif key == "maximal_intervals":
        rules = {
            "x": (_n(X, 0, X), _n(Y, 1, Z1), _n(Z2, -1, Y), T),
            "y": (X,),
            "z1": (_n(Z2, -1, Y), T),
            "z2": (_n(Y, 1, Z1), T),
            "t": _MARKED_TEMPLATES,
        }
    else:
        raise ValueError(
            f"unknown grammar {which!r}; "
            "expected balanced, maximal, intervals or maximal_intervals"
        )
    return SynchronousGrammar(name=key, axiom="x", rules=rules)


# --- derivations ----------------------------------------------------------------

def expand(g: SynchronousGrammar, t: BudTree, max_nodes: Optional[int] = None) -> List[BudTree]:
    """
    Every bud tree obtained from ``t`` in one synchronous step

    Trees with more than ``max_nodes`` labeled nodes are dropped; steps
    never remove nodes, so nothing dropped could shrink back.
    """

    def walk(node: BudTree) -> List[Tuple[BudTree, int]]:
        if node is None:
            return [(None, 0)]
        if isinstance(node, Bud):
            return [(alt, node_count(alt)) for alt in g.alternatives(node.symbol)]
        found = []
        for left, left_count in walk(node.left):
            for right, right_count in walk(node.right):
                count = left_count + right_count + 1
                if max_nodes is None or count <= max_nodes:
                    found.append((node._replace(left=left, right=right), count))
        return found

    return [tree for tree, count in walk(t) if max_nodes is None or count <= max_nodes]


def substitute(g: SynchronousGrammar, t: BudTree, replacements: Sequence[BudTree]) -> BudTree:
    """
    One synchronous step with chosen alternatives, one per bud from left to right

    Raises:
        ValueError: wrong number of replacements, or one that is not an
            alternative of its bud
    """
    current = buds(t)
    if len(current) != len(replacements):
        raise ValueError(f"{len(current)} buds but {len(replacements)} replacements")
    for bud, replacement in zip(current, replacements):
        if replacement not in g.alternatives(bud.symbol):
            raise ValueError(f"{replacement} is not an alternative for bud {bud.symbol}")
    chosen = iter(replacements)

    def walk(node: BudTree) -> BudTree:
        if isinstance(node, Bud):
            return next(chosen)
        if node is None:
            return None
        return node._replace(left=walk(node.left), right=walk(node.right))

    return walk(t)


def is_final(g: SynchronousGrammar, t: BudTree) -> bool:
    return all(b.symbol in g.finalizable for b in buds(t))


def finalize(t: BudTree) -> GeneratedTree:
    """Replace every bud by a leaf and collect the marked infix positions"""
    marks: Set[int] = set()
    position = 0

    def walk(node: BudTree) -> LabeledTree:
        nonlocal position
        if not isinstance(node, BudNode):
            return None
        left = walk(node.left)
        position += 1
        if node.marked:
            marks.add(position)
        return LabeledNode(node.label, left, walk(node.right))

    labeled = walk(t)
    return GeneratedTree(labeled, frozenset(marks))


def derivations(
    g: SynchronousGrammar,
    steps: int,
    max_nodes: Optional[int] = None,
    progress: bool = False,
) -> Iterator[Tuple[int, Set[BudTree]]]:
    """Yield ``(step, bud trees)`` for step 0 (the axiom) up to ``steps``"""
    current: Set[BudTree] = {Bud(g.axiom)}
    yield 0, current
    for step in tqdm(range(1, steps + 1), desc=f"grammar {g.name}", disable=not progress):
        following: Set[BudTree] = set()
        for t in current:
            following.update(expand(g, t, max_nodes))
        current = following
        logger.debug(f"{g.name} step {step}: {len(current)} bud trees")
        yield step, current


def generate_bud_trees(
    g: SynchronousGrammar,
    steps: int,
    max_nodes: Optional[int] = None,
    progress: bool = False,
) -> List[GeneratedTree]:
    """
    Finalized outputs of all derivations of at most ``steps`` steps

    De-duplicated and sorted by leaf count, then canonical JSON of the shape,
    then marks.
    """
    bound = get_settings().max_grammar_steps
    if not 0 <= steps <= bound:
        raise ValueError(f"steps must be between 0 and {bound}, got {steps}")
    outputs: Set[GeneratedTree] = set()
    for _, trees in derivations(g, steps, max_nodes, progress):
        outputs.update(finalize(t) for t in trees if is_final(g, t))
    ordered = sorted(outputs, key=lambda out: (out.leaves, dumps(out.tree), sorted(out.marks)))
    logger.info(f"grammar {g.name}, {steps} steps: {len(ordered)} trees")
    return ordered


def count_by_leaves(outputs: Iterable[GeneratedTree], max_leaves: int) -> List[int]:
    """Counts of outputs with 1..max_leaves leaves"""
    counts = [0] * max_leaves
    for out in outputs:
        if 1 <= out.leaves <= max_leaves:
            counts[out.leaves - 1] += 1
    return counts


# --- marked trees -----------------------------------------------------------------

@dataclass(frozen=True)
class MarkedTree:
    """
    A balanced tree with marked rotation roots, encoding the interval from
    the tree to the result of rotating at every mark
    """

    tree: Tree
    marks: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "marks", frozenset(self.marks))
        if not is_balanced(self.tree):
            raise InvalidMarkingError(f"{dumps(self.tree)} is not balanced")
        roots = {site.node for site in conservative_sites(self.tree)}
        for position in sorted(self.marks):
            if position not in roots:
                raise InvalidMarkingError(
                    f"node {position} is not the root of a conservative rotation"
                )
            child = left_child_position(self.tree, position)
            if child in self.marks:
                raise InvalidMarkingError(
                    f"node {position} and its left child {child} are both marked"
                )

    def upper(self) -> Tree:
        t = self.tree
        for position in sorted(self.marks):
            t = rotate(t, position)
        return t

    def to_interval(self) -> Interval:
        return interval(self.tree, self.upper())


def interval_to_marked(iv: Interval) -> MarkedTree:
    """The lower bound marked at the rotation roots leading to the upper bound"""
    if not (is_balanced(iv.lower) and is_balanced(iv.upper)):
        raise UnbalancedTreeError("marked trees encode intervals between balanced trees")
    return MarkedTree(iv.lower, rotation_sets(iv)[iv.upper])


def marked_to_interval(m: MarkedTree) -> Interval:
    return m.to_interval()


def marked_trees(n: int) -> List[MarkedTree]:
    """Every valid marking of every balanced tree with ``n`` nodes"""
    found = []
    for t in all_balanced_trees(n):
        roots = [site.node for site in conservative_sites(t)]
        for choice in product((False, True), repeat=len(roots)):
            marks = frozenset(p for p, chosen in zip(roots, choice) if chosen)
            if any(left_child_position(t, p) in marks for p in marks):
                continue
            found.append(MarkedTree(t, marks))
    return found
