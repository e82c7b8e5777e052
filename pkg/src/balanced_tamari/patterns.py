"""
Tree patterns over imbalance-labeled trees

A pattern is a labeled, possibly incomplete binary tree. It occurs in a tree
when it can be anchored at some node of the imbalance-labeled tree with every
present pattern child matching a present child with the same label; absent
pattern children match anything.
"""
import logging
import re
from abc import ABC, abstractmethod
from typing import Callable, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from balanced_tamari.balance_dynamics import is_maximal_by_rotations, is_minimal_by_rotations
from balanced_tamari.binary_tree import (
    LabeledNode,
    LabeledTree,
    Tree,
    dumps,
    is_balanced,
    label_with_imbalance,
)
from balanced_tamari.exceptions import PatternSyntaxError, UnbalancedTreeError

logger = logging.getLogger(__name__)

__all__ = [
    "TreePattern",
    "PatternSet",
    "FinitePatternSet",
    "SingleNodeFamily",
    "EdgeFamily",
    "PatternUnion",
    "BALANCED_FAMILY",
    "PERFECT_FAMILY",
    "RIGHT_COMB_FAMILY",
    "P_MAX",
    "P_MIN",
    "NAMED_FAMILIES",
    "occurs",
    "avoids",
    "is_maximal_balanced",
    "is_minimal_balanced",
    "is_maximal_by_rotations",
    "is_minimal_by_rotations",
    "is_perfect",
    "parse_pattern",
    "format_pattern",
    "parse_pattern_set",
]


class TreePattern(NamedTuple):
    label: int
    left: Optional["TreePattern"] = None
    right: Optional["TreePattern"] = None

    def remove_child(self, side: str) -> "TreePattern":
        if side == "L":
            return self._replace(left=None)
        return self._replace(right=None)

    def __str__(self) -> str:
        return format_pattern(self)


def _labeled_nodes(t: LabeledTree) -> Iterator[LabeledNode]:
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            yield node
            stack.append(node.right)
            stack.append(node.left)


def _matches_at(node: LabeledTree, p: TreePattern) -> bool:
    if node is None or node.label != p.label:
        return False
    if p.left is not None and not _matches_at(node.left, p.left):
        return False
    return p.right is None or _matches_at(node.right, p.right)


def _labeled(t: Union[Tree, LabeledTree]) -> LabeledTree:
    if t is None or isinstance(t, LabeledNode):
        return t
    return label_with_imbalance(t)


def occurs(t: Union[Tree, LabeledTree], p: TreePattern) -> bool:
    """True iff ``p`` can be anchored at some node of the imbalance-labeled ``t``"""
    return any(_matches_at(node, p) for node in _labeled_nodes(_labeled(t)))


# --- pattern sets -------------------------------------------------------------

class PatternSet(ABC):
    """A finite or predicate-defined family of tree patterns"""

    name: str = "patterns"

    @abstractmethod
    def __contains__(self, p: object) -> bool:
        ...

    @abstractmethod
    def occurs_in(self, t: LabeledTree) -> bool:
        """True iff some member of the family occurs in the labeled tree"""

    def __or__(self, other: "PatternSet") -> "PatternSet":
        return PatternUnion((self, other))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class FinitePatternSet(PatternSet):
    def __init__(self, patterns: Iterable[TreePattern] = (), name: str = "patterns"):
        self.patterns: Tuple[TreePattern, ...] = tuple(patterns)
        self.name = name

    def __contains__(self, p: object) -> bool:
        return p in self.patterns

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[TreePattern]:
        return iter(self.patterns)

    def occurs_in(self, t: LabeledTree) -> bool:
        return any(_matches_at(node, p) for node in _labeled_nodes(t) for p in self.patterns)


class SingleNodeFamily(PatternSet):
    """Every single node whose label satisfies ``predicate``"""

    def __init__(self, predicate: Callable[[int], bool], name: str):
        self.predicate = predicate
        self.name = name

    def __contains__(self, p: object) -> bool:
        if not isinstance(p, TreePattern) or p.left is not None or p.right is not None:
            return False
        return self.predicate(p.label)

    def occurs_in(self, t: LabeledTree) -> bool:
        return any(self.predicate(node.label) for node in _labeled_nodes(t))


class EdgeFamily(PatternSet):
    """
    Every two-node pattern along a left (``"L"``) or right (``"R"``) edge
    whose (parent, child) labels satisfy ``predicate``
    """

    def __init__(self, side: str, predicate: Callable[[int, int], bool], name: str):
        if side not in ("L", "R"):
            raise ValueError(f"side must be 'L' or 'R', got {side!r}")
        self.side = side
        self.predicate = predicate
        self.name = name

    def _child(self, p: TreePattern) -> Optional[TreePattern]:
        return p.left if self.side == "L" else p.right

    def __contains__(self, p: object) -> bool:
        if not isinstance(p, TreePattern):
            return False
        child = self._child(p)
        other = p.right if self.side == "L" else p.left
        if child is None or other is not None or child.left is not None or child.right is not None:
            return False
        return self.predicate(p.label, child.label)

    def occurs_in(self, t: LabeledTree) -> bool:
        for node in _labeled_nodes(t):
            child = node.left if self.side == "L" else node.right
            if child is not None and self.predicate(node.label, child.label):
                return True
        return False


class PatternUnion(PatternSet):
    def __init__(self, parts: Iterable[PatternSet]):
        self.parts: Tuple[PatternSet, ...] = tuple(parts)
        self.name = ";".join(part.name for part in self.parts)

    def __contains__(self, p: object) -> bool:
        return any(p in part for part in self.parts)

    def occurs_in(self, t: LabeledTree) -> bool:
        return any(part.occurs_in(t) for part in self.parts)


def _unbalanced_label(label: int) -> bool:
    return label not in (-1, 0, 1)


def _nonzero_label(label: int) -> bool:
    return label != 0


def _any_edge(parent: int, child: int) -> bool:
    return True


BALANCED_FAMILY = SingleNodeFamily(_unbalanced_label, "balanced")
PERFECT_FAMILY = SingleNodeFamily(_nonzero_label, "perfect")
RIGHT_COMB_FAMILY = EdgeFamily("L", _any_edge, "right-comb")
# parent y labeled -1 whose left child x is labeled -1 or 0: a conservative rotation leaves the tree
P_MAX = FinitePatternSet(
    [TreePattern(-1, TreePattern(-1)), TreePattern(-1, TreePattern(0))],
    "p-max",
)
# parent labeled 1 whose right child is labeled 1 or 0: a conservative rotation enters the tree
P_MIN = FinitePatternSet(
    [TreePattern(1, None, TreePattern(1)), TreePattern(1, None, TreePattern(0))],
    "p-min",
)

NAMED_FAMILIES = {
    family.name: family
    for family in (BALANCED_FAMILY, PERFECT_FAMILY, RIGHT_COMB_FAMILY, P_MAX, P_MIN)
}


def avoids(t: Union[Tree, LabeledTree], ps: Union[PatternSet, Iterable[TreePattern]]) -> bool:
    """True iff no pattern of ``ps`` occurs in ``t``"""
    if not isinstance(ps, PatternSet):
        ps = FinitePatternSet(ps)
    return not ps.occurs_in(_labeled(t))


def _require_balanced(t: Tree) -> None:
    if not is_balanced(t):
        raise UnbalancedTreeError(f"{dumps(t)} is not balanced")


def is_maximal_balanced(t: Tree) -> bool:
    """A balanced tree is maximal iff it avoids P_MAX"""
    _require_balanced(t)
    return avoids(t, P_MAX)


def is_minimal_balanced(t: Tree) -> bool:
    """A balanced tree is minimal iff it avoids P_MIN"""
    _require_balanced(t)
    return avoids(t, P_MIN)


def is_perfect(t: Tree) -> bool:
    return avoids(t, PERFECT_FAMILY)


# --- text form ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([LR]):|(-?\d+))")


def _tokenize(text: str) -> List[str]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise PatternSyntaxError(f"unexpected {text[position:]!r} in pattern {text!r}")
        token = next(group for group in match.groups() if group is not None)
        tokens.append(token + (":" if match.group(3) else ""))
        position = match.end()
    return tokens


def parse_pattern(text: str) -> TreePattern:
    """
    Parse the compact text form

    ``(-1 L:(-1))`` is a node labeled -1 whose left child is labeled -1;
    ``(1 R:(0))`` a node labeled 1 with right child labeled 0. Either child
    may be omitted; when both are given ``L:`` comes first.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PatternSyntaxError("empty pattern")

    def expect(i: int, token: str) -> int:
        if i >= len(tokens) or tokens[i] != token:
            found = tokens[i] if i < len(tokens) else "end of input"
            raise PatternSyntaxError(f"expected {token!r}, found {found!r} in {text!r}")
        return i + 1

    def node(i: int) -> Tuple[TreePattern, int]:
        i = expect(i, "(")
        if i >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[i]):
            raise PatternSyntaxError(f"expected a label in {text!r}")
        label = int(tokens[i])
        i += 1
        left = right = None
        if i < len(tokens) and tokens[i] == "L:":
            left, i = node(i + 1)
        if i < len(tokens) and tokens[i] == "R:":
            right, i = node(i + 1)
        return TreePattern(label, left, right), expect(i, ")")

    pattern, end = node(0)
    if end != len(tokens):
        raise PatternSyntaxError(f"trailing input after pattern in {text!r}")
    return pattern


def format_pattern(p: TreePattern) -> str:
    text = f"({p.label}"
    if p.left is not None:
        text += f" L:{format_pattern(p.left)}"
    if p.right is not None:
        text += f" R:{format_pattern(p.right)}"
    return text + ")"


def parse_pattern_set(spec: str) -> PatternSet:
    """
    A ``;``-separated list of family names and pattern literals

    Names: balanced, perfect, right-comb, p-max, p-min.
    """
    families: List[PatternSet] = []
    literals: List[TreePattern] = []
    for item in (part.strip() for part in spec.split(";")):
        if not item:
            continue
        name = item.lower().replace("_", "-")
        if name in NAMED_FAMILIES:
            families.append(NAMED_FAMILIES[name])
        else:
            literals.append(parse_pattern(item))
    if literals:
        families.append(FinitePatternSet(literals, "literals"))
    if not families:
        return FinitePatternSet((), "empty")
    if len(families) == 1:
        return families[0]
    return PatternUnion(families)
