"""
Complete rooted planar binary trees

A tree is either the leaf ``LEAF`` (``None``) or a ``Node(left, right)``.
Internal nodes are addressed by their 1-based position in the infix visit
order; rotations never change that order, so positions stay valid across a
whole Tamari lattice.
"""
from __future__ import annotations

import json
import logging
from functools import lru_cache
from typing import Any, Iterator, List, NamedTuple, Optional, Tuple, Union

from balanced_tamari.exceptions import InvalidNodeError, TreeFormatError

logger = logging.getLogger(__name__)


class Node(NamedTuple):
    left: Tree
    right: Tree


class LabeledNode(NamedTuple):
    label: int
    left: LabeledTree
    right: LabeledTree


Tree = Optional[Node]
LabeledTree = Optional[LabeledNode]

LEAF: Tree = None


def join(left: Tree, right: Tree) -> Node:
    """The tree L ∧ R with ``left`` and ``right`` as subtrees"""
    return Node(left, right)


def size(t: Tree) -> int:
    """Number of internal nodes"""
    if t is None:
        return 0
    return 1 + size(t.left) + size(t.right)


def leaf_count(t: Tree) -> int:
    return size(t) + 1


def height(t: Tree) -> int:
    """Length of the longest root-to-leaf path; the leaf has height 0"""
    if t is None:
        return 0
    return 1 + max(height(t.left), height(t.right))


def nodes(t: Tree) -> Iterator[Tuple[int, Node]]:
    """Yield ``(position, subtree)`` for every internal node in infix order"""
    stack: List[Node] = []
    node = t
    position = 0
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        position += 1
        yield position, node
        node = node.right


def _check_position(t: Tree, position: int) -> None:
    n = size(t)
    if not 1 <= position <= n:
        raise InvalidNodeError(f"node {position} is out of range for a tree with {n} nodes")


def descend(t: Tree, position: int) -> Tuple[List[Tuple[Node, bool]], Node]:
    """
    Walk from the root to the node at ``position``

    Returns:
        ``(path, node)`` where ``path`` lists the strict ancestors from the
        root down, each paired with ``True`` when the walk went to its left
        child.
    """
    _check_position(t, position)
    path: List[Tuple[Node, bool]] = []
    node = t
    while True:
        left_size = size(node.left)
        if position == left_size + 1:
            return path, node
        if position <= left_size:
            path.append((node, True))
            node = node.left
        else:
            path.append((node, False))
            position -= left_size + 1
            node = node.right


def subtree_at(t: Tree, position: int) -> Node:
    """The subtree rooted at the node of infix ``position``"""
    return descend(t, position)[1]


def left_child_position(t: Tree, position: int) -> Optional[int]:
    """Infix position of the left child of ``position``, or None when it is a leaf"""
    node = subtree_at(t, position)
    if node.left is None:
        return None
    return position - size(node.left.right) - 1


def imbalance(t: Tree, position: int) -> int:
    """ht(right subtree) - ht(left subtree) at the node of infix ``position``"""
    node = subtree_at(t, position)
    return height(node.right) - height(node.left)


def imbalances(t: Tree) -> List[int]:
    """Imbalance values of all nodes, in infix order"""
    values: List[int] = []

    def walk(node: Tree) -> int:
        if node is None:
            return 0
        left_height = walk(node.left)
        slot = len(values)
        values.append(0)
        right_height = walk(node.right)
        values[slot] = right_height - left_height
        return 1 + max(left_height, right_height)

    walk(t)
    return values


def _balanced_height(t: Tree) -> int:
    # -1 flags an unbalanced subtree
    if t is None:
        return 0
    left_height = _balanced_height(t.left)
    if left_height < 0:
        return -1
    right_height = _balanced_height(t.right)
    if right_height < 0 or abs(right_height - left_height) > 1:
        return -1
    return 1 + max(left_height, right_height)


def is_balanced(t: Tree) -> bool:
    """True iff every node has imbalance in {-1, 0, 1}"""
    return _balanced_height(t) >= 0


def label_with_imbalance(t: Tree) -> LabeledTree:
    """Same shape as ``t``, each node labeled by its imbalance value"""

    def walk(node: Tree) -> Tuple[LabeledTree, int]:
        if node is None:
            return None, 0
        left, left_height = walk(node.left)
        right, right_height = walk(node.right)
        labeled = LabeledNode(right_height - left_height, left, right)
        return labeled, 1 + max(left_height, right_height)

    return walk(t)[0]


def strip_labels(t: LabeledTree) -> Tree:
    if t is None:
        return None
    return Node(strip_labels(t.left), strip_labels(t.right))


def labels(t: LabeledTree) -> List[int]:
    """Labels in infix order"""
    if t is None:
        return []
    return labels(t.left) + [t.label] + labels(t.right)


# --- well-known shapes -------------------------------------------------------

def left_comb(n: int) -> Tree:
    t: Tree = LEAF
    for _ in range(n):
        t = Node(t, LEAF)
    return t


def right_comb(n: int) -> Tree:
    t: Tree = LEAF
    for _ in range(n):
        t = Node(LEAF, t)
    return t


def perfect_tree(h: int) -> Tree:
    """The perfect tree of height ``h`` (2^h - 1 nodes)"""
    t: Tree = LEAF
    for _ in range(h):
        t = Node(t, t)
    return t


# --- enumeration -------------------------------------------------------------

@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """C_0 = 1, C_{n+1} = sum C_i C_{n-i}"""
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def generation_key(t: Tree) -> Tuple[Any, ...]:
    """Sort key reproducing the order of ``all_trees``: left size first, then recursively"""
    if t is None:
        return ()
    return (size(t.left), generation_key(t.left), generation_key(t.right))


def iter_trees(n: int) -> Iterator[Tree]:
    """The trees of ``all_trees(n)``, in the same order, built one at a time"""
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    if n == 0:
        yield LEAF
        return
    for left_size in range(n):
        for left in iter_trees(left_size):
            for right in iter_trees(n - 1 - left_size):
                yield Node(left, right)


@lru_cache(maxsize=16)
def all_trees(n: int) -> Tuple[Tree, ...]:
    """
    All Catalan(n) trees with ``n`` nodes

    Ordered by the size of the left subtree, then recursively by the left
    and right subtrees.
    """
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    if n == 0:
        return (LEAF,)
    return tuple(
        Node(left, right)
        for left_size in range(n)
        for left in all_trees(left_size)
        for right in all_trees(n - 1 - left_size)
    )


@lru_cache(maxsize=None)
def _min_balanced_nodes(h: int) -> int:
    if h <= 1:
        return h
    return 1 + _min_balanced_nodes(h - 1) + _min_balanced_nodes(h - 2)


@lru_cache(maxsize=1024)
def _balanced_trees(n: int, h: int) -> Tuple[Tree, ...]:
    if h == 0:
        return (LEAF,) if n == 0 else ()
    if not _min_balanced_nodes(h) <= n <= 2 ** h - 1:
        return ()
    found: List[Tree] = []
    for left_height, right_height in ((h - 1, h - 2), (h - 1, h - 1), (h - 2, h - 1)):
        if left_height < 0 or right_height < 0:
            continue
        for left_size in range(n):
            lefts = _balanced_trees(left_size, left_height)
            if not lefts:
                continue
            rights = _balanced_trees(n - 1 - left_size, right_height)
            found.extend(Node(left, right) for left in lefts for right in rights)
    return tuple(found)


@lru_cache(maxsize=32)
def all_balanced_trees(n: int) -> Tuple[Tree, ...]:
    """
    The balanced trees with ``n`` nodes, built height by height

    A balanced tree of height h has balanced subtrees of heights
    (h-1, h-2), (h-1, h-1) or (h-2, h-1). The result uses the ``all_trees``
    order.
    """
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    found = [t for h in range(n + 1) for t in _balanced_trees(n, h)]
    found.sort(key=generation_key)
    logger.debug(f"built {len(found)} balanced trees with {n} nodes")
    return tuple(found)


# --- JSON codec --------------------------------------------------------------

def to_json(t: Tree) -> Any:
    if t is None:
        return None
    return {"l": to_json(t.left), "r": to_json(t.right)}


def from_json(data: Any) -> Tree:
    if data is None:
        return LEAF
    if not isinstance(data, dict) or set(data) != {"l", "r"}:
        raise TreeFormatError(f"expected null or an object with keys 'l' and 'r', got {data!r}")
    return Node(from_json(data["l"]), from_json(data["r"]))


def dumps(t: Tree) -> str:
    """Canonical JSON text: ``null`` for the leaf, ``{"l":...,"r":...}`` for a node"""
    return json.dumps(to_json(t), separators=(",", ":"))


def serialize(t: Tree) -> bytes:
    return dumps(t).encode("utf-8")


def deserialize(data: Union[str, bytes]) -> Tree:
    """Inverse of ``serialize``; rejects malformed or incomplete structures"""
    try:
        return from_json(json.loads(data))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise TreeFormatError(f"not valid JSON: {e}") from e
    except RecursionError as e:
        raise TreeFormatError("tree is nested too deeply") from e
