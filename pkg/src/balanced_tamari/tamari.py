"""
Right rotations and the Tamari lattice

The cover relation of the lattice is a single right rotation
(A∧B)∧C -> A∧(B∧C). Posets are networkx digraphs over element indices, with
edges directed from the smaller tree to the larger one.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import (
    AbstractSet,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import networkx as nx

from balanced_tamari.binary_tree import (
    Node,
    Tree,
    all_trees,
    dumps,
    left_comb,
    nodes,
    right_comb,
    serialize,
    size,
)
from balanced_tamari.exceptions import InvalidRotationError, NotComparableError, SizeMismatchError

logger = logging.getLogger(__name__)


class RotationSite(NamedTuple):
    """Infix position of a rotation root y whose left child x is internal"""

    node: int


SiteLike = Union[RotationSite, int]


def _position(site: SiteLike) -> int:
    return site.node if isinstance(site, RotationSite) else int(site)


def rotation_sites(t: Tree) -> List[RotationSite]:
    return [RotationSite(position) for position, node in nodes(t) if node.left is not None]


def _rotate_right_at(node: Tree, position: int) -> Node:
    if node is None:
        raise InvalidRotationError(f"no node at position {position}")
    left_size = size(node.left)
    if position == left_size + 1:
        x = node.left
        if x is None:
            raise InvalidRotationError("the left child of the rotation root is a leaf")
        return Node(x.left, Node(x.right, node.right))
    if position <= left_size:
        return Node(_rotate_right_at(node.left, position), node.right)
    return Node(node.left, _rotate_right_at(node.right, position - left_size - 1))


def rotate(t: Tree, site: SiteLike) -> Tree:
    """
    Right rotation at ``site``: the subtree (A∧B)∧C rooted there becomes A∧(B∧C)

    Raises:
        InvalidRotationError: the site is out of range or its left child is a leaf
    """
    position = _position(site)
    if not 1 <= position <= size(t):
        raise InvalidRotationError(f"rotation site {position} is out of range")
    return _rotate_right_at(t, position)


def _rotate_left_at(node: Tree, position: int) -> Node:
    if node is None:
        raise InvalidRotationError(f"no node at position {position}")
    left_size = size(node.left)
    if position == left_size + 1:
        y = node.right
        if y is None:
            raise InvalidRotationError("the right child of the rotation root is a leaf")
        return Node(Node(node.left, y.left), y.right)
    if position <= left_size:
        return Node(_rotate_left_at(node.left, position), node.right)
    return Node(node.left, _rotate_left_at(node.right, position - left_size - 1))


def rotate_left(t: Tree, position: int) -> Tree:
    """Left rotation A∧(B∧C) -> (A∧B)∧C at the node of infix ``position``"""
    if not 1 <= position <= size(t):
        raise InvalidRotationError(f"rotation site {position} is out of range")
    return _rotate_left_at(t, position)


def _all_right_rotations(node: Tree, offset: int) -> List[Tuple[int, Node]]:
    if node is None:
        return []
    position = offset + size(node.left) + 1
    found = [
        (p, Node(rotated, node.right)) for p, rotated in _all_right_rotations(node.left, offset)
    ]
    if node.left is not None:
        x = node.left
        found.append((position, Node(x.left, Node(x.right, node.right))))
    found.extend(
        (p, Node(node.left, rotated)) for p, rotated in _all_right_rotations(node.right, position)
    )
    return found


def successors(t: Tree) -> List[Tuple[RotationSite, Tree]]:
    """Every tree covering ``t``, paired with the rotation site producing it (infix order)"""
    return [(RotationSite(p), rotated) for p, rotated in _all_right_rotations(t, 0)]


def _all_left_rotations(node: Tree, offset: int) -> List[Tuple[int, Node]]:
    if node is None:
        return []
    position = offset + size(node.left) + 1
    found = [
        (p, Node(rotated, node.right)) for p, rotated in _all_left_rotations(node.left, offset)
    ]
    if node.right is not None:
        y = node.right
        found.append((position, Node(Node(node.left, y.left), y.right)))
    found.extend(
        (p, Node(node.left, rotated)) for p, rotated in _all_left_rotations(node.right, position)
    )
    return found


def predecessors(t: Tree) -> List[Tuple[int, Tree]]:
    """Every tree covered by ``t``, paired with the position of the left-rotation root"""
    return _all_left_rotations(t, 0)


def _closure(start: Tree, step: Callable[[Tree], Iterable[Tuple[object, Tree]]]) -> FrozenSet[Tree]:
    seen: Set[Tree] = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for _, neighbour in step(current):
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    return frozenset(seen)


@lru_cache(maxsize=4096)
def up_set(t: Tree) -> FrozenSet[Tree]:
    """All trees reachable from ``t`` by right rotations, ``t`` included"""
    return _closure(t, successors)


@lru_cache(maxsize=4096)
def down_set(t: Tree) -> FrozenSet[Tree]:
    """All trees from which ``t`` is reachable, ``t`` included"""
    return _closure(t, predecessors)


def _check_sizes(t0: Tree, t1: Tree) -> None:
    if size(t0) != size(t1):
        raise SizeMismatchError(f"trees have {size(t0)} and {size(t1)} nodes")


def tamari_le(t0: Tree, t1: Tree) -> bool:
    """True iff ``t1`` is reachable from ``t0`` by a sequence of right rotations"""
    _check_sizes(t0, t1)
    if t0 == t1:
        return True
    return t1 in up_set(t0)


# --- posets ------------------------------------------------------------------

@dataclass(frozen=True)
class TamariPoset:
    """
    A finite poset of trees given by its cover digraph

    Elements are indexed in the order of their canonical serialization; an
    edge i -> j means element j is obtained from element i by one right
    rotation, and carries the rotation root as its ``site`` attribute.
    """

    n: int
    elements: Tuple[Tree, ...]
    graph: nx.DiGraph = field(repr=False, compare=False)
    _index: Dict[Tree, int] = field(default_factory=dict, repr=False, compare=False)
    _cache: Dict[Tuple[str, int], FrozenSet[int]] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def covers(self) -> List[Tuple[int, int]]:
        return sorted(self.graph.edges())

    def index_of(self, t: Tree) -> int:
        try:
            return self._index[t]
        except KeyError:
            raise KeyError(f"{dumps(t)} is not an element of this poset") from None

    def up_set(self, i: int) -> FrozenSet[int]:
        key = ("up", i)
        if key not in self._cache:
            self._cache[key] = frozenset(nx.descendants(self.graph, i)) | {i}
        return self._cache[key]

    def down_set(self, i: int) -> FrozenSet[int]:
        key = ("down", i)
        if key not in self._cache:
            self._cache[key] = frozenset(nx.ancestors(self.graph, i)) | {i}
        return self._cache[key]

    def reachable(
        self,
        sources: Iterable[int],
        within: Optional[AbstractSet[int]] = None,
        reverse: bool = False,
    ) -> Set[int]:
        """
        Indices reachable from ``sources`` along covers (against them when ``reverse``)

        Uncached. ``within`` restricts the walk to a subset of indices.
        """
        step = self.graph.predecessors if reverse else self.graph.successors
        seen = set(sources)
        queue = deque(seen)
        while queue:
            current = queue.popleft()
            for neighbour in step(current):
                if neighbour in seen or (within is not None and neighbour not in within):
                    continue
                seen.add(neighbour)
                queue.append(neighbour)
        return seen

    def le(self, i: int, j: int) -> bool:
        return j in self.up_set(i)

    def interval(self, i: int, j: int, above: Optional[AbstractSet[int]] = None) -> Interval:
        """
        The interval between elements ``i`` and ``j``

        ``above`` may pass a precomputed up-set of ``i``; the down-walk from
        ``j`` stays inside it.
        """
        if above is None:
            above = self.up_set(i)
        if j not in above:
            raise NotComparableError(f"element {i} is not below element {j}")
        members = sorted(self.reachable([j], within=above, reverse=True))
        local = {k: pos for pos, k in enumerate(members)}
        covers = sorted(
            (local[a], local[b]) for a in members for b in self.graph.successors(a) if b in local
        )
        return Interval(
            lower=self.elements[i],
            upper=self.elements[j],
            elements=tuple(self.elements[k] for k in members),
            covers=tuple(covers),
        )

    def minimal_elements(self) -> List[int]:
        return [i for i in self.graph.nodes if self.graph.in_degree(i) == 0]

    def maximal_elements(self) -> List[int]:
        return [i for i in self.graph.nodes if self.graph.out_degree(i) == 0]

    def minimum(self) -> Optional[int]:
        found = self.minimal_elements()
        return found[0] if len(found) == 1 else None

    def maximum(self) -> Optional[int]:
        found = self.maximal_elements()
        return found[0] if len(found) == 1 else None

    def join(self, i: int, j: int) -> Optional[int]:
        """Least upper bound, or None when it does not exist"""
        common = self.up_set(i) & self.up_set(j)
        if not common:
            return None
        # the candidate has the largest up-set; it is the join iff that up-set is all of ``common``
        best = max(common, key=lambda k: len(self.up_set(k)))
        return best if len(self.up_set(best)) == len(common) else None

    def meet(self, i: int, j: int) -> Optional[int]:
        """Greatest lower bound, or None when it does not exist"""
        common = self.down_set(i) & self.down_set(j)
        if not common:
            return None
        best = max(common, key=lambda k: len(self.down_set(k)))
        return best if len(self.down_set(best)) == len(common) else None

    def is_lattice(self) -> bool:
        count = len(self.elements)
        for i in range(count):
            for j in range(i + 1, count):
                if self.join(i, j) is None or self.meet(i, j) is None:
                    logger.info(f"elements {i} and {j} have no join or no meet")
                    return False
        return True

    def to_dot(self, path: Union[str, Path], index_labels: bool = False) -> None:
        write_dot(self.elements, self.graph.edges(), path, index_labels=index_labels)


def poset_from_elements(elements: Iterable[Tree], n: Optional[int] = None) -> TamariPoset:
    """
    The subposet induced on ``elements`` by single right rotations between them

    Elements are sorted canonically before indexing.
    """
    ordered = tuple(sorted(set(elements), key=serialize))
    if n is None:
        n = size(ordered[0]) if ordered else 0
    index = {t: i for i, t in enumerate(ordered)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(ordered)))
    for i, t in enumerate(ordered):
        for site, rotated in successors(t):
            j = index.get(rotated)
            if j is not None:
                graph.add_edge(i, j, site=site.node)
    return TamariPoset(n=n, elements=ordered, graph=graph, _index=index)


@lru_cache(maxsize=4)
def build_poset(n: int) -> TamariPoset:
    """The Tamari lattice on all trees with ``n`` nodes; intended for n <= 13"""
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    poset = poset_from_elements(all_trees(n), n)
    logger.info(
        f"built Tamari poset n={n}: {len(poset)} elements, "
        f"{poset.graph.number_of_edges()} covers"
    )
    return poset


def lattice_bounds(n: int) -> Tuple[Tree, Tree]:
    """Bottom and top of the Tamari lattice: the left and right combs"""
    return left_comb(n), right_comb(n)


# --- intervals ---------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """
    The elements t with lower <= t <= upper, in canonical order

    ``covers`` holds index pairs into ``elements``.
    """

    lower: Tree
    upper: Tree
    elements: Tuple[Tree, ...]
    covers: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, t: object) -> bool:
        return t in self.elements

    def index_of(self, t: Tree) -> int:
        return self.elements.index(t)

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.elements)))
        graph.add_edges_from(self.covers)
        return graph

    def to_dot(self, path: Union[str, Path], index_labels: bool = False) -> None:
        write_dot(self.elements, self.covers, path, index_labels=index_labels)


def interval(t0: Tree, t1: Tree) -> Interval:
    """
    The interval [t0, t1] of the full Tamari lattice

    Raises:
        SizeMismatchError: the trees have different node counts
        NotComparableError: t0 is not below t1
    """
    _check_sizes(t0, t1)
    above = up_set(t0)
    if t1 not in above:
        raise NotComparableError(f"{dumps(t0)} is not below {dumps(t1)}")
    members = above & down_set(t1)
    ordered = tuple(sorted(members, key=serialize))
    index = {t: i for i, t in enumerate(ordered)}
    covers = []
    for i, t in enumerate(ordered):
        for _, rotated in successors(t):
            j = index.get(rotated)
            if j is not None:
                covers.append((i, j))
    return Interval(lower=t0, upper=t1, elements=ordered, covers=tuple(sorted(covers)))


# --- DOT export --------------------------------------------------------------

def write_dot(
    elements: Sequence[Tree],
    covers: Iterable[Tuple[int, int]],
    path: Union[str, Path],
    index_labels: bool = False,
) -> None:
    """
    Write a Hasse diagram in DOT format, smaller elements at the bottom

    Nodes are labeled by canonical JSON, or by index with a ``.tsv`` sidecar
    mapping each index to its JSON when ``index_labels`` is set.
    """
    path = Path(path)
    graph = nx.DiGraph()
    graph.graph["graph"] = {"rankdir": "BT"}
    for i, t in enumerate(elements):
        graph.add_node(i, label=str(i) if index_labels else dumps(t))
    graph.add_edges_from(covers)

    dot = nx.drawing.nx_pydot.to_pydot(graph)
    dot.write(str(path), format="raw")
    logger.info(f"wrote {len(elements)} elements to {path}")

    if index_labels:
        sidecar = path.with_suffix(".tsv")
        with open(sidecar, "w", encoding="utf-8") as f:
            f.write("index\ttree\n")
            for i, t in enumerate(elements):
                f.write(f"{i}\t{dumps(t)}\n")
        logger.info(f"wrote index table to {sidecar}")
