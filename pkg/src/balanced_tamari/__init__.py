"""
Balanced binary trees in the Tamari lattice

Rotations and the Tamari order, how balanced trees behave under rotations,
tree-pattern characterizations, synchronous grammars and the generating
series counting balanced trees and their intervals.
"""
from balanced_tamari.binary_tree import (
    LEAF,
    Node,
    Tree,
    all_balanced_trees,
    all_trees,
    deserialize,
    height,
    imbalance,
    is_balanced,
    join,
    label_with_imbalance,
    serialize,
)
from balanced_tamari.tamari import Interval, RotationSite, build_poset, interval, rotate, tamari_le

__version__ = "1.0.0"

__all__ = [
    "LEAF",
    "Node",
    "Tree",
    "Interval",
    "RotationSite",
    "all_balanced_trees",
    "all_trees",
    "build_poset",
    "deserialize",
    "height",
    "imbalance",
    "interval",
    "is_balanced",
    "join",
    "label_with_imbalance",
    "rotate",
    "serialize",
    "tamari_le",
]
