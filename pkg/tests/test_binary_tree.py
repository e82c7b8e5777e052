import json
from math import comb

import pytest

from balanced_tamari.binary_tree import (
    LEAF,
    LabeledNode,
    Node,
    all_balanced_trees,
    all_trees,
    catalan,
    descend,
    deserialize,
    dumps,
    from_json,
    generation_key,
    height,
    imbalance,
    imbalances,
    is_balanced,
    iter_trees,
    join,
    label_with_imbalance,
    labels,
    leaf_count,
    left_child_position,
    left_comb,
    nodes,
    perfect_tree,
    right_comb,
    serialize,
    size,
    strip_labels,
    subtree_at,
)
from balanced_tamari.exceptions import InvalidNodeError, TamariError, TreeFormatError
from balanced_tamari.series import series


class TestShapes:

    def test_join_of_leaves_has_height_one(self):
        t = join(LEAF, LEAF)
        assert size(t) == 1
        assert height(t) == 1

    def test_join_single_node_and_leaf(self, single):
        t = join(single, LEAF)
        assert size(t) == 2
        assert height(t) == 2

    def test_join_adds_heights_and_sizes(self):
        a, b = perfect_tree(3), perfect_tree(2)
        t = join(a, b)
        assert height(t) == 4
        assert size(t) == size(a) + size(b) + 1
        assert leaf_count(t) == size(t) + 1

    def test_heights(self, single):
        assert height(LEAF) == 0
        assert height(single) == 1
        assert height(left_comb(3)) == 3
        assert height(right_comb(5)) == 5

    def test_perfect_tree_sizes(self):
        for h in range(6):
            assert size(perfect_tree(h)) == 2 ** h - 1
            assert height(perfect_tree(h)) == h


class TestPositions:

    def test_nodes_are_visited_in_infix_order(self):
        t = perfect_tree(2)
        visited = list(nodes(t))
        assert [p for p, _ in visited] == [1, 2, 3]
        assert visited[1][1] is t

    def test_subtree_at(self):
        t = Node(Node(LEAF, LEAF), Node(LEAF, Node(LEAF, LEAF)))
        assert subtree_at(t, 2) == t
        assert subtree_at(t, 3) == t.right
        assert subtree_at(t, 4) == t.right.right

    def test_descend_records_directions(self):
        t = left_comb(3)
        path, node = descend(t, 1)
        assert node == Node(LEAF, LEAF)
        assert [went_left for _, went_left in path] == [True, True]

    def test_left_child_position(self):
        t = Node(Node(LEAF, Node(LEAF, LEAF)), LEAF)
        assert left_child_position(t, 3) == 1
        assert left_child_position(t, 1) is None

    @pytest.mark.parametrize("position", [0, 4, -1])
    def test_out_of_range_position(self, position):
        with pytest.raises(InvalidNodeError):
            imbalance(perfect_tree(2), position)

    def test_out_of_range_is_an_index_error(self):
        with pytest.raises(IndexError):
            subtree_at(LEAF, 1)


class TestImbalance:

    def test_single_node_is_level(self, single):
        assert imbalance(single, 1) == 0

    def test_right_leaning_root(self, single):
        assert imbalance(join(LEAF, single), 1) == 1

    def test_left_heavy_root(self):
        t = join(perfect_tree(2), LEAF)
        assert imbalance(t, 4) == -2

    def test_imbalances_agree_with_pointwise_values(self):
        for n in range(7):
            for t in all_trees(n):
                assert imbalances(t) == [imbalance(t, p) for p in range(1, n + 1)]

    def test_is_balanced(self, single):
        assert is_balanced(LEAF)
        assert is_balanced(single)
        assert not is_balanced(left_comb(3))
        assert is_balanced(perfect_tree(4))

    def test_balanced_means_all_imbalances_small(self):
        for n in range(8):
            for t in all_trees(n):
                assert is_balanced(t) == all(abs(g) <= 1 for g in imbalances(t))


class TestLabels:

    def test_leaf(self):
        assert label_with_imbalance(LEAF) is None

    def test_left_leaning_pair(self, single):
        labeled = label_with_imbalance(join(single, LEAF))
        assert labeled == LabeledNode(-1, LabeledNode(0, None, None), None)

    def test_right_comb_labels_from_root_down(self):
        labeled = label_with_imbalance(right_comb(3))
        assert [labeled.label, labeled.right.label, labeled.right.right.label] == [2, 1, 0]
        assert labels(labeled) == [2, 1, 0]

    def test_strip_labels_restores_the_shape(self):
        for t in all_trees(5):
            assert strip_labels(label_with_imbalance(t)) == t


class TestEnumeration:

    def test_small_cases(self):
        assert all_trees(0) == (LEAF,)
        assert len(all_trees(3)) == 5

    def test_ten_nodes(self):
        assert len(all_trees(10)) == 16796

    @pytest.mark.parametrize("n", range(11))
    def test_catalan_counts(self, n):
        assert len(all_trees(n)) == catalan(n) == comb(2 * n, n) // (n + 1)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [11, 12])
    def test_catalan_counts_large(self, n):
        assert len(all_trees(n)) == comb(2 * n, n) // (n + 1)

    def test_trees_are_distinct(self):
        assert len(set(all_trees(7))) == len(all_trees(7))

    def test_generation_key_reproduces_the_order(self):
        trees = list(all_trees(6))
        assert sorted(trees, key=generation_key) == trees

    @pytest.mark.parametrize("n", range(8))
    def test_iter_trees_streams_the_same_order(self, n):
        assert tuple(iter_trees(n)) == all_trees(n)

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            all_trees(-1)
        with pytest.raises(ValueError):
            all_balanced_trees(-1)
        with pytest.raises(ValueError):
            list(iter_trees(-1))


class TestBalancedEnumeration:

    def test_first_counts(self):
        assert [len(all_balanced_trees(n)) for n in range(12)] == [
            1, 1, 2, 1, 4, 6, 4, 17, 32, 44, 60, 70
        ]

    def test_three_nodes_is_the_perfect_tree(self):
        assert all_balanced_trees(3) == (perfect_tree(2),)

    @pytest.mark.parametrize("n", range(11))
    def test_matches_filtering_all_trees(self, n):
        assert all_balanced_trees(n) == tuple(t for t in all_trees(n) if is_balanced(t))

    def test_twelve_nodes_matches_the_series(self):
        assert len(all_balanced_trees(12)) == series("balanced", 13)[12]


class TestCodec:

    def test_leaf(self):
        assert serialize(LEAF) == b"null"

    def test_single_node(self, single):
        assert serialize(single) == b'{"l":null,"r":null}'

    def test_dumps_is_compact_json(self):
        assert json.loads(dumps(left_comb(2))) == {"l": {"l": None, "r": None}, "r": None}

    def test_round_trip(self):
        for n in range(9):
            encoded = [serialize(t) for t in all_trees(n)]
            assert len(set(encoded)) == len(encoded)
            assert tuple(deserialize(e) for e in encoded) == all_trees(n)

    def test_deserialize_accepts_text(self):
        assert deserialize('{"l":null,"r":null}') == Node(LEAF, LEAF)

    @pytest.mark.parametrize(
        "data",
        [
            b"{",
            '{"l":null}',
            "[1, 2]",
            '{"l":null,"r":null,"x":1}',
            "3",
            '{"l":{"l":null},"r":null}',
        ],
    )
    def test_malformed_input(self, data):
        with pytest.raises(TreeFormatError):
            deserialize(data)

    def test_format_errors_are_library_errors(self):
        with pytest.raises(TamariError):
            from_json("leaf")

    def test_deep_nesting_is_a_format_error(self):
        depth = 50_000
        data = '{"l":' * depth + "null" + ',"r":null}' * depth
        with pytest.raises(TreeFormatError, match="nested too deeply"):
            deserialize(data)
