import balanced_tamari
from balanced_tamari import all_balanced_trees, build_poset, interval, is_balanced, rotate


def test_version():
    assert balanced_tamari.__version__ == "1.0.0"


def test_public_api():
    poset = build_poset(2)
    low, high = poset.elements[poset.minimum()], poset.elements[poset.maximum()]
    assert rotate(low, 2) == high
    assert len(interval(low, high)) == 2
    assert all(is_balanced(t) for t in all_balanced_trees(4))
