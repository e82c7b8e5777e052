"""
Shared fixtures for the balanced-tamari test suite
"""
import logging

import pytest

from balanced_tamari.binary_tree import LEAF, Node, Tree
from balanced_tamari.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are re-read from the environment for every test"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_package_logger():
    yield
    logger = logging.getLogger("balanced_tamari")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


@pytest.fixture
def single() -> Tree:
    return Node(LEAF, LEAF)


@pytest.fixture
def fibonacci_tree():
    """The Fibonacci-shaped balanced tree of height h: every internal node leans left"""

    def build(h: int) -> Tree:
        if h <= 0:
            return LEAF
        if h == 1:
            return Node(LEAF, LEAF)
        return Node(build(h - 1), build(h - 2))

    return build
