import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from models.hypergraph import Hypergraph  # noqa: E402
from solver.families import make_set_system  # noqa: E402

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "golden")


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def five_cycle():
    return Hypergraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def fano_plane():
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return Hypergraph.from_edges(7, lines)


@pytest.fixture
def petersen_family():
    """The 2-subsets of [5]; its Kneser graph is the Petersen graph"""
    from solver.families import complete_k_subsets
    return complete_k_subsets(5, 2)


@pytest.fixture
def small_family():
    return make_set_system(6, [(1, 2), (3, 4), (5, 6), (1, 3), (2, 5, 6)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
