"""Brute-force reference computations for small instances."""
from itertools import combinations

import numpy as np

from models.hypergraph import Hypergraph


def random_hypergraph(rng: np.random.Generator, max_vertices: int, max_edges: int,
                      size_range=(2, 4), min_vertices: int = 1) -> Hypergraph:
    n = int(rng.integers(min_vertices, max_vertices + 1))
    wanted = int(rng.integers(0, max_edges + 1))
    lo, hi = size_range
    edges = set()
    for _ in range(wanted):
        size = int(rng.integers(lo, hi + 1))
        if size > n:
            continue
        edges.add(tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False))))
    return Hypergraph.from_edges(n, edges)


def all_colorings(n: int, m: int, pin_first: bool = True) -> np.ndarray:
    """Every coloring of n vertices with colors 0..m-1 as rows; vertex 0 pinned to 0 when asked"""
    free = n - 1 if pin_first else n
    if free <= 0:
        return np.zeros((1, n), dtype=np.int8)
    grid = np.indices((m,) * free, dtype=np.int8).reshape(free, -1).T
    if not pin_first:
        return grid
    return np.hstack([np.zeros((grid.shape[0], 1), dtype=np.int8), grid])


def brute_colorable(hypergraph: Hypergraph, m: int) -> bool:
    n = hypergraph.vertex_count
    if n == 0:
        return True
    colors = all_colorings(n, m)
    proper = np.ones(colors.shape[0], dtype=bool)
    for edge in hypergraph.edges:
        cols = colors[:, list(edge)]
        proper &= ~np.all(cols == cols[:, :1], axis=1)
        if not proper.any():
            return False
    return True


def brute_chi(hypergraph: Hypergraph) -> int:
    n = hypergraph.vertex_count
    if n == 0:
        return 0
    m = 1
    while not brute_colorable(hypergraph, m):
        m += 1
    return m


def induced(hypergraph: Hypergraph, removed) -> Hypergraph:
    gone = set(removed)
    kept = [v for v in range(hypergraph.vertex_count) if v not in gone]
    index = {v: i for i, v in enumerate(kept)}
    edges = [tuple(index[v] for v in e) for e in hypergraph.edges if not gone & set(e)]
    return Hypergraph.from_edges(len(kept), edges)


def brute_defect(hypergraph: Hypergraph, r: int):
    """(cd, lexicographically first optimal removal set) over all 2^n removal sets"""
    for size in range(hypergraph.vertex_count + 1):
        for removed in combinations(range(hypergraph.vertex_count), size):
            if brute_colorable(induced(hypergraph, removed), r):
                return size, removed
    raise AssertionError("unreachable")
