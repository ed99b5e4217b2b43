from models.hypergraph import Hypergraph
from utils.errors import HypergraphError, SingletonEdgeError


def color_variable(vertex: int, color: int, m: int) -> int:
    """DIMACS variable of x_{v,c}: v*m + c + 1 for 0-based v and c"""
    return vertex * m + color + 1


def export_cnf(hypergraph: Hypergraph, m: int) -> str:
    """
    DIMACS CNF that is satisfiable iff the hypergraph is m-colorable.

    Clauses: each vertex takes at least one color, and for every edge and every color
    some vertex of the edge lacks that color. A vertex with several true colors can
    keep any of them, so no at-most-one clauses are needed.
    """
    if m < 1:
        raise HypergraphError(f"number of colors must be positive, got {m}")
    singleton = hypergraph.singleton_edge()
    if singleton is not None:
        raise SingletonEdgeError(singleton)
    clauses = []
    for v in range(hypergraph.vertex_count):
        clauses.append([color_variable(v, c, m) for c in range(m)])
    for edge in hypergraph.edges:
        for c in range(m):
            clauses.append([-color_variable(v, c, m) for v in edge])
    lines = [
        f"c {m}-coloring of a hypergraph with {hypergraph.vertex_count} vertices and {len(hypergraph.edges)} edges",
        f"c variable v*{m}+c+1 means vertex v (0-based) takes color c+1 (c 0-based)",
        f"p cnf {hypergraph.vertex_count * m} {len(clauses)}",
    ]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in clauses)
    return "\n".join(lines) + "\n"
