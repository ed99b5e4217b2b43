from typing import Optional

from models.hypergraph import Hypergraph
from utils.errors import HypergraphError, ParseError


def hypergraph_to_json(hypergraph: Hypergraph) -> dict:
    """{vertex_count, labels?, ground_labels?, edges}"""
    data = {"vertex_count": hypergraph.vertex_count, "edges": [list(e) for e in hypergraph.edges]}
    if hypergraph.vertex_labels is not None:
        data["labels"] = [list(m) for m in hypergraph.vertex_labels]
    if hypergraph.ground_labels is not None:
        data["ground_labels"] = list(hypergraph.ground_labels)
    return data


def hypergraph_from_json(data: dict) -> Hypergraph:
    try:
        vertex_count = int(data["vertex_count"])
        edges = [tuple(int(v) for v in e) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"hypergraph JSON needs `vertex_count` and `edges`: {exc}")
    labels = data.get("labels")
    ground = data.get("ground_labels")
    try:
        return Hypergraph.from_edges(
            vertex_count, edges,
            vertex_labels=tuple(tuple(m) for m in labels) if labels is not None else None,
            ground_labels=tuple(ground) if ground is not None else None,
        )
    except HypergraphError as exc:
        raise ParseError(str(exc))


def write_edge_list(hypergraph: Hypergraph) -> str:
    """One edge per line, space-separated 0-based indices, after a `# vertices N` comment"""
    lines = [f"# vertices {hypergraph.vertex_count}"]
    lines.extend(" ".join(str(v) for v in edge) for edge in hypergraph.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str, vertex_count: Optional[int] = None) -> Hypergraph:
    """
    Parse an edge list. The vertex count comes from the argument, else from a
    `# vertices N` comment, else from the largest index.
    """
    edges = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            parts = stripped[1:].split()
            if len(parts) == 2 and parts[0] == "vertices" and parts[1].isdigit():
                declared = int(parts[1])
            continue
        if not stripped:
            continue
        try:
            edges.append(tuple(int(tok) for tok in stripped.split()))
        except ValueError:
            raise ParseError(f"edge {stripped!r} has a non-integer index", lineno)
    if vertex_count is None:
        vertex_count = declared if declared is not None else 1 + max((max(e) for e in edges), default=-1)
    try:
        return Hypergraph.from_edges(vertex_count, edges)
    except HypergraphError as exc:
        raise ParseError(str(exc))
