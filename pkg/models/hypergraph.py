from dataclasses import dataclass
from typing import List, Optional, Tuple

from models.set_system import Subset
from utils.errors import HypergraphError

Edge = Tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """
    Abstract hypergraph on vertices 0..vertex_count-1.

    Attributes:
        vertex_count: Number of vertices
        edges: Edges as ascending tuples of vertex indices, in canonical order
        vertex_labels: Optional subset label per vertex (Kneser outputs)
        ground_labels: Optional 1-based ground label per vertex (families seen as hypergraphs)
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    vertex_labels: Optional[Tuple[Subset, ...]] = None
    ground_labels: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise HypergraphError("vertex_count must be non-negative")
        seen = set()
        for idx, edge in enumerate(self.edges):
            if not edge:
                raise HypergraphError(f"edge {idx} is empty")
            if len(set(edge)) != len(edge):
                raise HypergraphError(f"edge {idx} repeats a vertex: {edge}")
            if min(edge) < 0 or max(edge) >= self.vertex_count:
                raise HypergraphError(f"edge {idx} has a vertex outside 0..{self.vertex_count - 1}: {edge}")
            key = tuple(sorted(edge))
            if key in seen:
                raise HypergraphError(f"edge {idx} duplicates an earlier edge: {edge}")
            seen.add(key)
        if self.vertex_labels is not None and len(self.vertex_labels) != self.vertex_count:
            raise HypergraphError("vertex_labels length differs from vertex_count")
        if self.ground_labels is not None and len(self.ground_labels) != self.vertex_count:
            raise HypergraphError("ground_labels length differs from vertex_count")

    @classmethod
    def from_edges(cls, vertex_count: int, edges, **labels) -> "Hypergraph":
        """Build with edges sorted inside and across, the canonical form"""
        canon = sorted(tuple(sorted(e)) for e in edges)
        return cls(vertex_count, tuple(canon), **labels)

    def incidence(self) -> List[List[int]]:
        """Edge indices touching each vertex"""
        inc: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for idx, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(idx)
        return inc

    def degrees(self) -> List[int]:
        return [len(row) for row in self.incidence()]

    def singleton_edge(self) -> Optional[int]:
        """Index of the first one-vertex edge, if any"""
        for idx, edge in enumerate(self.edges):
            if len(edge) == 1:
                return idx
        return None

    def label_of(self, vertex: int) -> int:
        """Name of a vertex in reports: its ground label if known, else the index"""
        if self.ground_labels is not None:
            return self.ground_labels[vertex]
        return vertex

    def without_edge(self, index: int) -> "Hypergraph":
        """Same vertices and labels, edge `index` dropped"""
        edges = self.edges[:index] + self.edges[index + 1:]
        return Hypergraph(self.vertex_count, edges, self.vertex_labels, self.ground_labels)
