"""
r-colorability defect: the fewest vertices whose removal leaves an r-colorable
induced hypergraph (edges kept only when they avoid every removed vertex).
"""
import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from models.certificates import ColoringCertificate, DefectCertificate, DefectResult, RefutationRecord
from models.hypergraph import Hypergraph
from models.limits import DEFAULT_LIMITS, EngineLimits
from solver.coloring import is_m_colorable, verify_coloring
from utils.bitmask import from_mask, popcount, to_mask
from utils.deadline import Deadline
from utils.errors import CapExceededError, CertificateError, HypergraphError

logger = logging.getLogger(__name__)


def induced_on_remaining(hypergraph: Hypergraph, removed: Sequence[int]) -> Tuple[Hypergraph, List[int]]:
    """
    Delete vertices and every edge touching them.

    Args:
        hypergraph: The original hypergraph
        removed: Vertex indices to delete

    Returns:
        Tuple[Hypergraph, List[int]]: The induced hypergraph on the remaining vertices,
        re-indexed in ascending order, and the original index of each new vertex
    """
    gone = set(removed)
    if any(not 0 <= v < hypergraph.vertex_count for v in gone):
        raise HypergraphError(f"removal set {sorted(gone)} has indices outside the hypergraph")
    kept = [v for v in range(hypergraph.vertex_count) if v not in gone]
    new_index = {v: i for i, v in enumerate(kept)}
    edges = tuple(
        tuple(new_index[v] for v in edge)
        for edge in hypergraph.edges
        if not gone.intersection(edge)
    )
    vertex_labels = None
    if hypergraph.vertex_labels is not None:
        vertex_labels = tuple(hypergraph.vertex_labels[v] for v in kept)
    ground_labels = None
    if hypergraph.ground_labels is not None:
        ground_labels = tuple(hypergraph.ground_labels[v] for v in kept)
    return Hypergraph(len(kept), edges, vertex_labels, ground_labels), kept


class _DefectSearch:
    """
    Removal-set search shared by the exact defect and the lower-bound report.

    Obstructions are (vertex mask, hits needed) pairs every successful removal set
    must satisfy: a maximal clique K of the 2-uniform part with |K| > r needs at least
    |K| - r removed vertices, since a clique takes pairwise distinct colors. A
    singleton edge needs its vertex removed, and for r = 1 every edge needs a hit.
    """

    def __init__(self, hypergraph: Hypergraph, r: int, limits: EngineLimits, deadline: Deadline):
        if r < 1:
            raise HypergraphError(f"r must be positive, got {r}")
        self.h = hypergraph
        self.r = r
        self.limits = limits
        self.deadline = deadline
        self.obstructions = self._find_obstructions()
        self.edge_masks = [to_mask(edge) for edge in hypergraph.edges]
        self.refuted_remainders: Set[int] = set()
        self.memo_hits = 0
        self.tested = 0
        self.pruned = 0

    def _find_obstructions(self) -> List[Tuple[int, int]]:
        found = set()
        for edge in self.h.edges:
            if len(edge) == 1 or self.r == 1:
                found.add((to_mask(edge), 1))
        graph = nx.Graph()
        graph.add_nodes_from(range(self.h.vertex_count))
        graph.add_edges_from(e for e in self.h.edges if len(e) == 2)
        for clique in nx.find_cliques(graph):
            if len(clique) > self.r:
                found.add((to_mask(clique), len(clique) - self.r))
        obstructions = sorted(found, key=lambda ob: (-ob[1], ob[0]))
        logger.debug(f"{len(obstructions)} clique obstructions for r={self.r}")
        return obstructions

    def hits_obstructions(self, removed_mask: int) -> bool:
        return all(popcount(removed_mask & mask) >= need for mask, need in self.obstructions)

    def remainder_key(self, removed_mask: int) -> int:
        """Bitmask over edge indices of the edges that survive the removal"""
        key = 0
        for i, mask in enumerate(self.edge_masks):
            if not mask & removed_mask:
                key |= 1 << i
        return key

    def coloring_after(self, removed: Tuple[int, ...]) -> Optional[ColoringCertificate]:
        """
        r-coloring of the remainder, or None. Refutations are memoized by surviving
        edge set: removal sets that differ only in vertices outside those edges leave
        the same colorability question.
        """
        key = self.remainder_key(to_mask(removed))
        if key in self.refuted_remainders:
            self.memo_hits += 1
            return None
        induced, _ = induced_on_remaining(self.h, removed)
        self.tested += 1
        found = is_m_colorable(induced, self.r, self.limits, self.deadline)
        if found is None:
            self.refuted_remainders.add(key)
        return found

    def candidates(self, size: int):
        for removed in combinations(range(self.h.vertex_count), size):
            self.deadline.check()
            yield removed

    def obstruction_tuples(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(from_mask(mask)) for mask, _ in self.obstructions)


def colorability_defect(hypergraph: Hypergraph, r: int, limits: Optional[EngineLimits] = None,
                        deadline: Optional[Deadline] = None) -> DefectResult:
    """
    Exact cd_r by staged search over removal sizes 0, 1, 2, ...

    Within a size, removal sets are visited in lexicographic order, so the returned
    certificate is the lexicographically smallest optimal one. Sets that miss a clique
    obstruction are discarded without a colorability search.

    Raises:
        CapExceededError: The search would pass limits.max_defect_size or the time budget
    """
    limits = limits or DEFAULT_LIMITS
    deadline = deadline or Deadline.from_limits(limits)
    search = _DefectSearch(hypergraph, r, limits, deadline)
    for size in range(hypergraph.vertex_count + 1):
        if limits.max_defect_size is not None and size > limits.max_defect_size:
            raise CapExceededError("max_defect_size", limits.max_defect_size,
                                   f"cd_{r} is larger than {limits.max_defect_size}")
        logger.info(f"cd_{r}: trying removal sets of size {size}")
        for removed in search.candidates(size):
            if not search.hits_obstructions(to_mask(removed)):
                search.pruned += 1
                continue
            found = search.coloring_after(removed)
            if found is None:
                continue
            certificate = DefectCertificate(removed, found, r)
            logger.info(f"cd_{r} = {size} after {search.tested} colorability searches "
                        f"({search.pruned} candidates pruned)")
            return DefectResult(
                cd=size,
                certificate=certificate,
                refuted_sizes=tuple(range(size)),
                candidates_tested=search.tested,
                candidates_pruned=search.pruned,
                removed_labels=tuple(hypergraph.label_of(v) for v in removed),
                label_kind="ground" if hypergraph.ground_labels is not None else "index",
            )
    # removing every vertex always succeeds, so this is unreachable
    raise AssertionError("defect search exhausted all removal sizes")


def verify_defect_certificate(hypergraph: Hypergraph, cert: DefectCertificate) -> bool:
    """
    True iff the coloring uses at most r colors and properly colors the hypergraph
    left after removing cert.removed.

    Raises:
        CertificateError: Removal indices or coloring length do not fit the hypergraph
    """
    if any(not 0 <= v < hypergraph.vertex_count for v in cert.removed):
        raise CertificateError(f"removal set {list(cert.removed)} does not fit {hypergraph.vertex_count} vertices")
    if len(set(cert.removed)) != len(cert.removed):
        raise CertificateError("removal set repeats a vertex")
    induced, _ = induced_on_remaining(hypergraph, cert.removed)
    if len(cert.coloring.colors) != induced.vertex_count:
        raise CertificateError(f"coloring covers {len(cert.coloring.colors)} vertices, "
                               f"{induced.vertex_count} remain")
    if cert.coloring.num_colors > cert.r:
        return False
    return verify_coloring(induced, cert.coloring)


def defect_lower_bound_report(hypergraph: Hypergraph, r: int, b: int, limits: Optional[EngineLimits] = None,
                              deadline: Optional[Deadline] = None) -> RefutationRecord:
    """
    Try to prove cd_r(H) > b: every removal set of size <= b must leave a remainder
    that is not r-colorable.

    Each set is refuted either because it misses a clique obstruction or by a
    complete colorability search. The first set that leaves an r-colorable remainder
    is returned as a counterwitness and the record is marked not refuted.
    """
    if not 0 <= b <= hypergraph.vertex_count:
        raise HypergraphError(f"b must lie in 0..{hypergraph.vertex_count}, got {b}")
    limits = limits or DEFAULT_LIMITS
    deadline = deadline or Deadline.from_limits(limits)
    search = _DefectSearch(hypergraph, r, limits, deadline)
    per_size: Dict[int, int] = {}
    by_obstruction = by_search = 0
    for size in range(b + 1):
        per_size[size] = 0
        for removed in search.candidates(size):
            if not search.hits_obstructions(to_mask(removed)):
                by_obstruction += 1
                per_size[size] += 1
                continue
            if search.coloring_after(removed) is not None:
                logger.info(f"cd_{r} > {b} fails: removing {list(removed)} leaves an {r}-colorable remainder")
                return RefutationRecord(r, b, False, per_size, by_obstruction, by_search,
                                        counterwitness=removed, obstructions=search.obstruction_tuples(),
                                        memo_hits=search.memo_hits)
            by_search += 1
            per_size[size] += 1
    logger.info(f"cd_{r} > {b}: {by_obstruction + by_search} removal sets refuted "
                f"({by_obstruction} by obstruction, {by_search} by search)")
    return RefutationRecord(r, b, True, per_size, by_obstruction, by_search,
                            obstructions=search.obstruction_tuples(), memo_hits=search.memo_hits)
