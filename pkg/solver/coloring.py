"""
Exact m-colorability and chromatic numbers of hypergraphs (no edge monochromatic),
the greedy bound that seeds them, certificate checking, and the one-extra-color
extension from the stable to the almost stable Kneser part.
"""
import logging
from typing import List, Optional, Sequence

from models.certificates import ChiResult, ColoringCertificate
from models.hypergraph import Hypergraph
from models.limits import DEFAULT_LIMITS, EngineLimits
from models.set_system import SetSystem, StabilityKind
from solver.families import filter_part
from solver.kneser import build_kneser
from utils.deadline import Deadline
from utils.errors import CertificateError, HypergraphError, SingletonEdgeError

logger = logging.getLogger(__name__)

# edge_color marker for an edge whose colored vertices already disagree
MIXED = -1


class _BacktrackColoring:
    """
    Complete backtracking search for a proper m-coloring.

    Colors are 1..m. Each vertex keeps a domain bitmask (bit c-1 for color c).
    Assigning v := c updates, for every edge through v, the number of uncolored
    vertices and the common color of the colored ones; once a single vertex of an
    edge is uncolored and the rest share c, c leaves that vertex's domain. For
    2-uniform edges this is ordinary forward checking.

    Next vertex: smallest domain, then highest degree, then lowest index. A vertex
    may only open color maxused + 1, never a higher one.
    """

    def __init__(self, hypergraph: Hypergraph, m: int, deadline: Optional[Deadline] = None):
        self.h = hypergraph
        self.m = m
        self.deadline = deadline
        self.incidence = hypergraph.incidence()
        self.degree = [len(row) for row in self.incidence]
        n = hypergraph.vertex_count
        self.colors = [0] * n
        self.domain = [(1 << m) - 1] * n
        self.edge_uncolored = [len(e) for e in hypergraph.edges]
        self.edge_color = [0] * len(hypergraph.edges)
        self.trail: List[tuple] = []
        self.nodes = 0

    def _select(self) -> int:
        best, best_key = -1, None
        for v in range(self.h.vertex_count):
            if self.colors[v]:
                continue
            key = (bin(self.domain[v]).count("1"), -self.degree[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def _assign(self, v: int, c: int) -> bool:
        """Color v with c and propagate. False on a domain wipe-out."""
        self.trail.append(("color", v, 0))
        self.colors[v] = c
        bit = 1 << (c - 1)
        ok = True
        for e in self.incidence[v]:
            self.trail.append(("edge", e, (self.edge_uncolored[e], self.edge_color[e])))
            self.edge_uncolored[e] -= 1
            current = self.edge_color[e]
            if current == 0:
                self.edge_color[e] = c
            elif current != c:
                self.edge_color[e] = MIXED
            if self.edge_color[e] != c:
                continue
            left = self.edge_uncolored[e]
            if left == 0:
                ok = False
            elif left == 1:
                u = next(w for w in self.h.edges[e] if not self.colors[w])
                if self.domain[u] & bit:
                    self.trail.append(("domain", u, self.domain[u]))
                    self.domain[u] &= ~bit
                    if not self.domain[u]:
                        ok = False
            if not ok:
                break
        return ok

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            kind, idx, old = self.trail.pop()
            if kind == "color":
                self.colors[idx] = old
            elif kind == "edge":
                self.edge_uncolored[idx], self.edge_color[idx] = old
            else:
                self.domain[idx] = old

    def solve(self) -> Optional[List[int]]:
        if self._search(0, self.h.vertex_count):
            return list(self.colors)
        return None

    def _search(self, max_used: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        self.nodes += 1
        if self.deadline is not None:
            self.deadline.check()
        v = self._select()
        allowed = self.domain[v]
        for c in range(1, min(self.m, max_used + 1) + 1):
            if not allowed & (1 << (c - 1)):
                continue
            mark = len(self.trail)
            if self._assign(v, c) and self._search(max(max_used, c), remaining - 1):
                return True
            self._undo(mark)
        return False


def _check_colorable_input(hypergraph: Hypergraph, m: int) -> None:
    if m < 1:
        raise HypergraphError(f"number of colors must be positive, got {m}")
    singleton = hypergraph.singleton_edge()
    if singleton is not None:
        raise SingletonEdgeError(singleton)


def is_m_colorable(hypergraph: Hypergraph, m: int, limits: Optional[EngineLimits] = None,
                   deadline: Optional[Deadline] = None) -> Optional[ColoringCertificate]:
    """
    Decide m-colorability by complete search.

    Args:
        hypergraph: The hypergraph to color
        m: Number of colors available
        limits: Backend, threads and time budget
        deadline: Shared budget when called from a larger computation

    Returns:
        Optional[ColoringCertificate]: A proper m-coloring, or None when none exists

    Raises:
        SingletonEdgeError: A one-vertex edge rules out every m
        CapExceededError: The time budget ran out before the search finished
    """
    _check_colorable_input(hypergraph, m)
    limits = limits or DEFAULT_LIMITS
    deadline = deadline or Deadline.from_limits(limits)
    if not hypergraph.edges:
        return ColoringCertificate(tuple([1] * hypergraph.vertex_count), m)
    if limits.backend == "cpsat":
        from solver.cpsat_coloring import find_coloring_cpsat
        colors = find_coloring_cpsat(hypergraph, m, limits, deadline)
    else:
        search = _BacktrackColoring(hypergraph, m, deadline)
        colors = search.solve()
        logger.debug(f"{m}-colorability on {hypergraph.vertex_count} vertices: "
                     f"{'found' if colors else 'refuted'} after {search.nodes} nodes")
    if colors is None:
        return None
    return ColoringCertificate(tuple(colors), m)


def degree_order(hypergraph: Hypergraph) -> List[int]:
    """Vertices by descending degree, ties by index"""
    degrees = hypergraph.degrees()
    return sorted(range(hypergraph.vertex_count), key=lambda v: (-degrees[v], v))


def greedy_coloring(hypergraph: Hypergraph, order: Optional[Sequence[int]] = None) -> ColoringCertificate:
    """
    Give each vertex, in order, the smallest color that completes no monochromatic edge.

    Args:
        hypergraph: Hypergraph without singleton edges
        order: A permutation of the vertices; descending degree when omitted

    Returns:
        ColoringCertificate: A proper coloring whose num_colors is the greedy bound
    """
    _check_colorable_input(hypergraph, 1)
    if order is None:
        order = degree_order(hypergraph)
    elif sorted(order) != list(range(hypergraph.vertex_count)):
        raise HypergraphError("order must be a permutation of the vertices")
    incidence = hypergraph.incidence()
    colors = [0] * hypergraph.vertex_count
    for v in order:
        blocked = set()
        for e in incidence[v]:
            others = [colors[w] for w in hypergraph.edges[e] if w != v]
            if all(others) and len(set(others)) == 1:
                blocked.add(others[0])
        c = 1
        while c in blocked:
            c += 1
        colors[v] = c
    return ColoringCertificate(tuple(colors), max(colors, default=0))


def greedy_upper_bound(hypergraph: Hypergraph, order: Optional[Sequence[int]] = None) -> int:
    """Number of colors the greedy coloring uses; an upper bound on chi"""
    return greedy_coloring(hypergraph, order).num_colors


def chromatic_number(hypergraph: Hypergraph, limits: Optional[EngineLimits] = None,
                     deadline: Optional[Deadline] = None) -> ChiResult:
    """
    Exact chromatic number with a certificate.

    chi is 0 without vertices and 1 without edges. Otherwise the greedy bound gives an
    upper value and m = 2, 3, ... is tried until a coloring is found; the value just
    below chi is always refuted by complete search.

    Raises:
        SingletonEdgeError: Carries the witnessing edge index
    """
    singleton = hypergraph.singleton_edge()
    if singleton is not None:
        raise SingletonEdgeError(singleton)
    limits = limits or DEFAULT_LIMITS
    deadline = deadline or Deadline.from_limits(limits)
    if hypergraph.vertex_count == 0:
        return ChiResult(0, None, method="trivial")
    if not hypergraph.edges:
        return ChiResult(1, ColoringCertificate(tuple([1] * hypergraph.vertex_count), 1), method="trivial")

    upper = greedy_coloring(hypergraph)
    logger.info(f"Chromatic number on {hypergraph.vertex_count} vertices, "
                f"{len(hypergraph.edges)} edges: greedy bound {upper.num_colors}")
    for m in range(2, upper.num_colors):
        found = is_m_colorable(hypergraph, m, limits, deadline)
        if found is not None:
            return ChiResult(m, found, refuted_below=m - 1 if m > 2 else None, method=limits.backend)
        logger.info(f"No {m}-coloring exists")
    chi = upper.num_colors
    return ChiResult(chi, upper, refuted_below=chi - 1 if chi > 2 else None, method=limits.backend)


def verify_coloring(hypergraph: Hypergraph, cert: ColoringCertificate) -> bool:
    """
    True iff the certificate colors every vertex from 1..num_colors and no edge is
    monochromatic.

    Raises:
        CertificateError: The certificate length differs from the vertex count
    """
    if len(cert.colors) != hypergraph.vertex_count:
        raise CertificateError(f"certificate colors {len(cert.colors)} vertices, "
                               f"hypergraph has {hypergraph.vertex_count}")
    if any(not 1 <= c <= cert.num_colors for c in cert.colors):
        return False
    return all(len({cert.colors[v] for v in edge}) >= 2 for edge in hypergraph.edges)


def extend_stable_coloring(family: SetSystem, r: int, cert: ColoringCertificate,
                           limits: Optional[EngineLimits] = None) -> ColoringCertificate:
    """
    Extend a proper coloring of KG^r(F_r-stab) to KG^r(F_almost-r-stab) with one new color.

    Stable members keep their colors; every almost stable member that is not stable
    gets color num_colors + 1. Such a member meets {1, ..., r-1}, so any r of them
    contain two that intersect and no edge can be monochromatic in the new color.

    Args:
        family: The whole set system
        r: Kneser uniformity
        cert: Proper coloring of the stable part's Kneser hypergraph, vertices in the
            stable part's canonical order (chi = 0 parts take colors=() and num_colors=0)

    Returns:
        ColoringCertificate: Indexed by the almost stable part's canonical order

    Raises:
        CertificateError: cert does not properly color the stable part
    """
    stable = filter_part(family, r, StabilityKind.STABLE)
    almost = filter_part(family, r, StabilityKind.ALMOST_STABLE)
    stable_graph = build_kneser(stable, r, limits)
    if not verify_coloring(stable_graph, cert):
        raise CertificateError("coloring does not properly color KG^r of the stable part")
    color_of = dict(zip(stable.members, cert.colors))
    if len(almost) == len(stable):
        return ColoringCertificate(tuple(color_of[m] for m in almost.members), cert.num_colors)
    fresh = cert.num_colors + 1
    colors = tuple(color_of.get(m, fresh) for m in almost.members)
    logger.debug(f"Extended {len(stable)} stable colors to {len(almost)} almost stable members with color {fresh}")
    return ColoringCertificate(colors, fresh)
