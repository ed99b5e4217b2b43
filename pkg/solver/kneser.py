"""
Generalized Kneser hypergraphs KG^r(F): vertices are the members of F, edges are
the r-sets of pairwise disjoint members.
"""
import logging
from typing import Iterator, List, Optional, Tuple

from models.hypergraph import Hypergraph
from models.limits import DEFAULT_LIMITS, EngineLimits
from models.set_system import SetSystem
from utils.deadline import Deadline
from utils.errors import CapExceededError, SetSystemError

logger = logging.getLogger(__name__)


def _check_r(r: int) -> None:
    if r < 2:
        raise SetSystemError(f"Kneser uniformity r must be at least 2, got {r}")


def _disjoint_tuples(masks: List[int], r: int, deadline: Optional[Deadline] = None) -> Iterator[Tuple[int, ...]]:
    """
    Yield every ascending r-tuple of indices whose masks are pairwise disjoint,
    in lexicographic order.

    Members come in canonical order (smallest sets first), so the candidate lists
    shrink fastest near the root.
    """
    count = len(masks)
    if count < r:
        return
    later_disjoint = [
        [j for j in range(i + 1, count) if masks[i] & masks[j] == 0]
        for i in range(count)
    ]
    chosen: List[int] = []

    def extend(candidates: List[int], union: int) -> Iterator[Tuple[int, ...]]:
        need = r - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        for pos, j in enumerate(candidates):
            if len(candidates) - pos < need:
                return
            if deadline is not None:
                deadline.check()
            if masks[j] & union:
                continue
            chosen.append(j)
            if need == 1:
                yield tuple(chosen)
            else:
                narrowed = [t for t in later_disjoint[j] if masks[t] & union == 0]
                yield from extend(narrowed, union | masks[j])
            chosen.pop()

    for i in range(count - r + 1):
        chosen.append(i)
        yield from extend(later_disjoint[i], masks[i])
        chosen.pop()


def build_kneser(family: SetSystem, r: int, limits: Optional[EngineLimits] = None) -> Hypergraph:
    """
    Build KG^r(F).

    Args:
        family: The set system whose members become vertices (vertex i is member i)
        r: Edge size, at least 2
        limits: Caps; max_edges bounds the number of edges materialized

    Returns:
        Hypergraph: r-uniform, edges in lexicographic order, vertex_labels set to the members

    Raises:
        CapExceededError: When the edge count passes limits.max_edges
    """
    _check_r(r)
    limits = limits or DEFAULT_LIMITS
    deadline = Deadline.from_limits(limits)
    edges = []
    for edge in _disjoint_tuples(family.masks(), r, deadline):
        edges.append(edge)
        if len(edges) > limits.max_edges:
            raise CapExceededError("max_edges", limits.max_edges,
                                   f"KG^{r} of {family.describe()} has more edges")
    logger.debug(f"KG^{r} of {family.describe()}: {len(edges)} edges")
    # generator order is already lexicographic
    return Hypergraph(len(family), tuple(edges), vertex_labels=family.members)


def has_r_pairwise_disjoint(family: SetSystem, r: int) -> bool:
    """True iff some r members are pairwise disjoint. Stops at the first witness."""
    _check_r(r)
    return next(_disjoint_tuples(family.masks(), r), None) is not None


def count_disjoint_r_tuples(family: SetSystem, r: int, limits: Optional[EngineLimits] = None) -> int:
    """Number of unordered r-sets of pairwise disjoint members, the edge count of KG^r(F)"""
    _check_r(r)
    limits = limits or DEFAULT_LIMITS
    deadline = Deadline.from_limits(limits)
    total = 0
    for _ in _disjoint_tuples(family.masks(), r, deadline):
        total += 1
        if total > limits.max_edges:
            raise CapExceededError("max_edges", limits.max_edges,
                                   f"KG^{r} of {family.describe()} has more edges")
    return total


def family_as_hypergraph(family: SetSystem) -> Hypergraph:
    """The hypergraph ([n], F): vertex i-1 stands for ground label i"""
    edges = tuple(tuple(e - 1 for e in m) for m in family.members)
    return Hypergraph.from_edges(family.ground_size, edges,
                                 ground_labels=tuple(range(1, family.ground_size + 1)))
