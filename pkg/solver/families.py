"""
Set systems on [n]: validation, stability predicates, stable parts, and the two
explicit counterexample families.
"""
import logging
from itertools import combinations
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from models.limits import DEFAULT_LIMITS, EngineLimits
from models.set_system import SetSystem, StabilityKind, Subset, canonical_key
from utils.errors import CapExceededError, SetSystemError

logger = logging.getLogger(__name__)


def validate_member(raw: Iterable[int], n: int, line=None, error=SetSystemError) -> Subset:
    """Check one member against [n] and return it sorted; `error` is the exception class raised"""
    member = [int(e) for e in raw]
    if not member:
        raise error("empty member", line)
    if len(set(member)) != len(member):
        raise error(f"member {member} repeats a label", line)
    for e in member:
        if not 1 <= e <= n:
            raise error(f"element {e} out of range [1,{n}]", line)
    return tuple(sorted(member))


def make_set_system(n: int, subsets: Iterable[Iterable[int]]) -> SetSystem:
    """
    Validate members and build the canonical set system.

    Args:
        n: Ground-set size, at least 1
        subsets: Members as iterables of 1-based labels

    Returns:
        SetSystem: Members sorted by size then lexicographically, duplicates collapsed

    Raises:
        SetSystemError: On n < 1, an empty member, a repeated label or an out-of-range label
    """
    if n < 1:
        raise SetSystemError(f"ground size must be positive, got {n}")
    seen = set()
    members: List[Subset] = []
    duplicates = 0
    for raw in subsets:
        member = validate_member(raw, n)
        if member in seen:
            duplicates += 1
            continue
        seen.add(member)
        members.append(member)
    if duplicates:
        logger.warning(f"Collapsed {duplicates} duplicate member(s) on ground set [{n}]")
    members.sort(key=canonical_key)
    return SetSystem(n, tuple(members), duplicates)


def complete_k_subsets(n: int, k: int, limits: Optional[EngineLimits] = None) -> SetSystem:
    """
    All k-subsets of [n], in lexicographic order.

    Raises:
        CapExceededError: C(n,k) is above limits.max_members; nothing is enumerated
    """
    if n < 1:
        raise SetSystemError(f"ground size must be positive, got {n}")
    if not 1 <= k <= n:
        raise SetSystemError(f"need 1 <= k <= n, got k={k}, n={n}")
    limits = limits or DEFAULT_LIMITS
    count = comb(n, k)
    if count > limits.max_members:
        raise CapExceededError("max_members", limits.max_members, f"C({n},{k}) = {count} members")
    return SetSystem(n, tuple(combinations(range(1, n + 1), k)))


def _check_sigma(sigma: Sequence[int], n: int) -> Subset:
    member = tuple(sorted(sigma))
    if not member or member[0] < 1 or member[-1] > n or len(set(member)) != len(member):
        raise SetSystemError(f"{list(sigma)} is not a nonempty subset of [{n}]")
    return member


def is_s_stable(sigma: Sequence[int], n: int, s: int) -> bool:
    """
    True iff s <= |i - j| <= n - s for all distinct i, j in sigma.

    The smallest pairwise gap of a sorted set is between neighbours and the largest
    is max - min, so two comparisons per neighbour pair suffice.
    """
    member = _check_sigma(sigma, n)
    if len(member) == 1:
        return True
    if member[-1] - member[0] > n - s:
        return False
    return all(b - a >= s for a, b in zip(member, member[1:]))


def is_almost_s_stable(sigma: Sequence[int], n: int, s: int) -> bool:
    """True iff s <= |i - j| for all distinct i, j in sigma"""
    member = _check_sigma(sigma, n)
    return all(b - a >= s for a, b in zip(member, member[1:]))


def filter_part(family: SetSystem, s: int, kind: StabilityKind) -> SetSystem:
    """The s-stable or almost s-stable members of a family, same ground set"""
    if s < 1:
        raise SetSystemError(f"s must be positive, got {s}")
    kind = StabilityKind(kind)
    test = is_s_stable if kind == StabilityKind.STABLE else is_almost_s_stable
    kept = tuple(m for m in family.members if test(m, family.ground_size, s))
    return SetSystem(family.ground_size, kept)


def family_F_nr(n: int, r: int) -> SetSystem:
    """The 2-subsets of [n] that are not r-stable"""
    if n < 2:
        raise SetSystemError(f"need n >= 2, got {n}")
    if r < 2:
        raise SetSystemError(f"need r >= 2, got {r}")
    pairs = tuple(p for p in combinations(range(1, n + 1), 2) if not is_s_stable(p, n, r))
    return SetSystem(n, pairs)


def prop2_ground_size(r: int) -> int:
    return r * (2 * r - 1)


def prop2_added_pairs(r: int) -> List[Subset]:
    """
    The r-stable pairs added to F(n, r): {1+ir, 1+(i+1)r} for i = 0..2r-3 and the
    closing pair {1+(2r-2)r, 1}.
    """
    pairs = [(1 + i * r, 1 + (i + 1) * r) for i in range(2 * r - 2)]
    pairs.append((1, 1 + (2 * r - 2) * r))
    return pairs


def family_prop2(r: int) -> SetSystem:
    """F(n, r) on n = r(2r-1) augmented with a closed chain of r-stable pairs"""
    if r < 2:
        raise SetSystemError(f"need r >= 2, got {r}")
    n = prop2_ground_size(r)
    base = family_F_nr(n, r)
    return make_set_system(n, list(base.members) + prop2_added_pairs(r))


def prop2_obstructions(r: int) -> Tuple[List[Subset], Subset]:
    """
    The (r+1)-sets every one of whose pairs lies in family_prop2(r).

    Returns:
        Tuple: ([A_0, ..., A_{2r-3}], C) with A_i = {1+ir, ..., 1+(i+1)r} and
        C = {1+(2r-2)r, ..., (2r-1)r, 1}
    """
    n = prop2_ground_size(r)
    chain = [tuple(range(1 + i * r, 2 + (i + 1) * r)) for i in range(2 * r - 2)]
    closing = tuple(sorted({1} | set(range(1 + (2 * r - 2) * r, n + 1))))
    return chain, closing


def prop2_forced_removal(r: int) -> Subset:
    """The only (r-1)-set hitting every A_i: {1+r, 1+3r, ..., 1+(2r-3)r}"""
    return tuple(1 + (2 * j + 1) * r for j in range(r - 1))


def random_family(rng: np.random.Generator, n: int, count: int,
                  size_range: Tuple[int, int], max_attempts_factor: int = 20) -> SetSystem:
    """
    Sample `count` distinct members of [n] with uniform size in size_range.

    Each member is a uniform sample of labels without replacement; duplicates are
    rejected and redrawn. After count * max_attempts_factor draws the family is
    returned with however many distinct members were found.
    """
    lo, hi = size_range
    hi = min(hi, n)
    lo = min(lo, hi)
    seen = set()
    members: List[Subset] = []
    attempts = 0
    while len(members) < count and attempts < count * max_attempts_factor:
        attempts += 1
        size = int(rng.integers(lo, hi + 1))
        member = tuple(sorted(int(e) + 1 for e in rng.choice(n, size=size, replace=False)))
        if member in seen:
            continue
        seen.add(member)
        members.append(member)
    return make_set_system(n, members)
