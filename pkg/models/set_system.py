from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Tuple

from utils.bitmask import to_mask

# A member of a set system: ascending, distinct, 1-based labels
Subset = Tuple[int, ...]


class StabilityKind(str, Enum):
    """Which stability predicate a filter applies"""
    STABLE = "stable"
    ALMOST_STABLE = "almost"


def canonical_key(member: Subset) -> Tuple[int, Subset]:
    """Sort key for canonical member order: by size, then lexicographic"""
    return (len(member), member)


@dataclass(frozen=True)
class SetSystem:
    """
    A duplicate-free family of nonempty subsets of the ground set [n].

    Instances are normally built through solver.families.make_set_system, which
    validates and canonicalizes the members. The constructor assumes its input is
    already canonical.

    Attributes:
        ground_size: The n of the ground set [n]
        members: Members in canonical order (size, then lexicographic)
        duplicates_collapsed: How many duplicate inputs were dropped on construction
    """
    ground_size: int
    members: Tuple[Subset, ...]
    duplicates_collapsed: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, member: Iterable[int]) -> bool:
        return tuple(sorted(member)) in set(self.members)

    def masks(self) -> List[int]:
        """Members as bitmasks over [n], bit i-1 standing for label i"""
        return [to_mask(m, offset=1) for m in self.members]

    def union(self) -> Tuple[int, ...]:
        """All labels covered by some member"""
        return tuple(sorted({e for m in self.members for e in m}))

    def describe(self) -> str:
        return f"SetSystem(n={self.ground_size}, {len(self.members)} members)"
