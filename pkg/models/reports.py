from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from models.certificates import ChiResult, ColoringCertificate, DefectResult, RefutationRecord

REPORT_SCHEMA_VERSION = 1


class Verdict(str, Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"


class GapVariant(str, Enum):
    """Which stable part the left-hand side is taken over"""
    FRICK_STABLE = "FrickStable"
    WEAK_ALMOST_STABLE = "WeakAlmostStable"


class Comparison(str, Enum):
    EQUAL = "Equal"
    LESS = "Less"
    GREATER = "Greater"

    @classmethod
    def of(cls, computed: int, expected: int) -> "Comparison":
        if computed == expected:
            return cls.EQUAL
        return cls.LESS if computed < expected else cls.GREATER


@dataclass(frozen=True)
class GapReport:
    """
    One side-by-side evaluation of chi(KG^r(part)) >= ceil(cd_r(F) / (r - 1)).

    Attributes:
        family: Human-readable family descriptor
        ground_size: n of the family
        member_count: Number of members of the whole family
        part_size: Number of members in the stable (or almost stable) part
        r: Uniformity of the Kneser hypergraph and number of colors for the defect
        variant: Which conjecture the report evaluates
        lhs: Chromatic number of the Kneser hypergraph of the part
        rhs: ceil(cd / (r - 1))
        defect: The defect computation behind rhs
        verdict: Violated exactly when lhs.chi < rhs
        note: Free text, e.g. the exploratory flag for r = 2
        expected: Verdict predicted by a theorem or remark, when one applies
    """
    family: str
    ground_size: int
    member_count: int
    part_size: int
    r: int
    variant: GapVariant
    lhs: ChiResult
    rhs: int
    defect: DefectResult
    verdict: Verdict
    note: str = ""
    expected: Optional[Verdict] = None

    @property
    def consistent(self) -> bool:
        """The verdict recomputed from the two sides agrees with the stored one"""
        recomputed = Verdict.VIOLATED if self.lhs.chi < self.rhs else Verdict.SATISFIED
        return recomputed == self.verdict


@dataclass(frozen=True)
class ScanParams:
    """Seeded description of a random family scan. All ranges are inclusive."""
    ground_size_range: Tuple[int, int] = (4, 9)
    member_count_range: Tuple[int, int] = (1, 10)
    member_size_range: Tuple[int, int] = (1, 3)
    r_range: Tuple[int, int] = (2, 3)
    samples: int = 20
    seed: int = 0

    def __post_init__(self):
        for name in ("ground_size_range", "member_count_range", "member_size_range", "r_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")
        if self.ground_size_range[0] < 1:
            raise ValueError("ground sizes must be positive")
        if self.member_size_range[0] < 1:
            raise ValueError("member sizes must be positive")
        if self.member_count_range[0] < 0:
            raise ValueError("member counts must be non-negative")
        if self.r_range[0] < 2:
            raise ValueError("r must be at least 2")
        if self.samples < 0:
            raise ValueError("samples must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class ScanSkip:
    sample_index: int
    family: str
    r: int
    reason: str


@dataclass
class ScanResult:
    """Reports ordered violations first, then by sample index"""
    params: ScanParams
    reports: List[GapReport] = field(default_factory=list)
    sample_indices: List[int] = field(default_factory=list)
    skips: List[ScanSkip] = field(default_factory=list)

    def summary(self) -> Dict[str, int]:
        violated = sum(1 for rep in self.reports if rep.verdict == Verdict.VIOLATED)
        return {
            "samples": self.params.samples,
            "reports": len(self.reports),
            "violated": violated,
            "satisfied": len(self.reports) - violated,
            "frick_violated": sum(1 for rep in self.reports
                                  if rep.verdict == Verdict.VIOLATED and rep.variant == GapVariant.FRICK_STABLE),
            "weak_violated": sum(1 for rep in self.reports
                                 if rep.verdict == Verdict.VIOLATED and rep.variant == GapVariant.WEAK_ALMOST_STABLE),
            "skipped": len(self.skips),
        }


@dataclass(frozen=True)
class EqualityReport:
    """Computed chromatic number against a closed-form value"""
    name: str
    n: int
    k: int
    r: int
    chi: ChiResult
    expected: int
    comparison: Comparison
    vertex_count: int = 0
    edge_count: int = 0


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    """Outcome of a proposition verification: named checks plus computed values"""
    name: str
    params: Dict[str, int]
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    defect: Optional[DefectResult] = None
    refutation: Optional[RefutationRecord] = None
    chi: Optional[ChiResult] = None

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class RemarkReport:
    """Stable and almost stable chromatic numbers plus the constructive one-color extension"""
    family: str
    r: int
    chi_stable: ChiResult
    chi_almost: ChiResult
    difference: int
    extended: ColoringCertificate
    extension_verified: bool
    extension_colors: int
    rhs: int
    stable_slack: int
    weak_holds: bool

    @property
    def passed(self) -> bool:
        if self.difference > 1 or not self.extension_verified:
            return False
        if self.extension_colors > self.chi_stable.chi + 1:
            return False
        if self.weak_holds and self.stable_slack > 1:
            return False
        return True
