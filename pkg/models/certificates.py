from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class ColoringCertificate:
    """A vertex -> color map (colors 1..num_colors) witnessing m-colorability"""
    colors: Tuple[int, ...]
    num_colors: int


@dataclass(frozen=True)
class ChiResult:
    """
    Exact chromatic number.

    Attributes:
        chi: The chromatic number (0 for the empty hypergraph)
        certificate: A chi-coloring, absent only when chi == 0
        refuted_below: chi - 1 when a (chi-1)-coloring was refuted by complete search,
            None when the lower value needs no search (chi <= 1, or chi == 2 with an edge)
        method: Backend that produced the value
    """
    chi: int
    certificate: Optional[ColoringCertificate]
    refuted_below: Optional[int] = None
    method: str = "backtrack"


@dataclass(frozen=True)
class DefectCertificate:
    """
    Removal set plus a proper r-coloring of what remains.

    `removed` holds vertex indices of the hypergraph; `coloring` is indexed by the
    remaining vertices in ascending order, the order induced_on_remaining uses.
    """
    removed: Tuple[int, ...]
    coloring: ColoringCertificate
    r: int


@dataclass(frozen=True)
class DefectResult:
    """
    Exact r-colorability defect.

    Attributes:
        cd: Minimum size of a removal set leaving an r-colorable hypergraph
        certificate: Lexicographically smallest optimal removal set with its coloring
        refuted_sizes: Every removal size below cd, each fully refuted
        candidates_tested: Removal sets that needed a colorability search
        candidates_pruned: Removal sets discarded because they miss a known obstruction
        removed_labels: The removal set named by ground labels when known
        label_kind: "ground" when removed_labels are 1-based ground labels, "index" otherwise
    """
    cd: int
    certificate: DefectCertificate
    refuted_sizes: Tuple[int, ...]
    candidates_tested: int = 0
    candidates_pruned: int = 0
    removed_labels: Tuple[int, ...] = ()
    label_kind: str = "index"


@dataclass(frozen=True)
class RefutationRecord:
    """
    Proof object for cd_r(H) > b, or a counterwitness against it.

    Attributes:
        r: Number of colors
        b: Largest removal size examined
        refuted: True when every removal set of size <= b leaves a non-r-colorable remainder
        refuted_per_size: Removal size -> number of refuted removal sets of that size
        by_obstruction: Refutations explained by a clique obstruction alone
        by_search: Refutations decided by a colorability search, memo hits included
        counterwitness: Removal set (vertex indices) that leaves an r-colorable remainder
        obstructions: The clique obstructions used, as vertex-index tuples
        memo_hits: Refutations answered from an earlier search on the same surviving edges
    """
    r: int
    b: int
    refuted: bool
    refuted_per_size: Dict[int, int] = field(default_factory=dict)
    by_obstruction: int = 0
    by_search: int = 0
    counterwitness: Optional[Tuple[int, ...]] = None
    obstructions: Tuple[Tuple[int, ...], ...] = ()
    memo_hits: int = 0

    @property
    def total_refuted(self) -> int:
        return sum(self.refuted_per_size.values())
