"""
Closed-form values, conjecture gaps, proposition checks and random counterexample
scans, all computed exactly on finite instances.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.certificates import ColoringCertificate, DefectCertificate
from models.limits import DEFAULT_LIMITS, EngineLimits
from models.reports import (CheckReport, Comparison, EqualityReport, GapReport, GapVariant, RemarkReport,
                            ScanParams, ScanResult, ScanSkip, Verdict)
from models.set_system import SetSystem, StabilityKind, canonical_key
from solver.coloring import chromatic_number, extend_stable_coloring, verify_coloring
from solver.defect import colorability_defect, defect_lower_bound_report, verify_defect_certificate
from solver.families import (complete_k_subsets, family_F_nr, family_prop2, filter_part, prop2_added_pairs,
                             prop2_forced_removal, prop2_ground_size, prop2_obstructions, random_family)
from solver.kneser import build_kneser, family_as_hypergraph, has_r_pairwise_disjoint
from utils.deadline import Deadline
from utils.errors import CapExceededError, ClosedFormDomainError

logger = logging.getLogger(__name__)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def lovasz_value(n: int, k: int) -> int:
    """chi(KG^2(C(n,k))) = n - 2(k-1) for n >= 2k"""
    if k < 1 or n < 2 * k:
        raise ClosedFormDomainError(f"lovasz_value needs k >= 1 and n >= 2k, got n={n}, k={k}")
    return n - 2 * (k - 1)


def afl_bound(n: int, k: int, r: int) -> int:
    """chi(KG^r(C(n,k))) = ceil((n - r(k-1)) / (r-1)) for n >= rk, r >= 2"""
    if r < 2 or k < 1 or n < r * k:
        raise ClosedFormDomainError(f"afl_bound needs r >= 2, k >= 1 and n >= rk, got n={n}, k={k}, r={r}")
    return ceil_div(n - r * (k - 1), r - 1)


def _gap(family: SetSystem, r: int, variant: GapVariant, limits: Optional[EngineLimits],
         family_name: Optional[str]) -> GapReport:
    limits = limits or DEFAULT_LIMITS
    deadline = Deadline.from_limits(limits)
    kind = StabilityKind.STABLE if variant == GapVariant.FRICK_STABLE else StabilityKind.ALMOST_STABLE
    part = filter_part(family, r, kind)
    lhs = chromatic_number(build_kneser(part, r, limits), limits, deadline)
    defect = colorability_defect(family_as_hypergraph(family), r, limits, deadline)
    rhs = ceil_div(defect.cd, r - 1)
    verdict = Verdict.VIOLATED if lhs.chi < rhs else Verdict.SATISFIED
    note = ""
    if variant == GapVariant.FRICK_STABLE and r == 2:
        note = "stated for r >= 3; r = 2 is exploratory"
        logger.warning(f"Stable-part gap evaluated with r = 2 on {family_name or family.describe()}: exploratory")
    return GapReport(
        family=family_name or family.describe(),
        ground_size=family.ground_size,
        member_count=len(family),
        part_size=len(part),
        r=r,
        variant=variant,
        lhs=lhs,
        rhs=rhs,
        defect=defect,
        verdict=verdict,
        note=note,
    )


def frick_gap(family: SetSystem, r: int, limits: Optional[EngineLimits] = None,
              family_name: Optional[str] = None) -> GapReport:
    """chi(KG^r(F_r-stab)) against ceil(cd_r(F) / (r-1))"""
    return _gap(family, r, GapVariant.FRICK_STABLE, limits, family_name)


def weak_gap(family: SetSystem, r: int, limits: Optional[EngineLimits] = None,
             family_name: Optional[str] = None) -> GapReport:
    """chi(KG^r(F_almost-r-stab)) against ceil(cd_r(F) / (r-1))"""
    return _gap(family, r, GapVariant.WEAK_ALMOST_STABLE, limits, family_name)


def _equality(name: str, family: SetSystem, n: int, k: int, r: int, expected: int,
              limits: Optional[EngineLimits]) -> EqualityReport:
    graph = build_kneser(family, r, limits)
    chi = chromatic_number(graph, limits)
    comparison = Comparison.of(chi.chi, expected)
    logger.info(f"{name}({n},{k},{r}): chi = {chi.chi}, closed form {expected}: {comparison.value}")
    return EqualityReport(name, n, k, r, chi, expected, comparison, graph.vertex_count, len(graph.edges))


def ziegler_check(n: int, k: int, r: int, limits: Optional[EngineLimits] = None) -> EqualityReport:
    """chi(KG^r(C(n,k)_r-stab)) against afl_bound(n,k,r)"""
    expected = afl_bound(n, k, r)
    part = filter_part(complete_k_subsets(n, k, limits), r, StabilityKind.STABLE)
    return _equality("ziegler", part, n, k, r, expected, limits)


def schrijver_check(n: int, k: int, limits: Optional[EngineLimits] = None) -> EqualityReport:
    """chi(KG^2(C(n,k)_2-stab)) against n - 2(k-1)"""
    expected = lovasz_value(n, k)
    part = filter_part(complete_k_subsets(n, k, limits), 2, StabilityKind.STABLE)
    return _equality("schrijver", part, n, k, 2, expected, limits)


def afl_check(n: int, k: int, r: int, limits: Optional[EngineLimits] = None) -> EqualityReport:
    """chi(KG^r(C(n,k))) against afl_bound(n,k,r); for r = 2 the Lovász value"""
    expected = afl_bound(n, k, r)
    return _equality("afl", complete_k_subsets(n, k, limits), n, k, r, expected, limits)


def proposition1_coloring(r: int, k: int) -> DefectCertificate:
    """
    Remove vertex n = kr+1 and give label x the color ((x-1) mod r) + 1, so color i
    sits on i, i+r, ..., i+(k-1)r. Vertex indices are 0-based.
    """
    n = k * r + 1
    colors = tuple((x - 1) % r + 1 for x in range(1, n))
    return DefectCertificate((n - 1,), ColoringCertificate(colors, r), r)


def verify_proposition1(r: int, k: int, limits: Optional[EngineLimits] = None) -> CheckReport:
    """cd_r(F(kr+1, r)) = 1 while the r-stable part is empty and its Kneser chi is 0"""
    if r < 2 or k < 1:
        raise ClosedFormDomainError(f"proposition 1 needs r >= 2 and k >= 1, got r={r}, k={k}")
    n = k * r + 1
    report = CheckReport("prop1", {"r": r, "k": k, "n": n})
    family = family_F_nr(n, r)
    hypergraph = family_as_hypergraph(family)

    stable = filter_part(family, r, StabilityKind.STABLE)
    report.add("stable part empty", len(stable) == 0, f"{len(stable)} stable members")
    chi = chromatic_number(build_kneser(stable, r, limits), limits)
    report.chi = chi
    report.add("chi of stable Kneser part is 0", chi.chi == 0, f"chi = {chi.chi}")

    defect = colorability_defect(hypergraph, r, limits)
    report.defect = defect
    report.add(f"cd_{r} = 1", defect.cd == 1, f"cd = {defect.cd}, removed {list(defect.removed_labels)}")
    report.add("defect certificate verifies", verify_defect_certificate(hypergraph, defect.certificate))

    explicit = proposition1_coloring(r, k)
    report.add("explicit coloring after removing n verifies", verify_defect_certificate(hypergraph, explicit),
               f"colors {list(explicit.coloring.colors)}")
    report.values.update({"n": n, "members": len(family), "cd": defect.cd, "chi": chi.chi})
    return report


def verify_proposition2(r: int, limits: Optional[EngineLimits] = None, exact: bool = True) -> CheckReport:
    """
    For the augmented family on n = r(2r-1): the stable part is the added chain,
    chi(KG^r(stable)) = 1, and every removal set of size <= r-1 fails, so cd_r >= r.
    The exact cd is computed too unless exact is False; a cap hit there is recorded,
    not raised.
    """
    if r < 2:
        raise ClosedFormDomainError(f"proposition 2 needs r >= 2, got r={r}")
    n = prop2_ground_size(r)
    report = CheckReport("prop2", {"r": r, "n": n})
    family = family_prop2(r)
    hypergraph = family_as_hypergraph(family)

    stable = filter_part(family, r, StabilityKind.STABLE)
    expected_stable = tuple(sorted(prop2_added_pairs(r), key=canonical_key))
    report.add("stable part equals the added chain", stable.members == expected_stable,
               f"{[list(m) for m in stable.members]}")
    report.add("stable part covers 2r-1 labels", len(stable.union()) == 2 * r - 1, f"{len(stable.union())} labels")
    report.add(f"no {r} pairwise disjoint stable members", not has_r_pairwise_disjoint(stable, r))
    chi = chromatic_number(build_kneser(stable, r, limits), limits)
    report.chi = chi
    report.add("chi of stable Kneser part is 1", chi.chi == 1, f"chi = {chi.chi}")

    chain, closing = prop2_obstructions(r)
    member_set = set(family.members)
    cliques_ok = all(
        len(block) == r + 1 and all((a, b) in member_set for i, a in enumerate(block) for b in block[i + 1:])
        for block in chain + [closing]
    )
    report.add("every A_i and C is an (r+1)-clique of F", cliques_ok)
    forced = set(prop2_forced_removal(r))
    report.add("forced removal hits every A_i and misses C",
               all(forced & set(block) for block in chain) and not forced & set(closing),
               f"B = {sorted(forced)}")

    refutation = defect_lower_bound_report(hypergraph, r, r - 1, limits)
    report.refutation = refutation
    expected_sets = sum(comb(n, i) for i in range(r))
    report.add(f"all removal sets of size <= {r - 1} refuted", refutation.refuted,
               f"{refutation.total_refuted} of {expected_sets} refuted")
    report.add("refutation count matches binomial total", refutation.total_refuted == expected_sets)
    report.values.update({"n": n, "members": len(family), "chi": chi.chi,
                          "refuted_sets": refutation.total_refuted, "cd_lower_bound": r})

    if exact:
        try:
            defect = colorability_defect(hypergraph, r, limits)
        except CapExceededError as exc:
            logger.warning(f"Exact cd_{r} of the r = {r} family skipped: {exc}")
            report.values["cd"] = None
            report.values["cd_skipped"] = str(exc)
        else:
            report.defect = defect
            report.values["cd"] = defect.cd
            report.add(f"exact cd_{r} >= {r}", defect.cd >= r, f"cd = {defect.cd}")
            report.add("defect certificate verifies", verify_defect_certificate(hypergraph, defect.certificate))
    return report


def footnote_grid(r: int, n_max: int, limits: Optional[EngineLimits] = None,
                  include_multiples: bool = False) -> List[GapReport]:
    """
    frick_gap(F(n,r), r) for r <= n <= n_max with n not a multiple of r, each marked
    with the expected Violated verdict. With include_multiples the multiples of r are
    added as Satisfied controls (F(kr, r) is r-colorable).
    """
    if r < 2:
        raise ClosedFormDomainError(f"footnote grid needs r >= 2, got r={r}")
    reports = []
    for n in range(max(r, 2), n_max + 1):
        multiple = n % r == 0
        if multiple and not include_multiples:
            continue
        report = frick_gap(family_F_nr(n, r), r, limits, family_name=f"F({n},{r})")
        expected = Verdict.SATISFIED if multiple else Verdict.VIOLATED
        reports.append(replace(report, expected=expected))
    return reports


def verify_remark_bound(family: SetSystem, r: int, limits: Optional[EngineLimits] = None,
                        family_name: Optional[str] = None) -> RemarkReport:
    """
    chi(KG^r(almost stable part)) - chi(KG^r(stable part)) <= 1, checked on exact
    values and witnessed by extend_stable_coloring.
    """
    stable = filter_part(family, r, StabilityKind.STABLE)
    almost = filter_part(family, r, StabilityKind.ALMOST_STABLE)
    chi_stable = chromatic_number(build_kneser(stable, r, limits), limits)
    almost_graph = build_kneser(almost, r, limits)
    chi_almost = chromatic_number(almost_graph, limits)

    base = chi_stable.certificate or ColoringCertificate((), 0)
    extended = extend_stable_coloring(family, r, base, limits)
    extension_verified = verify_coloring(almost_graph, extended)

    defect = colorability_defect(family_as_hypergraph(family), r, limits)
    rhs = ceil_div(defect.cd, r - 1)
    report = RemarkReport(
        family=family_name or family.describe(),
        r=r,
        chi_stable=chi_stable,
        chi_almost=chi_almost,
        difference=chi_almost.chi - chi_stable.chi,
        extended=extended,
        extension_verified=extension_verified,
        extension_colors=extended.num_colors,
        rhs=rhs,
        stable_slack=rhs - chi_stable.chi,
        weak_holds=chi_almost.chi >= rhs,
    )
    if not report.passed:
        logger.error(f"Remark bound failed on {report.family} with r={r}: difference {report.difference}")
    return report


def _evaluate_sample(task: Tuple[int, str, SetSystem, int, EngineLimits]):
    index, name, family, r, limits = task
    reports, skips = [], []
    for gap in (frick_gap, weak_gap):
        try:
            reports.append(gap(family, r, limits, family_name=name))
        except CapExceededError as exc:
            skips.append(ScanSkip(index, name, r, f"{gap.__name__}: {exc}"))
    return index, reports, skips


def draw_scan_tasks(params: ScanParams, limits: Optional[EngineLimits] = None):
    """The seeded sample list; drawing happens in one process so it never depends on threads"""
    limits = limits or DEFAULT_LIMITS
    rng = np.random.default_rng(params.seed)
    tasks = []
    for index in range(params.samples):
        n = int(rng.integers(params.ground_size_range[0], params.ground_size_range[1] + 1))
        count = int(rng.integers(params.member_count_range[0], params.member_count_range[1] + 1))
        r = int(rng.integers(params.r_range[0], params.r_range[1] + 1))
        family = random_family(rng, n, count, params.member_size_range)
        tasks.append((index, f"random#{index}(n={n},m={len(family)})", family, r, limits))
    return tasks


def scan_random_families(params: ScanParams, limits: Optional[EngineLimits] = None,
                         planted: Sequence[Tuple[str, SetSystem, int]] = ()) -> ScanResult:
    """
    Evaluate both gaps on a seeded sample of random families.

    Planted families (name, family, r) are appended after the random samples. Reports
    list violations first and then follow sample index, whatever order workers
    finish in. Cap hits become skips.
    """
    limits = limits or DEFAULT_LIMITS
    worker_limits = limits.with_overrides(threads=1) if limits.backend == "backtrack" else limits
    tasks = [(i, name, fam, r, worker_limits) for i, name, fam, r, _ in draw_scan_tasks(params, limits)]
    offset = len(tasks)
    tasks.extend((offset + j, name, fam, r, worker_limits) for j, (name, fam, r) in enumerate(planted))
    logger.info(f"Scanning {len(tasks)} families (seed {params.seed}, {limits.threads} thread(s))")

    if limits.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=limits.threads) as pool:
            outcomes = list(pool.map(_evaluate_sample, tasks))
    else:
        outcomes = [_evaluate_sample(task) for task in tasks]

    result = ScanResult(params)
    rows = []
    for index, reports, skips in outcomes:
        rows.extend((index, rep) for rep in reports)
        result.skips.extend(skips)
        for skip in skips:
            logger.warning(f"Sample {skip.sample_index} skipped: {skip.reason}")
    variant_order = {GapVariant.FRICK_STABLE: 0, GapVariant.WEAK_ALMOST_STABLE: 1}
    rows.sort(key=lambda row: (row[1].verdict != Verdict.VIOLATED, row[0], variant_order[row[1].variant]))
    result.sample_indices = [index for index, _ in rows]
    result.reports = [rep for _, rep in rows]
    return result
