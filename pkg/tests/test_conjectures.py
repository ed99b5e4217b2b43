import logging

import pytest

from models.limits import EngineLimits
from models.reports import Comparison, GapVariant, ScanParams, Verdict
from solver.conjectures import (afl_bound, afl_check, ceil_div, footnote_grid, frick_gap, lovasz_value,
                                proposition1_coloring, schrijver_check, scan_random_families, verify_proposition1,
                                verify_proposition2, verify_remark_bound, weak_gap, ziegler_check)
from solver.defect import verify_defect_certificate
from solver.families import complete_k_subsets, family_F_nr, family_prop2, make_set_system
from solver.kneser import family_as_hypergraph
from utils.errors import ClosedFormDomainError

SMALL_SCAN = ScanParams(ground_size_range=(4, 7), member_count_range=(1, 8), member_size_range=(1, 3),
                        r_range=(2, 3), samples=12, seed=11)


def test_ceil_div():
    assert ceil_div(1, 2) == 1
    assert ceil_div(4, 2) == 2
    assert ceil_div(0, 3) == 0


def test_lovasz_value():
    assert lovasz_value(5, 2) == 3
    assert lovasz_value(6, 3) == 2
    assert lovasz_value(8, 3) == 4
    with pytest.raises(ClosedFormDomainError):
        lovasz_value(5, 3)


def test_afl_bound():
    assert afl_bound(9, 2, 3) == 3
    assert afl_bound(6, 2, 3) == 2
    assert afl_bound(8, 2, 4) == 2
    assert afl_bound(6, 2, 2) == lovasz_value(6, 2) == 4
    with pytest.raises(ClosedFormDomainError):
        afl_bound(5, 2, 3)
    with pytest.raises(ClosedFormDomainError):
        afl_bound(9, 2, 1)


def test_frick_gap_F_7_3():
    report = frick_gap(family_F_nr(7, 3), 3)
    assert report.lhs.chi == 0
    assert report.defect.cd == 1
    assert report.rhs == 1
    assert report.verdict == Verdict.VIOLATED
    assert report.variant == GapVariant.FRICK_STABLE
    assert report.part_size == 0
    assert report.consistent


def test_frick_gap_prop2_r3():
    report = frick_gap(family_prop2(3), 3, family_name="prop2(3)")
    assert report.lhs.chi == 1
    assert report.defect.cd >= 3
    assert report.rhs >= 2
    assert report.verdict == Verdict.VIOLATED
    assert report.family == "prop2(3)"


def test_frick_gap_complete_family_is_satisfied():
    report = frick_gap(complete_k_subsets(6, 2), 3)
    assert report.lhs.chi == 2
    assert report.defect.cd == 3
    assert report.rhs == 2
    assert report.verdict == Verdict.SATISFIED


def test_frick_gap_r2_is_flagged(caplog):
    with caplog.at_level(logging.WARNING):
        report = frick_gap(family_F_nr(5, 2), 2)
    assert "exploratory" in report.note
    assert "exploratory" in caplog.text
    assert report.verdict == Verdict.VIOLATED


def test_weak_gap_F_7_3():
    report = weak_gap(family_F_nr(7, 3), 3)
    assert report.part_size == 3
    assert report.lhs.chi == 1
    assert report.rhs == 1
    assert report.verdict == Verdict.SATISFIED
    assert report.note == ""


def test_weak_gap_dominates_frick_gap():
    family = family_prop2(2)
    assert weak_gap(family, 2).lhs.chi >= frick_gap(family, 2).lhs.chi


def test_weak_gap_empty_almost_stable_part():
    report = weak_gap(make_set_system(5, [(1, 2), (2, 3)]), 2)
    assert report.part_size == 0
    assert report.lhs.chi == 0


def test_ziegler_check():
    report = ziegler_check(6, 2, 2)
    assert report.chi.chi == 4
    assert report.comparison == Comparison.EQUAL
    small = ziegler_check(7, 2, 3)
    assert small.expected == 2
    assert small.chi.chi == 2
    assert small.vertex_count == 7
    assert ziegler_check(6, 2, 3).comparison == Comparison.EQUAL


def test_schrijver_and_afl_checks():
    assert schrijver_check(5, 2).comparison == Comparison.EQUAL
    assert schrijver_check(7, 3).chi.chi == 3
    report = afl_check(6, 2, 3)
    assert report.expected == 2
    assert report.comparison == Comparison.EQUAL
    assert report.edge_count == 15


def test_proposition1_coloring_shape():
    cert = proposition1_coloring(3, 2)
    assert cert.removed == (6,)
    assert cert.coloring.colors == (1, 2, 3, 1, 2, 3)
    assert verify_defect_certificate(family_as_hypergraph(family_F_nr(7, 3)), cert)


@pytest.mark.parametrize("r, k", [(2, 2), (3, 2), (2, 1), (4, 1)])
def test_verify_proposition1(r, k):
    report = verify_proposition1(r, k)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.values["cd"] == 1
    assert report.values["chi"] == 0
    assert report.values["n"] == k * r + 1


def test_verify_proposition1_domain():
    with pytest.raises(ClosedFormDomainError):
        verify_proposition1(1, 2)


def test_verify_proposition2_r2():
    report = verify_proposition2(2)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.values["cd"] == 2
    assert report.values["chi"] == 1
    assert report.values["refuted_sets"] == 7
    assert report.defect.removed_labels == (1, 3)


def test_verify_proposition2_without_exact_search():
    report = verify_proposition2(3, exact=False)
    assert report.passed
    assert report.defect is None
    assert report.values["refuted_sets"] == 121


def test_verify_proposition2_records_cap_skip():
    report = verify_proposition2(2, EngineLimits(max_defect_size=1))
    assert report.passed
    assert report.values["cd"] is None
    assert "max_defect_size" in report.values["cd_skipped"]


def test_footnote_grid_scope():
    reports = footnote_grid(3, 8)
    assert [rep.ground_size for rep in reports] == [4, 5, 7, 8]
    assert all(rep.verdict == Verdict.VIOLATED == rep.expected for rep in reports)
    assert [rep.ground_size for rep in footnote_grid(2, 5)] == [3, 5]


def test_footnote_grid_with_multiples():
    reports = footnote_grid(3, 9, include_multiples=True)
    assert [rep.ground_size for rep in reports] == [3, 4, 5, 6, 7, 8, 9]
    for rep in reports:
        assert rep.verdict == rep.expected
        if rep.ground_size % 3 == 0:
            assert rep.defect.cd == 0


def test_remark_bound_examples():
    for family, r in ((family_prop2(2), 2), (complete_k_subsets(6, 2), 2), (family_F_nr(7, 3), 3)):
        report = verify_remark_bound(family, r)
        assert report.passed
        assert report.difference in (0, 1)
        assert report.extension_verified
        assert report.extension_colors <= report.chi_stable.chi + 1


def test_remark_bound_equal_parts():
    family = make_set_system(7, [(1, 4), (2, 6), (3, 7)])
    report = verify_remark_bound(family, 3)
    assert report.difference == 0
    assert report.extension_colors == report.chi_stable.chi


def test_scan_is_reproducible():
    first = scan_random_families(SMALL_SCAN)
    second = scan_random_families(SMALL_SCAN)
    key = [(i, rep.family, rep.variant, rep.lhs.chi, rep.defect.cd, rep.verdict)
           for i, rep in zip(first.sample_indices, first.reports)]
    assert key == [(i, rep.family, rep.variant, rep.lhs.chi, rep.defect.cd, rep.verdict)
                   for i, rep in zip(second.sample_indices, second.reports)]
    assert len(first.reports) + len(first.skips) == 2 * SMALL_SCAN.samples


def test_scan_orders_violations_first():
    result = scan_random_families(SMALL_SCAN, planted=[("F(7,3)", family_F_nr(7, 3), 3)])
    verdicts = [rep.verdict for rep in result.reports]
    violated = verdicts.count(Verdict.VIOLATED)
    assert violated >= 1
    assert all(v == Verdict.VIOLATED for v in verdicts[:violated])
    planted = [rep for i, rep in zip(result.sample_indices, result.reports) if i == SMALL_SCAN.samples]
    frick = [rep for rep in planted if rep.variant == GapVariant.FRICK_STABLE]
    assert frick[0].family == "F(7,3)"
    assert frick[0].verdict == Verdict.VIOLATED
    summary = result.summary()
    assert summary["frick_violated"] >= 1
    assert summary["violated"] == summary["frick_violated"] + summary["weak_violated"]


def test_scan_values_do_not_depend_on_threads():
    single = scan_random_families(SMALL_SCAN)
    pooled = scan_random_families(SMALL_SCAN, EngineLimits(threads=2))
    assert [(i, rep.lhs.chi, rep.defect.cd, rep.verdict) for i, rep in zip(single.sample_indices, single.reports)] \
        == [(i, rep.lhs.chi, rep.defect.cd, rep.verdict) for i, rep in zip(pooled.sample_indices, pooled.reports)]


def test_scan_params_validation():
    with pytest.raises(ValueError):
        ScanParams(r_range=(1, 2))
    with pytest.raises(ValueError):
        ScanParams(ground_size_range=(5, 4))
