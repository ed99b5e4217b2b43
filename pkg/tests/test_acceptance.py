"""End-to-end values the library must reproduce exactly."""
from math import comb

import numpy as np
import pytest

from models.limits import EngineLimits
from models.reports import Comparison, Verdict
from solver.conjectures import (afl_bound, afl_check, footnote_grid, frick_gap, lovasz_value, schrijver_check,
                                verify_proposition1, verify_proposition2, verify_remark_bound, weak_gap)
from solver.defect import defect_lower_bound_report
from solver.families import complete_k_subsets, family_F_nr, family_prop2, make_set_system
from solver.kneser import family_as_hypergraph

CPSAT = EngineLimits(backend="cpsat")

# chi(SG(n,k)) = chi(KG(n,k)) = n - 2k + 2
SCHRIJVER_VALUES = {(5, 2): 3, (6, 2): 4, (7, 2): 5, (6, 3): 2, (7, 3): 3, (8, 3): 4}


@pytest.mark.parametrize("r, k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_proposition1_grid(r, k):
    report = verify_proposition1(r, k)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.values["cd"] == 1
    assert report.values["chi"] == 0


@pytest.mark.parametrize("r", [2, 3])
def test_proposition2(r):
    report = verify_proposition2(r)
    assert report.passed, [c for c in report.checks if not c.passed]
    n = r * (2 * r - 1)
    assert report.values["n"] == n
    assert report.values["chi"] == 1
    assert report.values["refuted_sets"] == sum(comb(n, i) for i in range(r))
    assert report.values["cd"] == r


def test_proposition2_r3_count():
    assert verify_proposition2(3, exact=False).values["refuted_sets"] == 121


@pytest.mark.slow
def test_proposition2_r4_refutation():
    record = defect_lower_bound_report(family_as_hypergraph(family_prop2(4)), 4, 3)
    assert record.refuted
    assert record.total_refuted == 1 + 28 + 378 + 3276


def test_counterexample_verdicts():
    assert frick_gap(family_F_nr(7, 3), 3).verdict == Verdict.VIOLATED
    assert frick_gap(family_prop2(3), 3).verdict == Verdict.VIOLATED
    assert frick_gap(complete_k_subsets(6, 2), 3).verdict == Verdict.SATISFIED
    assert weak_gap(family_F_nr(7, 3), 3).verdict == Verdict.SATISFIED


@pytest.mark.parametrize("r, n_max", [(2, 7), (3, 10), (4, 9)])
def test_footnote_grid_agrees(r, n_max):
    reports = footnote_grid(r, n_max, include_multiples=True)
    for rep in reports:
        assert rep.verdict == rep.expected, (rep.ground_size, rep.r)
        assert rep.lhs.chi == 0
        assert (rep.defect.cd == 0) == (rep.ground_size % r == 0)


@pytest.mark.parametrize("n, k", [(5, 2), (6, 2), (7, 2), (6, 3), (7, 3)])
def test_lovasz_values(n, k):
    report = afl_check(n, k, 2, CPSAT)
    assert report.expected == lovasz_value(n, k) == SCHRIJVER_VALUES[(n, k)]
    assert report.comparison == Comparison.EQUAL


@pytest.mark.slow
def test_lovasz_value_8_3():
    report = afl_check(8, 3, 2, CPSAT)
    assert report.chi.chi == 4
    assert report.comparison == Comparison.EQUAL


@pytest.mark.parametrize("n, k", sorted(SCHRIJVER_VALUES))
def test_schrijver_values(n, k):
    report = schrijver_check(n, k)
    assert report.chi.chi == SCHRIJVER_VALUES[(n, k)]
    assert report.comparison == Comparison.EQUAL


@pytest.mark.parametrize("n", [6, 7])
def test_afl_r3_small(n):
    report = afl_check(n, 2, 3)
    assert report.chi.chi == afl_bound(n, 2, 3) == 2
    assert report.comparison == Comparison.EQUAL


@pytest.mark.slow
@pytest.mark.parametrize("n, expected", [(8, 3), (9, 3)])
def test_afl_r3_larger(n, expected):
    report = afl_check(n, 2, 3, CPSAT)
    assert report.expected == expected
    assert report.chi.chi == expected


@pytest.mark.parametrize("family, r", [
    (family_prop2(2), 2),
    (family_prop2(3), 3),
    (complete_k_subsets(6, 2), 2),
])
def test_remark_bound_named_families(family, r):
    report = verify_remark_bound(family, r)
    assert report.passed
    assert report.extension_verified


def _random_family(rng):
    n = int(rng.integers(3, 11))
    count = int(rng.integers(1, 13))
    members = []
    for _ in range(count):
        size = int(rng.integers(1, min(3, n) + 1))
        members.append([int(x) + 1 for x in rng.choice(n, size=size, replace=False)])
    return make_set_system(n, members)


def test_remark_bound_random_families():
    rng = np.random.default_rng(31337)
    for _ in range(50):
        family = _random_family(rng)
        r = int(rng.integers(2, 4))
        report = verify_remark_bound(family, r)
        assert report.passed, (family, r)
        assert 0 <= report.difference <= 1
