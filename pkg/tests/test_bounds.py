import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlerbound.bounds import (
    ScanFamily,
    binomial,
    check_coefficient_bounds,
    tightness_scan,
)
from mahlerbound.mahler_uni import mahler_quadrature, mahler_roots
from mahlerbound.sparse_poly import SparseUniPoly, binomial_power


def poly(*pairs):
    return SparseUniPoly(tuple((m, complex(c)) for m, c in pairs))


# --- binomial ------------------------------------------------------------------


def test_binomial_basic():
    assert binomial(5, 2) == 10


def test_binomial_negative_lower_index_is_zero():
    assert binomial(4, -1) == 0


def test_binomial_over_range_is_zero():
    assert binomial(3, 4) == 0


def test_binomial_overflow_contract():
    assert binomial(62, 31) == math.comb(62, 31)
    with pytest.raises(OverflowError):
        binomial(63, 2)


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=62), st.integers(min_value=-3, max_value=65))
def test_binomial_symmetry(n_top, n_bot):
    assert binomial(n_top, n_bot) == binomial(n_top, n_top - n_bot)


# --- check_coefficient_bounds ----------------------------------------------------


def test_equality_family_ratios_are_one():
    report = check_coefficient_bounds(binomial_power(4))
    assert report.satisfied
    for rec in report.records:
        assert rec.ratio == pytest.approx(1.0, abs=1e-9)


def test_two_term_ratios_below_one():
    report = check_coefficient_bounds(poly((0, 3.0), (9, complex(0, -4.0))))
    assert report.satisfied
    assert report.measure.value == pytest.approx(4.0, rel=1e-9)
    ratios = [rec.ratio for rec in report.records]
    assert ratios[0] == pytest.approx(0.75, rel=1e-8)
    assert ratios[1] == pytest.approx(1.0, rel=1e-8)


def test_sparse_trinomial_middle_bound_uses_term_count():
    p = poly((0, 1.0), (7, 5.0), (9, 1.0))
    report = check_coefficient_bounds(p)
    # N = 2 from three terms, so the middle bound is 2 * M, never binom(9, 7) * M
    assert report.records[1].binom == 2
    assert report.satisfied
    # both engines as oracle for the measure used in the bound
    rr = mahler_roots(p)
    rq = mahler_quadrature(p)
    assert rr.value == pytest.approx(rq.value, rel=1e-7)
    assert report.records[1].bound == pytest.approx(2 * rr.value, rel=1e-7)


def test_term_count_cap():
    p = SparseUniPoly(tuple((m, 1.0 + 0j) for m in range(64)))
    with pytest.raises(OverflowError):
        check_coefficient_bounds(p)


def test_bound_sequence_symmetry():
    report = check_coefficient_bounds(binomial_power(6))
    bounds_seq = [rec.binom for rec in report.records]
    assert bounds_seq == bounds_seq[::-1]


def test_report_json_roundtrip():
    import json

    report = check_coefficient_bounds(binomial_power(3))
    obj = json.loads(report.to_json())
    assert obj["satisfied"] is True
    assert len(obj["records"]) == 4
    assert obj["measure"]["method"] == "RootProduct"


# --- tightness_scan ---------------------------------------------------------------


def test_scan_empty():
    summary = tightness_scan(ScanFamily(), 0, seed=1)
    assert summary.rows == ()
    assert summary.to_csv().splitlines() == [summary.CSV_HEADER]


def test_scan_fixed_equality_family():
    summary = tightness_scan(ScanFamily(fixed_poly=binomial_power(6)), 1, seed=9)
    assert summary.rows[0].max_ratio == pytest.approx(1.0, abs=1e-9)
    assert summary.all_satisfied


def test_scan_all_satisfied_and_deterministic():
    family = ScanFamily(max_terms=9, max_exponent=64)
    s1 = tightness_scan(family, 40, seed=7)
    s2 = tightness_scan(family, 40, seed=7)
    assert s1.all_satisfied
    assert s1.to_csv() == s2.to_csv()


def test_scan_worker_count_does_not_change_results():
    family = ScanFamily(max_terms=7, max_exponent=48)
    serial = tightness_scan(family, 16, seed=3, workers=1)
    threaded = tightness_scan(family, 16, seed=3, workers=4)
    assert serial.to_csv() == threaded.to_csv()


def test_scan_rejects_negative_samples():
    with pytest.raises(ValueError):
        tightness_scan(ScanFamily(), -1, seed=0)
