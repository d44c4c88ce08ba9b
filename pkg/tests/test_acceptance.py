"""Acceptance gate: every criterion at its stated tolerance and budget.

Each test prints one line: ACCEPTANCE <n> <name>: PASS/FAIL (elapsed).
Randomized suites use fixed seeds; tolerances are pinned constants here,
never derived at run time.
"""

import math
import time
from decimal import Decimal, localcontext

import numpy as np
import pytest

from mahlerbound.bounds import ScanFamily, check_coefficient_bounds, tightness_scan
from mahlerbound.errors import TieDetectedError
from mahlerbound.lattice_order import (
    DirectionVector,
    check_distinct,
    dirichlet_step,
    min_orthogonal_norm,
    norm_inf,
    nu_exceeds,
    order_support,
)
from mahlerbound.mahler_uni import mahler, mahler_quadrature, mahler_roots
from mahlerbound.sparse_poly import SparseUniPoly, binomial_power
from mahlerbound.torus_poly import (
    TorusPoly,
    dual_ordering_report,
    mahler_limit,
    mahler_torus_grid,
)


def _report(num, name, ok, elapsed, budget, extra=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" {extra}" if extra else ""
    print(f"\nACCEPTANCE {num:2d} {name}: {status} ({elapsed:.2f}s / budget {budget:.0f}s){suffix}")
    assert ok, f"criterion {num} ({name}) failed{suffix}"
    assert elapsed < budget, f"criterion {num} exceeded its {budget:.0f}s budget: {elapsed:.2f}s"


def _sqrt_dir(*ks):
    with localcontext() as ctx:
        ctx.prec = 60
        decs = [Decimal(k).sqrt() for k in ks]
    return DirectionVector.from_decimals(decs, description=",".join(f"sqrt{k}" for k in ks))


def test_acceptance_01_equality_family():
    t0 = time.monotonic()
    worst = 0.0
    for n in (2, 5, 10, 20):
        report = check_coefficient_bounds(binomial_power(n))
        for rec in report.records:
            worst = max(worst, abs(rec.ratio - 1.0))
    ok = worst <= 1e-8
    _report(1, "equality family ratios", ok, time.monotonic() - t0, 1.0, f"max |ratio-1| = {worst:.2e}")


def test_acceptance_02_two_term_formula():
    t0 = time.monotonic()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        c0 = 10.0 ** rng.uniform(-3, 3) * np.exp(2j * np.pi * rng.random())
        c1 = 10.0 ** rng.uniform(-3, 3) * np.exp(2j * np.pi * rng.random())
        m1 = int(rng.integers(1, 10**6 + 1))
        p = SparseUniPoly(((0, complex(c0)), (m1, complex(c1))))
        value = mahler_quadrature(p).value
        expected = max(abs(c0), abs(c1))
        worst = max(worst, abs(value - expected) / expected)
    ok = worst <= 1e-6
    _report(2, "two-term max formula", ok, time.monotonic() - t0, 30.0, f"worst rel err = {worst:.2e}")


def test_acceptance_03_engine_cross_validation():
    t0 = time.monotonic()
    rng = np.random.default_rng(3033)
    worst = 0.0
    for _ in range(200):
        degree = int(rng.integers(4, 65))
        inside = rng.random(degree) < 0.5
        mods = np.where(inside, rng.uniform(0.3, 0.999, degree), rng.uniform(1.001, 2.0, degree))
        roots = mods * np.exp(2j * np.pi * rng.random(degree))
        coeffs = np.poly(roots)[::-1] * rng.uniform(0.5, 2.0)
        p = SparseUniPoly.from_dense(list(coeffs))
        mr = mahler_roots(p)
        mq = mahler_quadrature(p)
        worst = max(worst, abs(mq.value - mr.value) / mr.value)
    ok = worst <= 1e-8
    _report(3, "engine cross-validation", ok, time.monotonic() - t0, 60.0, f"worst rel diff = {worst:.2e}")


def test_acceptance_04_bound_property_suite():
    t0 = time.monotonic()
    summary = tightness_scan(ScanFamily(max_terms=13, max_exponent=10**4), 1000, seed=44)
    violations = sum(1 for row in summary.rows if not row.satisfied)
    ok = violations == 0
    _report(
        4, "coefficient bound property suite", ok, time.monotonic() - t0, 300.0,
        f"violations = {violations}/1000, worst ratio = {summary.worst_ratio:.6f}",
    )


def test_acceptance_05_derivative_inequality():
    t0 = time.monotonic()
    rng = np.random.default_rng(555)
    violations = 0
    worst = 0.0
    for _ in range(500):
        n_terms = int(rng.integers(2, 12))
        exps = np.sort(rng.choice(129, size=n_terms, replace=False))
        if exps[-1] == 0:
            exps[-1] = 1
        coeffs = 10.0 ** rng.uniform(-3, 3, n_terms) * np.exp(2j * np.pi * rng.random(n_terms))
        p = SparseUniPoly(tuple((int(m), complex(c)) for m, c in zip(exps, coeffs)))
        lhs = mahler(p.derivative()).value
        rhs = p.max_exponent * mahler(p).value
        ratio = lhs / rhs
        worst = max(worst, ratio)
        if lhs > rhs * (1 + 1e-8):
            violations += 1
    ok = violations == 0
    _report(
        5, "derivative measure inequality", ok, time.monotonic() - t0, 120.0,
        f"violations = {violations}/500, worst lhs/rhs = {worst:.6f}",
    )


def test_acceptance_06_nu_closed_form():
    t0 = time.monotonic()
    rng = np.random.default_rng(66)
    checked = 0
    ok = True
    while checked < 500:
        a = tuple(int(x) for x in rng.integers(-100, 101, 2))
        if a == (0, 0):
            continue
        g = math.gcd(abs(a[0]), abs(a[1]))
        expected = max(abs(a[0]), abs(a[1])) // g
        cert = min_orthogonal_norm(a, shell_cap=128)
        if cert.nu != expected:
            ok = False
            break
        checked += 1
    _report(6, "nu closed form (two dims)", ok, time.monotonic() - t0, 10.0, f"{checked} points")


def test_acceptance_07_distinctness_property():
    t0 = time.monotonic()
    rng = np.random.default_rng(77)
    checked = 0
    ok = True
    while checked < 500:
        dims = int(rng.integers(2, 5))
        n_points = int(rng.integers(2, 7))
        pts = {tuple(int(x) for x in rng.integers(-3, 4, dims)) for _ in range(n_points)}
        a = tuple(int(x) for x in rng.integers(-100, 101, dims))
        if all(x == 0 for x in a):
            continue
        support_norm = max(norm_inf(p) for p in pts)
        if not nu_exceeds(a, 2 * support_norm):
            continue
        report = check_distinct(pts, a)
        if not (report.hypothesis_holds and report.distinct):
            ok = False
            break
        checked += 1
    _report(7, "ordering distinctness guarantee", ok, time.monotonic() - t0, 30.0, f"{checked} pairs")


def test_acceptance_08_dirichlet_bound():
    t0 = time.monotonic()
    alphas = np.array([math.sqrt(2), math.sqrt(3)])
    q_max = 10**4
    qs = np.arange(1, q_max + 1, dtype=np.int64)
    prods = qs[:, None] * alphas[None, :]
    quality = np.abs(prods - np.rint(prods)).max(axis=1)
    violations = 0
    direction = DirectionVector((math.sqrt(2), math.sqrt(3)))
    spot_qs = set(np.unique(np.geomspace(1, q_max, 200).astype(int)))
    for big_q in range(1, q_max + 1):
        bound = (big_q + 1) ** -0.5
        hits = np.nonzero(quality[:big_q] <= bound)[0]
        assert len(hits), f"Dirichlet existence failed at Q={big_q}"
        q_first = int(hits[0]) + 1
        if quality[q_first - 1] > (q_first + 1) ** -0.5:
            violations += 1
        if big_q in spot_qs:
            step = dirichlet_step(direction, big_q)
            assert step.q == q_first
            assert step.quality == pytest.approx(float(quality[q_first - 1]), rel=1e-12)
            assert step.met_bound
    ok = violations == 0
    _report(8, "Dirichlet quality bound", ok, time.monotonic() - t0, 5.0, f"violations = {violations}/{q_max}")


def test_acceptance_09_specialization_limit():
    t0 = time.monotonic()
    F3 = TorusPoly(2, (((0, 0), 1.0), ((1, 0), 1.0), ((0, 1), 1.0)))
    with localcontext() as ctx:
        ctx.prec = 60
        s2 = Decimal(2).sqrt()
    alpha = DirectionVector.from_decimals(["1", s2], description="1,sqrt2")
    grid = mahler_torus_grid(F3, 2048, 1e-3)
    assert grid.detail["grid_final"] >= 2048
    trace = mahler_limit(F3, alpha, count=20, tol=1e-3)
    rel = abs(trace.estimate - grid.value) / grid.value
    ok = trace.converged and rel <= 5e-3
    _report(
        9, "specialization limit convergence", ok, time.monotonic() - t0, 300.0,
        f"grid = {grid.value:.7f}, limit = {trace.estimate:.7f}, rel diff = {rel:.2e}",
    )


def test_acceptance_10_ordered_bound_suite():
    t0 = time.monotonic()
    rng = np.random.default_rng(1010)
    satisfied = 0
    differing = 0
    total = 200

    def random_direction():
        while True:
            u = float(rng.uniform(1.0, 3.0))
            yield DirectionVector((1.0, u), description=f"1,{u}")

    direction_stream = random_direction()
    for _ in range(total):
        while True:
            n_points = int(rng.integers(2, 9))
            pts = {tuple(int(x) for x in rng.integers(-5, 6, 2)) for _ in range(n_points)}
            if len(pts) >= 2:
                break
        mags = 10.0 ** rng.uniform(-3, 3, len(pts))
        phases = rng.uniform(0, 1, len(pts))
        F = TorusPoly(
            2,
            tuple((p, complex(m * np.exp(2j * np.pi * ph))) for p, m, ph in zip(pts, mags, phases)),
        )
        while True:
            alpha = next(direction_stream)
            beta = next(direction_stream)
            try:
                dual = dual_ordering_report(F, alpha, beta, grid_start=64, grid_tol=3e-3)
                break
            except TieDetectedError:
                continue
        if dual.report_alpha.satisfied and dual.report_beta.satisfied:
            satisfied += 1
        if dual.differing_indices:
            differing += 1
    frac = differing / total
    ok = satisfied == total and frac >= 0.30
    _report(
        10, "ordered bound suite (two directions)", ok, time.monotonic() - t0, 600.0,
        f"satisfied = {satisfied}/{total}, differing permutations = {frac:.0%}",
    )
