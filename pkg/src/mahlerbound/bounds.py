"""Binomial-coefficient lower bounds on Mahler measures.

For a polynomial written as N+1 monomials with strictly increasing
exponents, every coefficient satisfies |c_n| <= binom(N, n) * M(p); the
binomial argument counts monomials, never the degree. This module checks
that inequality against a numerically computed measure and explores how
tight it is on random families.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .mahler_uni import MeasureResult, mahler
from .sparse_poly import SparseUniPoly, binomial_power

BINOMIAL_N_CAP = 62

# Desk-scale engine settings for randomized scans: the acceptance slack
# grows with the reported measure error, so the scan trades quadrature
# depth for throughput without weakening the checks.
SCAN_QUAD_TOL = 1e-5
SCAN_GRID_CAP = 2**19


def binomial(n_top: int, n_bot: int) -> int:
    """binom(N, n), zero outside 0 <= n <= N, exact up to N = 62.

    The cap keeps results inside 63-bit integer range for downstream
    consumers of the JSON reports; Python itself would not overflow.
    """
    if n_top < 0:
        raise ValueError("N must be nonnegative")
    if n_top > BINOMIAL_N_CAP:
        raise OverflowError(f"binomial cap is N = {BINOMIAL_N_CAP}, got {n_top}")
    if n_bot < 0 or n_bot > n_top:
        return 0
    return math.comb(n_top, n_bot)


@dataclass(frozen=True)
class BoundRecord:
    """One coefficient against its binomial bound."""

    n: int
    label: object  # exponent (univariate) or lattice point (torus)
    coeff_abs: float
    binom: int
    bound: float
    ratio: float

    def to_json_obj(self) -> dict:
        label = list(self.label) if isinstance(self.label, tuple) else self.label
        return {
            "n": self.n,
            "label": label,
            "coeff_abs": self.coeff_abs,
            "binomial": self.binom,
            "bound": self.bound,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class BoundReport:
    records: tuple[BoundRecord, ...]
    measure: MeasureResult
    satisfied: bool
    max_ratio: float
    slack: float

    def to_json_obj(self) -> dict:
        return {
            "records": [r.to_json_obj() for r in self.records],
            "measure": self.measure.to_json_obj(),
            "satisfied": self.satisfied,
            "max_ratio": self.max_ratio,
            "slack": self.slack,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def slack_for(measure: MeasureResult) -> float:
    """Error budget: a lower-bound theorem checked with an approximate
    measure must tolerate the measure engine's own uncertainty."""
    return 1e-9 + 10.0 * measure.error_estimate / measure.value


def build_report(labeled_coeffs: Sequence[tuple[object, float]], measure: MeasureResult) -> BoundReport:
    """Evaluate |c_n| <= binom(N, n) * M for an ordered coefficient list."""
    n_top = len(labeled_coeffs) - 1
    records = []
    max_ratio = 0.0
    for n, (label, coeff_abs) in enumerate(labeled_coeffs):
        b = binomial(n_top, n)
        bound = b * measure.value
        ratio = coeff_abs / bound if bound > 0 else math.inf
        max_ratio = max(max_ratio, ratio)
        records.append(BoundRecord(n, label, coeff_abs, b, bound, ratio))
    slack = slack_for(measure)
    return BoundReport(tuple(records), measure, max_ratio <= 1.0 + slack, max_ratio, slack)


def check_coefficient_bounds(
    p: SparseUniPoly,
    *,
    measure: MeasureResult | None = None,
    **mahler_kwargs,
) -> BoundReport:
    """Check every coefficient of p against binom(N, n) * M(p).

    N is the term count minus one: the sparse form of the bound. Records
    are indexed by n in increasing exponent order.
    """
    if p.num_terms - 1 > BINOMIAL_N_CAP:
        raise OverflowError(f"term count {p.num_terms} exceeds N = {BINOMIAL_N_CAP} + 1")
    m = measure if measure is not None else mahler(p, **mahler_kwargs)
    labeled = [(exp, abs(c)) for exp, c in p.terms]
    return build_report(labeled, m)


# ---------------------------------------------------------------------------
# randomized tightness exploration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanFamily:
    """Generator spec for random sparse polynomials.

    Coefficient magnitudes are log-uniform in [1e-3, 1e3] (never within
    1e-12 of zero, keeping the term count stable), phases uniform, and
    exponents distinct draws from [0, max_exponent]. When fixed_poly is
    set every sample is that polynomial.
    """

    max_terms: int = 9
    max_exponent: int = 64
    fixed_poly: SparseUniPoly | None = None

    def sample(self, rng: np.random.Generator) -> SparseUniPoly:
        if self.fixed_poly is not None:
            return self.fixed_poly
        n_terms = int(rng.integers(1, self.max_terms + 1))
        exps = np.sort(rng.choice(self.max_exponent + 1, size=n_terms, replace=False))
        mags = 10.0 ** rng.uniform(-3.0, 3.0, n_terms)
        phases = rng.uniform(0.0, 1.0, n_terms)
        coeffs = mags * np.exp(2j * np.pi * phases)
        return SparseUniPoly(tuple((int(m), complex(c)) for m, c in zip(exps, coeffs)))


@dataclass(frozen=True)
class ScanRow:
    index: int
    num_terms: int
    max_exponent: int
    measure_value: float
    max_ratio: float
    satisfied: bool


@dataclass(frozen=True)
class ScanSummary:
    rows: tuple[ScanRow, ...]
    all_satisfied: bool
    worst_ratio: float

    CSV_HEADER = "index,num_terms,max_exponent,measure_value,max_ratio,satisfied"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.index},{r.num_terms},{r.max_exponent},{r.measure_value!r},{r.max_ratio!r},{str(r.satisfied).lower()}"
            )
        return "\n".join(lines) + "\n"


def tightness_scan(
    family: ScanFamily,
    samples: int,
    seed: int,
    *,
    workers: int = 1,
    quad_tol: float = SCAN_QUAD_TOL,
    grid_cap: int = SCAN_GRID_CAP,
    dense_degree_cap: int = 4096,
) -> ScanSummary:
    """Run check_coefficient_bounds over random draws; deterministic in seed.

    Inputs are generated up front from the seeded generator, so fanning the
    measure computations out over threads cannot change any result; rows
    are merged back in sample-index order.
    """
    if samples < 0:
        raise ValueError("samples must be nonnegative")
    rng = np.random.default_rng(seed)
    polys = [family.sample(rng) for _ in range(samples)]

    def one(item: tuple[int, SparseUniPoly]) -> ScanRow:
        idx, p = item
        report = check_coefficient_bounds(
            p, tol=quad_tol, grid_cap=grid_cap, dense_degree_cap=dense_degree_cap
        )
        return ScanRow(
            idx, p.num_terms, p.max_exponent, report.measure.value, report.max_ratio, report.satisfied
        )

    items = list(enumerate(polys))
    if workers > 1 and samples > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, items))
    else:
        rows = [one(it) for it in items]
    rows.sort(key=lambda r: r.index)
    all_sat = all(r.satisfied for r in rows)
    worst = max((r.max_ratio for r in rows), default=0.0)
    return ScanSummary(tuple(rows), all_sat, worst)


__all__ = [
    "binomial",
    "BoundRecord",
    "BoundReport",
    "build_report",
    "check_coefficient_bounds",
    "slack_for",
    "ScanFamily",
    "ScanRow",
    "ScanSummary",
    "tightness_scan",
    "binomial_power",
]
