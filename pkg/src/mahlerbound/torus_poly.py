"""Multivariate trigonometric polynomials on the M-torus.

F(x) = sum over the finite support of coefficients times e(k . x). Besides
direct evaluation and an exactness check of the coefficients against
tensor-grid integration, this module computes the Mahler measure of F two
ways: directly, by averaging log|F| on doubling tensor grids (practical
for at most three variables), and through one-variable specializations
F_a(t) = F(t a) whose measures converge to the measure of F as the
direction a becomes generic (nu(a) -> infinity).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bounds as bounds_mod
from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    ExponentCollisionError,
    GridTooCoarseError,
    NonConvergenceError,
)
from .gridquad import AXIS_OFFSETS, converge_doubling
from .lattice_order import (
    DirectionVector,
    LatticePoint,
    NuCertificate,
    OrderedSupport,
    as_point,
    generate_dirichlet_points,
    generate_scaled_points,
    norm_inf,
    order_support,
)
from .mahler_uni import MeasureResult, Method, mahler
from .sparse_poly import SparseUniPoly, unit_phase

MIN_TORUS_COEFF = 1e-14
TORUS_GRID_START = 256
TORUS_TOL = 1e-3
LIMIT_TOL = 1e-3
LIMIT_COUNT = 16

# Per-axis grid caps keep one level at or below ~2**28 samples.
_AXIS_CAPS = {1: 2**22, 2: 2**14, 3: 2**9}


@dataclass(frozen=True)
class TorusPoly:
    """Finite-support trigonometric polynomial on (R/Z)^dims.

    Coefficients below MIN_TORUS_COEFF are rejected at construction
    instead of silently dropped: support membership changes the term
    count and with it every binomial bound downstream.
    """

    dims: int
    terms: tuple[tuple[LatticePoint, complex], ...]

    def __post_init__(self) -> None:
        if self.dims < 1:
            raise ValueError("dims must be at least one")
        if not self.terms:
            raise ValueError("torus polynomial needs at least one term")
        seen = set()
        cleaned = []
        for k, c in self.terms:
            pt = as_point(k)
            if len(pt) != self.dims:
                raise DimensionMismatchError(f"support point {pt} is not {self.dims}-dimensional")
            if pt in seen:
                raise ValueError(f"duplicate support point {pt}")
            seen.add(pt)
            c = complex(c)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("coefficients must be finite")
            if abs(c) < MIN_TORUS_COEFF:
                raise ValueError(
                    f"coefficient magnitude {abs(c):.3e} at {pt} is below {MIN_TORUS_COEFF}"
                )
            cleaned.append((pt, c))
        cleaned.sort(key=lambda item: item[0])
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def from_coeffs(cls, dims: int, coeffs: dict) -> "TorusPoly":
        return cls(dims, tuple(coeffs.items()))

    def support(self) -> tuple[LatticePoint, ...]:
        return tuple(k for k, _ in self.terms)

    def coeff(self, k: Sequence[int]) -> complex:
        target = as_point(k)
        for pt, c in self.terms:
            if pt == target:
                return c
        return 0.0 + 0.0j

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def support_norm(self) -> int:
        return max(norm_inf(k) for k, _ in self.terms)

    def coeff_scale(self) -> float:
        return math.fsum(abs(c) for _, c in self.terms)

    def evaluate(self, x: Sequence[float]) -> complex:
        if len(x) != self.dims:
            raise DimensionMismatchError(f"point has {len(x)} coordinates, expected {self.dims}")
        total = 0.0 + 0.0j
        for k, c in self.terms:
            total += c * unit_phase(math.fsum(ki * xi for ki, xi in zip(k, x)))
        return total

    def to_json_obj(self) -> dict:
        return {"M": self.dims, "coeffs": [[list(k), [c.real, c.imag]] for k, c in self.terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TorusPoly":
        dims = int(obj["M"])
        terms = tuple((tuple(int(x) for x in k), complex(re, im)) for k, (re, im) in obj["coeffs"])
        return cls(dims, terms)

    @classmethod
    def from_json(cls, text: str) -> "TorusPoly":
        return cls.from_json_obj(json.loads(text))


def eval_torus(F: TorusPoly, x: Sequence[float]) -> complex:
    return F.evaluate(x)


def fourier_roundtrip_check(F: TorusPoly, grid: int) -> float:
    """Max deviation of stored coefficients from tensor-grid integration.

    For a trigonometric polynomial the discrete average over an
    alias-free plain grid recovers each coefficient exactly up to
    rounding, so this doubles as an integration self-test.
    """
    need = 2 * F.support_norm() + 2
    if grid < need:
        raise GridTooCoarseError(f"grid {grid} per axis cannot resolve the support; need {need}")
    if F.dims > 3:
        raise DimensionTooLargeError("roundtrip check is limited to three variables")
    axes = [np.arange(grid) / grid for _ in range(F.dims)]
    samples = np.zeros((grid,) * F.dims, dtype=np.complex128)
    for k, c in F.terms:
        factors = [np.exp(2j * np.pi * k[m] * axes[m]) for m in range(F.dims)]
        if F.dims == 1:
            samples += c * factors[0]
        elif F.dims == 2:
            samples += c * np.multiply.outer(factors[0], factors[1])
        else:
            samples += c * np.einsum("i,j,k->ijk", *factors)
    transformed = np.fft.fftn(samples) / grid**F.dims
    worst = 0.0
    for k, c in F.terms:
        idx = tuple(int(ki) % grid for ki in k)
        worst = max(worst, abs(complex(transformed[idx]) - c))
    return worst


def specialize(F: TorusPoly, a: Sequence[int]) -> SparseUniPoly:
    """Restrict F to the line t -> t*a, giving exponents k . a.

    Coefficients are carried verbatim; callers should have checked that
    the integer exponents are pairwise distinct (the distinctness
    guarantee holds whenever twice the support norm is below nu(a)).
    Exponents are shifted so the least is zero, which leaves the measure
    unchanged and keeps dense degrees manageable.
    """
    pt = as_point(a)
    if len(pt) != F.dims:
        raise DimensionMismatchError("direction dimension does not match the polynomial")
    dots = [sum(ki * ai for ki, ai in zip(k, pt)) for k, _ in F.terms]
    if len(set(dots)) != len(dots):
        collide = sorted(d for d in dots if dots.count(d) > 1)
        raise ExponentCollisionError(
            f"support points share the specialized exponent {collide[0]}"
        )
    low = min(dots)
    pairs = sorted((d - low, c) for d, (_, c) in zip(dots, F.terms))
    return SparseUniPoly(tuple(pairs))


# ---------------------------------------------------------------------------
# direct torus quadrature
# ---------------------------------------------------------------------------


def _torus_log_mean(F: TorusPoly, grid: int, refine_count: list[int]) -> float:
    dims = F.dims
    scale = F.coeff_scale()
    threshold = 1e-13 * scale
    ks = np.array([k for k, _ in F.terms], dtype=np.float64)
    cs = np.array([c for _, c in F.terms], dtype=np.complex128)
    axes = [(np.arange(grid) + AXIS_OFFSETS[m]) / grid for m in range(dims)]

    def refine(coords: tuple[float, ...]) -> float:
        h = 0.25 / grid
        logs = []
        for corner in range(1 << dims):
            x = [coords[m] + (h if corner & (1 << m) else -h) for m in range(dims)]
            logs.append(math.log(max(abs(F.evaluate(x)), 1e-300)))
        return sum(logs) / len(logs)

    total = 0.0
    count = 0
    if dims == 1:
        vals = np.abs(cs @ np.exp(2j * np.pi * np.outer(ks[:, 0], axes[0])))
        mask = vals < threshold
        logs = np.log(np.where(mask, 1.0, vals))
        for j in map(int, np.nonzero(mask)[0]):
            logs[j] = refine((axes[0][j],))
            refine_count[0] += 1
        return float(np.mean(logs))

    phase_last = np.exp(2j * np.pi * np.outer(ks[:, dims - 1], axes[dims - 1]))
    block = max(1, 2**22 // (grid * len(cs)) or 1)
    if dims == 2:
        for lo in range(0, grid, block):
            hi = min(lo + block, grid)
            p1 = np.exp(2j * np.pi * np.outer(axes[0][lo:hi], ks[:, 0]))
            vals = np.abs((p1 * cs[None, :]) @ phase_last)
            mask = vals < threshold
            logs = np.log(np.where(mask, 1.0, vals))
            for i, j in np.argwhere(mask):
                logs[i, j] = refine((axes[0][lo + int(i)], axes[1][int(j)]))
                refine_count[0] += 1
            total += float(np.sum(logs))
            count += logs.size
        return total / count

    # dims == 3: one x1 slab at a time
    phase_mid = np.exp(2j * np.pi * np.outer(ks[:, 1], axes[1]))
    for i in range(grid):
        w = cs * np.exp(2j * np.pi * ks[:, 0] * axes[0][i])
        vals = np.abs(np.einsum("t,tj,tk->jk", w, phase_mid, phase_last, optimize=True))
        mask = vals < threshold
        logs = np.log(np.where(mask, 1.0, vals))
        for j, k in np.argwhere(mask):
            logs[j, k] = refine((axes[0][i], axes[1][int(j)], axes[2][int(k)]))
            refine_count[0] += 1
        total += float(np.sum(logs))
        count += logs.size
    return total / count


def mahler_torus_grid(
    F: TorusPoly,
    grid_start: int = TORUS_GRID_START,
    tol: float = TORUS_TOL,
) -> MeasureResult:
    """Mahler measure of F by tensor-grid averaging of log|F|.

    Grids double per axis until two consecutive estimates differ by less
    than tol on the log scale. The zero set of F is typically a curve on
    the torus, which slows plain convergence to first order; the shared
    extrapolation pass restores a usable rate. Cost grows like grid^dims,
    hence the three-variable guard.
    """
    if F.dims > 3:
        raise DimensionTooLargeError("direct quadrature is limited to three variables")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if grid_start < 2:
        raise ValueError("grid_start must be at least 2")
    refined = [0]
    outcome = converge_doubling(
        lambda grid: _torus_log_mean(F, grid, refined),
        grid_start,
        _AXIS_CAPS[F.dims],
        tol,
    )
    if not outcome.converged and outcome.gap_log > 10.0 * tol:
        raise NonConvergenceError(
            f"torus grid cap reached with inter-grid difference {outcome.gap_log:.3e} > 10*tol",
            best_value=math.exp(outcome.log_estimate),
            last_gap=outcome.gap_log,
        )
    value = math.exp(outcome.log_estimate)
    detail = {
        "grid_final": outcome.grid_final,
        "levels": outcome.levels,
        "refined_samples": refined[0],
        "extrapolated": outcome.extrapolated,
        "converged": outcome.converged,
        "dims": F.dims,
    }
    return MeasureResult(
        value, outcome.log_estimate, Method.TORUS_GRID, value * max(outcome.gap_log, tol), detail
    )


# ---------------------------------------------------------------------------
# specialization limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitEntry:
    q: int
    a: LatticePoint
    nu: int
    measure: MeasureResult

    def to_json_obj(self) -> dict:
        return {"q": self.q, "a": list(self.a), "nu": self.nu, "measure": self.measure.to_json_obj()}


@dataclass(frozen=True)
class LimitTrace:
    """Measures of specializations along directions of growing nu."""

    entries: tuple[LimitEntry, ...]
    estimate: float
    converged: bool
    final_gap: float
    exhausted: bool = False

    def to_json_obj(self) -> dict:
        return {
            "entries": [e.to_json_obj() for e in self.entries],
            "estimate": self.estimate,
            "converged": self.converged,
            "final_gap": self.final_gap,
            "exhausted": self.exhausted,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def csv_header(self, dims: int) -> str:
        coords = ",".join(f"a{i+1}" for i in range(dims))
        return f"q,nu,{coords},value,log_value,method,error_estimate,rel_gap"

    def to_csv(self) -> str:
        if not self.entries:
            return "q,nu,value,log_value,method,error_estimate,rel_gap\n"
        dims = len(self.entries[0].a)
        lines = [self.csv_header(dims)]
        prev = None
        for e in self.entries:
            gap = abs(e.measure.value - prev) / e.measure.value if prev is not None else math.nan
            coords = ",".join(str(c) for c in e.a)
            lines.append(
                f"{e.q},{e.nu},{coords},{e.measure.value!r},{e.measure.log_value!r},"
                f"{e.measure.method.value},{e.measure.error_estimate!r},{gap!r}"
            )
            prev = e.measure.value
        return "\n".join(lines) + "\n"


def _strictly_increasing_nu(result_certs: Sequence[NuCertificate], qs: Sequence[int]) -> list[tuple[int, NuCertificate]]:
    picked: list[tuple[int, NuCertificate]] = []
    last = 0
    for cert, q in zip(result_certs, qs):
        if cert.nu > last:
            picked.append((q, cert))
            last = cert.nu
    return picked


def mahler_limit(
    F: TorusPoly,
    alpha: DirectionVector,
    count: int = LIMIT_COUNT,
    tol: float = LIMIT_TOL,
    *,
    q_cap: int = 10**6,
    shell_cap: int = 512,
    dense_degree_cap: int = 4096,
    quad_tol: float = 1e-9,
) -> LimitTrace:
    """Estimate the measure of F along specializations of increasing nu.

    Directions come from the Dirichlet generator, topped up by the scaled
    generator when it runs short; only a strictly-increasing-nu
    subsequence is kept. Convergence means the last two measures agree to
    tol relative. No convergence rate is known, so the stopping rule is a
    heuristic and is reported as such via converged/final_gap.
    """
    ordered = order_support(F.support(), alpha)
    # Over-request: equal-nu repeats are dropped by the strictness filter.
    search = generate_dirichlet_points(ordered, 2 * count, q_cap, shell_cap)
    certs = list(search.certificates)
    qs = list(search.qs)
    exhausted_generators = search.exhausted
    if search.exhausted:
        extra = generate_scaled_points(ordered, count, shell_cap)
        known = {c.a for c in certs}
        for cert, q in zip(extra.certificates, extra.qs):
            if cert.a not in known:
                certs.append(cert)
                qs.append(q)
                known.add(cert.a)
        paired = sorted(zip(certs, qs), key=lambda cq: (cq[0].nu, cq[1]))
        certs = [c for c, _ in paired]
        qs = [q for _, q in paired]
        exhausted_generators = len(certs) < count and extra.exhausted

    picked = _strictly_increasing_nu(certs, qs)[:count]
    entries: list[LimitEntry] = []
    converged = False
    final_gap = math.inf
    singleton = F.num_terms == 1
    for q, cert in picked:
        spec = specialize(F, cert.a)
        m = mahler(spec, dense_degree_cap=dense_degree_cap, tol=quad_tol)
        entries.append(LimitEntry(q, cert.a, cert.nu, m))
        if singleton:
            converged = True
            final_gap = 0.0
            break
        if len(entries) >= 2:
            prev, cur = entries[-2].measure.value, entries[-1].measure.value
            final_gap = abs(cur - prev) / cur if cur > 0 else math.inf
            if final_gap < tol:
                converged = True
                break
    estimate = entries[-1].measure.value if entries else math.nan
    return LimitTrace(
        tuple(entries),
        estimate,
        converged,
        final_gap,
        exhausted=(not converged) and exhausted_generators,
    )


# ---------------------------------------------------------------------------
# ordered coefficient bounds and ordering comparisons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderedBoundReport:
    """Coefficient bounds of F under one direction's support ordering."""

    report: bounds_mod.BoundReport
    ordering: tuple[LatticePoint, ...]
    alpha: DirectionVector
    measure_source: str

    @property
    def satisfied(self) -> bool:
        return self.report.satisfied

    @property
    def max_ratio(self) -> float:
        return self.report.max_ratio

    def to_json_obj(self) -> dict:
        obj = self.report.to_json_obj()
        obj["ordering"] = [list(k) for k in self.ordering]
        obj["alpha"] = self.alpha.to_json_obj()
        obj["measure_source"] = self.measure_source
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def check_ordered_bounds(
    F: TorusPoly,
    alpha: DirectionVector,
    *,
    measure: MeasureResult | None = None,
    grid_start: int = TORUS_GRID_START,
    grid_tol: float = TORUS_TOL,
    limit_count: int = LIMIT_COUNT,
    limit_tol: float = LIMIT_TOL,
) -> OrderedBoundReport:
    """Check |coefficient| <= binom(N, n) * M(F) in the alpha-ordering.

    The support is indexed by increasing direction value; the measure
    comes from the grid oracle for at most three variables and from the
    specialization limit beyond, with the source recorded in the report.
    """
    ordered = order_support(F.support(), alpha)
    if measure is not None:
        m = measure
        source = m.method.value
    elif F.dims <= 3:
        m = mahler_torus_grid(F, grid_start, grid_tol)
        source = m.method.value
    else:
        trace = mahler_limit(F, alpha, limit_count, limit_tol)
        log_est = math.log(trace.estimate)
        gap = trace.final_gap if math.isfinite(trace.final_gap) else 1.0
        m = MeasureResult(
            trace.estimate,
            log_est,
            Method.SPECIALIZATION_LIMIT,
            trace.estimate * max(gap, limit_tol),
            {"entries": len(trace.entries), "converged": trace.converged},
        )
        source = m.method.value
    labeled = [(pt, abs(F.coeff(pt))) for pt in ordered.points]
    report = bounds_mod.build_report(labeled, m)
    return OrderedBoundReport(report, ordered.points, alpha, source)


@dataclass(frozen=True)
class DualOrderingReport:
    """The two bound systems induced by two directions on one support.

    In general the permutations differ and neither system of bounds
    implies the other; differing_indices flags where they disagree.
    """

    report_alpha: OrderedBoundReport
    report_beta: OrderedBoundReport
    differing_indices: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "alpha": self.report_alpha.to_json_obj(),
            "beta": self.report_beta.to_json_obj(),
            "differing_indices": list(self.differing_indices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def dual_ordering_report(
    F: TorusPoly,
    alpha: DirectionVector,
    beta: DirectionVector,
    *,
    measure: MeasureResult | None = None,
    grid_start: int = TORUS_GRID_START,
    grid_tol: float = TORUS_TOL,
) -> DualOrderingReport:
    """Bound reports under both orderings, sharing one measure of F."""
    if measure is None and F.dims <= 3:
        measure = mahler_torus_grid(F, grid_start, grid_tol)
    ra = check_ordered_bounds(F, alpha, measure=measure, grid_start=grid_start, grid_tol=grid_tol)
    rb = check_ordered_bounds(F, beta, measure=measure, grid_start=grid_start, grid_tol=grid_tol)
    differing = tuple(
        n for n, (ka, kb) in enumerate(zip(ra.ordering, rb.ordering)) if ka != kb
    )
    return DualOrderingReport(ra, rb, differing)


__all__ = [
    "TorusPoly",
    "eval_torus",
    "fourier_roundtrip_check",
    "specialize",
    "mahler_torus_grid",
    "LimitEntry",
    "LimitTrace",
    "mahler_limit",
    "OrderedBoundReport",
    "check_ordered_bounds",
    "DualOrderingReport",
    "dual_ordering_report",
]
