"""Two independent engines for the Mahler measure of a univariate polynomial.

For p(z) = c_N prod (z - a_n) the measure equals |c_N| prod max(1, |a_n|)
and also exp of the mean of log|p(e(t))| over the circle (Jensen). The
root-product engine finds all roots of the dense expansion; the circle
quadrature engine averages log|p| on doubling uniform grids. They share no
code path, so they cross-validate each other.

Root finding is Aberth-Ehrlich simultaneous iteration with companion-matrix
eigenvalues as an initialization fallback and Newton polishing. Double
precision cannot locate a root of multiplicity mu better than about
eps**(1/mu), which is fatal for measures of polynomials like (z+1)**20, so
when the per-root error analysis shows the measure would be off, certified
root clusters are collapsed onto the corresponding simple root of the
(mu-1)-th derivative, where Newton recovers full accuracy.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    ConvergenceFailureError,
    DegreeCapExceededError,
    NonConvergenceError,
)
from .gridquad import converge_doubling, frac_offset_multiple
from .sparse_poly import SparseUniPoly

DENSE_DEGREE_CAP = 4096
QUAD_GRID_START = 256
QUAD_TOL = 1e-9
QUAD_SAMPLE_CAP = 2**22

# Samples with |p| below this fraction of sum|c_n| are replaced by a locally
# refined average; log of an exact zero would poison the grid mean.
NEAR_ZERO_REL = 1e-13

_RESIDUAL_TARGET = 1e-10  # relative to the evaluation magnitude sum|c_n||z|^n
_REFINE_LOG_ERR = 1e-9
_REFINE_DEGREE_CAP = 2048
_COMPANION_DEGREE_CAP = 1024
_CERT_TOL = 1e-12  # relative derivative smallness certifying a multiple root


class Method(str, Enum):
    ROOT_PRODUCT = "RootProduct"
    CIRCLE_QUADRATURE = "CircleQuadrature"
    TORUS_GRID = "TorusGrid"
    SPECIALIZATION_LIMIT = "SpecializationLimit"


@dataclass(frozen=True)
class MeasureResult:
    """A Mahler measure value with method tag and error estimate."""

    value: float
    log_value: float
    method: Method
    error_estimate: float
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.error_estimate) or self.error_estimate < 0:
            raise ValueError("error_estimate must be finite and nonnegative")

    @classmethod
    def from_log(cls, log_value: float, method: Method, error_estimate: float, detail: dict | None = None) -> "MeasureResult":
        return cls(math.exp(log_value), log_value, method, error_estimate, detail or {})

    @property
    def relative_error(self) -> float:
        return self.error_estimate / self.value if self.value > 0 else math.inf

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "log_value": self.log_value,
            "method": self.method.value,
            "error_estimate": self.error_estimate,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MeasureResult":
        return cls(
            float(obj["value"]),
            float(obj["log_value"]),
            Method(obj["method"]),
            float(obj["error_estimate"]),
            dict(obj.get("detail", {})),
        )


@dataclass(frozen=True)
class RootSet:
    """All roots of the normalized (lowest exponent zero) dense form."""

    roots: tuple[complex, ...]
    leading_coeff: complex
    degree: int

    def __post_init__(self) -> None:
        if len(self.roots) != self.degree:
            raise ValueError("root count must equal the degree")
        if abs(self.leading_coeff) == 0.0:
            raise ValueError("leading coefficient must be nonzero")


# ---------------------------------------------------------------------------
# polynomial evaluation helpers (vectorized over root estimates)
# ---------------------------------------------------------------------------


def _horner_pair(desc: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Value and derivative by Horner's rule; desc holds c_d, ..., c_0."""
    p = np.full_like(z, desc[0])
    dp = np.zeros_like(z)
    for c in desc[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _horner_abs(desc_abs: np.ndarray, x: np.ndarray) -> np.ndarray:
    s = np.full_like(x, desc_abs[0])
    for c in desc_abs[1:]:
        s = s * x + c
    return s


class _DensePoly:
    """Newton-ratio and residual evaluation that never overflows.

    Inside the unit disk the dense Horner form is used directly; outside,
    the reversed polynomial is evaluated at 1/z so every power stays
    bounded by one in modulus. For very sparse polynomials a termwise
    exponential form is used instead, whose cost is terms x points
    independently of the degree.
    """

    def __init__(self, poly: SparseUniPoly):
        norm = poly.normalize()
        self.degree = norm.max_exponent
        self.exps = np.array(norm.exponents(), dtype=np.float64)
        self.coeffs = np.array(norm.coefficients(), dtype=np.complex128)
        self.abs_coeffs = np.abs(self.coeffs)
        self.sparse = norm.num_terms <= max(8, self.degree // 4)
        if not self.sparse or self.degree <= _COMPANION_DEGREE_CAP:
            dense = np.zeros(self.degree + 1, dtype=np.complex128)
            dense[np.array(norm.exponents(), dtype=np.int64)] = self.coeffs
            self.asc = dense
            self.desc = dense[::-1].copy()
            self.abs_desc = np.abs(self.desc)
            self.abs_asc = np.abs(dense)
        else:
            self.asc = None

    def newton_ratio(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (p/p', relative residual, forward error estimate) at z."""
        if self.sparse:
            return self._newton_sparse(z)
        return self._newton_dense(z)

    def _newton_dense(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        d = self.degree
        az = np.abs(z)
        ratio = np.empty_like(z)
        rel = np.empty(len(z), dtype=np.float64)
        inside = az <= 1.0
        if inside.any():
            zi = z[inside]
            p, dp = _horner_pair(self.desc, zi)
            s = _horner_abs(self.abs_desc, np.abs(zi))
            dp = np.where(np.abs(dp) == 0.0, 1e-300, dp)
            ratio[inside] = p / dp
            rel[inside] = np.abs(p) / np.maximum(s, 1e-300)
        outside = ~inside
        if outside.any():
            w = 1.0 / z[outside]
            # p(z) = z^d q(w) with q the reversed polynomial, so
            # p/p' = z q(w) / (d q(w) - w q'(w)).
            q, dq = _horner_pair(self.asc, w)
            s = _horner_abs(self.abs_asc, np.abs(w))
            denom = d * q - w * dq
            denom = np.where(np.abs(denom) == 0.0, 1e-300, denom)
            ratio[outside] = z[outside] * q / denom
            rel[outside] = np.abs(q) / np.maximum(s, 1e-300)
        fe = np.abs(ratio)
        return ratio, rel, fe

    def _newton_sparse(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        az = np.abs(z)
        logz = np.log(np.where(az == 0.0, 1e-300, z))
        # Anchor the largest power so every term stays bounded by one.
        m_ref = np.where(az >= 1.0, self.exps[-1], 0.0)
        expo = np.exp(np.multiply.outer(self.exps, logz) - m_ref * logz)
        u = self.coeffs @ expo
        v = (self.coeffs * self.exps) @ expo
        s = self.abs_coeffs @ np.abs(expo)
        v = np.where(np.abs(v) == 0.0, 1e-300, v)
        ratio = z * u / v
        rel = np.abs(u) / np.maximum(s, 1e-300)
        return ratio, rel, np.abs(ratio)


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration
# ---------------------------------------------------------------------------


def _initial_circle(poly: _DensePoly) -> np.ndarray:
    d = poly.degree
    c0 = poly.coeffs[0]
    cN = poly.coeffs[-1]
    r0 = abs(c0 / cN) ** (1.0 / d)
    if poly.asc is not None:
        bound = 1.0 + float(np.max(np.abs(poly.asc[:-1]))) / abs(poly.asc[-1])
    else:
        bound = 1.0 + float(np.max(poly.abs_coeffs[:-1])) / abs(cN)
    r0 = min(max(r0, 1e-3), bound)
    k = np.arange(d)
    # Quasi-random radial jitter breaks the modulus symmetry that can stall
    # the iteration on symmetric root configurations.
    jitter = np.exp(0.2 * (((k * 0.6180339887) % 1.0) - 0.5))
    angles = 2.0 * np.pi * (k + 0.5) / d + 0.7391
    return r0 * jitter * np.exp(1j * angles)


def _pairwise_inverse_sum(z: np.ndarray, chunk: int = 512) -> np.ndarray:
    d = len(z)
    out = np.empty(d, dtype=np.complex128)
    eps_sep = 1e-14 * (1.0 + float(np.mean(np.abs(z))))
    for lo in range(0, d, chunk):
        hi = min(lo + chunk, d)
        diff = z[lo:hi, None] - z[None, :]
        rows = np.arange(hi - lo)
        diff[rows, lo + rows] = 1.0  # diagonal placeholder
        coincident = np.abs(diff) == 0.0
        if coincident.any():
            diff[coincident] = eps_sep
        inv = 1.0 / diff
        inv[rows, lo + rows] = 0.0
        out[lo:hi] = inv.sum(axis=1)
    return out


def _aberth(poly: _DensePoly, z0: np.ndarray, max_iter: int, tol: float = 5e-15) -> tuple[np.ndarray, int, bool]:
    z = z0.astype(np.complex128, copy=True)
    for it in range(max_iter):
        ratio, rel, _ = poly.newton_ratio(z)
        # A backward-relative residual at rounding level means the point is
        # an exact root of a machine-perturbed polynomial; freeze it.
        done = rel < 5e-15
        if done.all():
            return z, it + 1, True
        ratio = np.where(done, 0.0, ratio)
        s = _pairwise_inverse_sum(z)
        denom = 1.0 - ratio * s
        denom = np.where(np.abs(denom) < 1e-12, 1.0, denom)
        step = ratio / denom
        cap = 0.3 * (1.0 + np.abs(z))
        mag = np.abs(step)
        step = np.where(mag > cap, step * (cap / np.maximum(mag, 1e-300)), step)
        z = z - step
        if float(np.max(np.abs(step) / (1.0 + np.abs(z)))) < tol:
            return z, it + 1, True
    return z, max_iter, False


def _newton_polish(poly: _DensePoly, z: np.ndarray, steps: int = 4) -> np.ndarray:
    for _ in range(steps):
        ratio, rel, _ = poly.newton_ratio(z)
        ratio = np.where(rel < 1e-18, 0.0, ratio)
        cap = 0.1 * (1.0 + np.abs(z))
        mag = np.abs(ratio)
        ratio = np.where(mag > cap, ratio * (cap / np.maximum(mag, 1e-300)), ratio)
        z = z - ratio
    return z


def _derivative_arrays(exps: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Termwise derivative with coefficients renormalized to unit peak.

    Renormalization keeps repeated differentiation (falling factorials up
    to degree**mu) inside double range without moving any root.
    """
    keep = exps >= 1.0
    e = exps[keep]
    c = coeffs[keep] * e
    if len(c) == 0:
        return e, c
    return e - 1.0, c / float(np.max(np.abs(c)))


def _term_point_eval(exps: np.ndarray, coeffs: np.ndarray, z: complex) -> tuple[complex, complex, float]:
    """(u, v, s) at one point with p = z^mref u, p' = z^(mref-1) v.

    mref anchors the largest power so nothing overflows; s bounds |u| the
    way sum |c_n| |z|^{m_n} bounds |p|, so |u|/s is a backward-relative
    residual.
    """
    az = abs(z)
    if az < 1e-300:
        z = complex(1e-300, 0.0)
        az = 1e-300
    logz = cmath.log(z)
    mref = float(exps[-1]) if az >= 1.0 else 0.0
    w = np.exp((exps - mref) * logz)
    u = complex(np.sum(coeffs * w))
    v = complex(np.sum(coeffs * exps * w))
    s = float(np.sum(np.abs(coeffs) * np.abs(w)))
    return u, v, s


def _newton_scalar(exps: np.ndarray, coeffs: np.ndarray, z0: complex, steps: int = 80) -> complex:
    z = z0
    for _ in range(steps):
        u, v, _ = _term_point_eval(exps, coeffs, z)
        if v == 0:
            break
        step = z * u / v
        z = z - step
        if abs(step) <= 1e-17 * (1.0 + abs(z)):
            break
    return z


def _union_clusters(z: np.ndarray, fe: np.ndarray) -> list[list[int]]:
    """Group roots whose uncertainty disks plausibly overlap.

    A mu-fold root smears into a cluster of radius about mu * fe, so the
    merge radius is generous; the derivative certificate later rejects
    groups that are not genuinely one multiple root.
    """
    d = len(z)
    parent = list(range(d))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = np.abs(z[:, None] - z[None, :])
    tau = 20.0 * (fe[:, None] + fe[None, :]) + 1e-13 * (1.0 + np.abs(z))[:, None]
    for i, j in np.argwhere(dist <= tau):
        if i < j:
            parent[find(int(i))] = find(int(j))
    groups: dict[int, list[int]] = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) >= 2]


def _refine_multiple_roots(
    poly: _DensePoly, z: np.ndarray, fe: np.ndarray
) -> tuple[np.ndarray, np.ndarray, int] | None:
    """Collapse certified root clusters onto derivative-chain centers.

    For a cluster of mu estimates, the (mu-1)-th derivative has a simple,
    perfectly conditioned root at the true multiple root; Newton from the
    cluster centroid recovers it to machine accuracy. The collapse is
    accepted only when p and its first mu-1 derivatives all vanish at the
    refined point to within _CERT_TOL relative, while the mu-th does not.
    """
    if poly.degree > _REFINE_DEGREE_CAP:
        return None
    clusters = _union_clusters(z, fe)
    if not clusters:
        return None
    new_z = z.copy()
    new_fe = fe.copy()
    collapsed = 0
    for members in clusters:
        mu = len(members)
        chain = [(poly.exps, poly.coeffs)]
        for _ in range(mu):
            e_next, c_next = _derivative_arrays(*chain[-1])
            chain.append((e_next, c_next))
        q_exps, q_coeffs = chain[mu - 1]
        if len(q_exps) == 0:
            continue
        center = complex(np.mean(z[members]))
        r = _newton_scalar(q_exps, q_coeffs, center)
        u, v, s = _term_point_eval(q_exps, q_coeffs, r)
        if abs(v) == 0.0 or abs(u) > 1e-11 * s:
            continue
        certified = True
        for j in range(mu):
            ej, cj = chain[j]
            uj, _, sj = _term_point_eval(ej, cj, r)
            if abs(uj) > _CERT_TOL * sj:
                certified = False
                break
        if certified and len(chain[mu][0]) > 0:
            un, _, sn = _term_point_eval(*chain[mu], r)
            if abs(un) <= 1e-6 * sn:
                certified = False  # under-merged: true multiplicity is larger
        if not certified:
            continue
        fe_r = abs(r * u / v) + 4e-16 * (1.0 + abs(r))
        new_z[members] = r
        new_fe[members] = fe_r
        collapsed += 1
    if collapsed == 0:
        return None
    return new_z, new_fe, collapsed


def _find_roots_impl(p: SparseUniPoly, dense_degree_cap: int) -> tuple[RootSet, dict]:
    norm = p.normalize()
    degree = norm.max_exponent
    if degree < 1:
        raise ValueError("root finding needs degree at least one after normalization")
    if degree > dense_degree_cap:
        raise DegreeCapExceededError(
            f"dense degree {degree} exceeds cap {dense_degree_cap}"
        )
    poly = _DensePoly(norm)
    diag: dict = {"degree": degree, "escalated": False}

    if degree == 1:
        root = -poly.coeffs[0] / poly.coeffs[-1] if poly.sparse else -poly.asc[0] / poly.asc[1]
        z = np.array([root], dtype=np.complex128)
        iterations = 0
        converged = True
    else:
        z, iterations, converged = _aberth(poly, _initial_circle(poly), max_iter=500)
        if not converged and poly.asc is not None and degree <= _COMPANION_DEGREE_CAP:
            z0 = np.roots(poly.asc[::-1]).astype(np.complex128)
            z, it2, converged = _aberth(poly, z0, max_iter=300)
            iterations += it2
            diag["companion_fallback"] = True
    z = _newton_polish(poly, z)

    _, rel, fe = poly.newton_ratio(z)
    est_log_err = float(np.sum(fe / np.maximum(1.0, np.abs(z))))
    diag.update(iterations=iterations, max_rel_residual=float(rel.max()))

    if est_log_err > _REFINE_LOG_ERR:
        refined = _refine_multiple_roots(poly, z, fe)
        if refined is not None:
            z, fe, collapsed = refined
            est_log_err = float(np.sum(fe / np.maximum(1.0, np.abs(z))))
            diag.update(escalated=True, clusters_collapsed=collapsed)
            _, rel, _ = poly.newton_ratio(z)
            diag["max_rel_residual"] = float(rel.max())
    moduli = np.abs(z)

    if float(rel.max()) > _RESIDUAL_TARGET:
        raise ConvergenceFailureError(
            f"root polishing stalled: relative residual {float(rel.max()):.3e}"
        )
    diag["log_measure_error"] = est_log_err
    diag["moduli"] = moduli

    roots = tuple(complex(w) for w in z)
    return RootSet(roots, complex(poly.coeffs[-1]), degree), diag


def find_roots(p: SparseUniPoly, dense_degree_cap: int = DENSE_DEGREE_CAP) -> RootSet:
    """All roots of normalize(p), multiplicities repeated.

    Raises DegreeCapExceededError when the dense degree is above the cap
    and ConvergenceFailureError when polishing cannot meet the residual
    target of 1e-10 relative to the evaluation magnitude.
    """
    root_set, _ = _find_roots_impl(p, dense_degree_cap)
    return root_set


def mahler_roots(p: SparseUniPoly, dense_degree_cap: int = DENSE_DEGREE_CAP) -> MeasureResult:
    """Mahler measure via |c_N| prod max(1, |root|)."""
    norm = p.normalize()
    if norm.max_exponent == 0:
        c = abs(norm.leading_coeff)
        return MeasureResult.from_log(math.log(c), Method.ROOT_PRODUCT, 0.0, {"degree": 0})
    root_set, diag = _find_roots_impl(p, dense_degree_cap)
    moduli = diag["moduli"]
    log_value = math.log(abs(root_set.leading_coeff)) + float(
        np.sum(np.log(np.maximum(moduli, 1.0)))
    )
    value = math.exp(log_value)
    err_log = diag["log_measure_error"]
    detail = {
        "degree": root_set.degree,
        "iterations": diag.get("iterations", 0),
        "refined_clusters": diag.get("clusters_collapsed", 0),
        "max_rel_residual": diag["max_rel_residual"],
    }
    return MeasureResult(value, log_value, Method.ROOT_PRODUCT, value * min(err_log, 1e3), detail)


# ---------------------------------------------------------------------------
# circle quadrature
# ---------------------------------------------------------------------------


def _grid_log_mean(exps: list[int], coeffs: list[complex], grid: int, refine_count: list[int]) -> float:
    """Mean of log|p(e(t))| over t = (j + offset)/grid, j = 0..grid-1.

    Per term the needed powers are gathered from one table of grid-th
    roots of unity, with the exponent reduced modulo the grid exactly in
    integer arithmetic, so cost is O(terms * grid) regardless of how
    large the exponents are. Near-zero samples are replaced by the mean
    of two samples one dyadic level deeper inside their cell.
    """
    idx = np.arange(grid, dtype=np.int64)
    table = np.exp((2j * np.pi / grid) * np.arange(grid))
    # Kahan-compensated accumulation: plain summation would lose
    # terms * eps * sum|c| absolutely, which swamps log|p| near roots close
    # to the circle when the coefficient range is wide.
    acc = np.zeros(grid, dtype=np.complex128)
    comp = np.zeros(grid, dtype=np.complex128)
    rotations = []
    offset = ((math.sqrt(5.0) - 1.0) / 2.0)
    for m, c in zip(exps, coeffs):
        s = m % grid
        # e(m*(j+g)/grid) = e((m j mod grid)/grid) * e(frac((m//grid)*g) + s*g/grid);
        # the first factor is gathered from the table with exact index math,
        # the second is a per-term constant rotation.
        phase = frac_offset_multiple(m // grid) + (s / grid) * offset
        rot = cmath.exp(2j * math.pi * phase)
        rotations.append(rot)
        term = (c * rot) * table[(s * idx) % grid]
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    vals = np.abs(acc)
    scale = float(np.sum(np.abs(np.array(coeffs))))
    mask = vals < NEAR_ZERO_REL * scale
    logs = np.log(np.where(mask, 1.0, vals))
    if mask.any():
        where = np.nonzero(mask)[0]
        refine_count[0] += len(where)
        for j0 in map(int, where):
            local = []
            for delta in (-1, 1):
                parts = []
                for (m, c), rot in zip(zip(exps, coeffs), rotations):
                    frac_int = ((m * (4 * j0 + delta)) % (4 * grid)) / (4 * grid)
                    parts.append((c * rot) * cmath.exp(2j * math.pi * frac_int))
                total = complex(
                    math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts)
                )
                local.append(math.log(max(abs(total), 1e-300)))
            logs[j0] = 0.5 * (local[0] + local[1])
    return float(np.mean(logs))


def mahler_quadrature(
    p: SparseUniPoly,
    grid_start: int = QUAD_GRID_START,
    tol: float = QUAD_TOL,
    grid_cap: int = QUAD_SAMPLE_CAP,
) -> MeasureResult:
    """Mahler measure via exp of the grid-averaged log|p(e(t))|.

    The grid doubles until two consecutive estimates differ by less than
    tol (on the log scale, i.e. relative in the measure). Exponents are
    first divided by their gcd, which leaves the measure unchanged and
    collapses two-term polynomials to degree one.
    """
    if grid_start < 64 or grid_start & (grid_start - 1):
        raise ValueError("grid_start must be a power of two at least 64")
    if tol <= 0:
        raise ValueError("tol must be positive")
    norm = p.normalize()
    if norm.num_terms == 1:
        c = abs(norm.leading_coeff)
        return MeasureResult.from_log(
            math.log(c), Method.CIRCLE_QUADRATURE, 0.0, {"grid_final": 0, "levels": 0}
        )
    exps = list(norm.exponents())
    g = 0
    for m in exps:
        g = math.gcd(g, m)
    exps = [m // g for m in exps]
    coeffs = list(norm.coefficients())

    refined = [0]
    outcome = converge_doubling(
        lambda grid: _grid_log_mean(exps, coeffs, grid, refined),
        grid_start,
        grid_cap,
        tol,
    )
    if not outcome.converged and outcome.gap_log > 10.0 * tol:
        raise NonConvergenceError(
            f"grid cap reached with inter-grid difference {outcome.gap_log:.3e} > 10*tol",
            best_value=math.exp(outcome.log_estimate),
            last_gap=outcome.gap_log,
        )
    value = math.exp(outcome.log_estimate)
    detail = {
        "grid_final": outcome.grid_final,
        "levels": outcome.levels,
        "refined_samples": refined[0],
        "exponent_gcd": g,
        "extrapolated": outcome.extrapolated,
        "converged": outcome.converged,
    }
    error = value * max(outcome.gap_log, tol)
    return MeasureResult(value, outcome.log_estimate, Method.CIRCLE_QUADRATURE, error, detail)


def mahler(
    p: SparseUniPoly,
    *,
    dense_degree_cap: int = DENSE_DEGREE_CAP,
    grid_start: int = QUAD_GRID_START,
    tol: float = QUAD_TOL,
    grid_cap: int = QUAD_SAMPLE_CAP,
) -> MeasureResult:
    """Engine dispatch: roots for moderate dense degree, quadrature beyond."""
    norm = p.normalize()
    if norm.max_exponent == 0:
        c = abs(norm.leading_coeff)
        return MeasureResult.from_log(math.log(c), Method.ROOT_PRODUCT, 0.0, {"degree": 0})
    if norm.max_exponent <= dense_degree_cap:
        return mahler_roots(p, dense_degree_cap)
    return mahler_quadrature(p, grid_start, tol, grid_cap)
