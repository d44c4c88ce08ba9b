"""Ordering machinery on integer lattices driven by a real direction vector.

A direction vector alpha with rationally independent coordinates orders
Z^M through the injective functional k -> k . alpha. On a finite support
set that ordering is recorded together with its minimal gap eta. Integer
lattice points a can replicate the ordering: whenever the shortest
nonzero integer vector orthogonal to a (the quantity nu(a)) is longer
than twice the support's sup-norm, the integer values k . a are distinct,
and if they increase in the same sequence as k . alpha the point a is an
admissible specialization direction. Such points are produced by rounding
q * alpha for denominators q supplied by Dirichlet's simultaneous
approximation theorem, or by rounding C * alpha along doubling scales.

Floating point cannot certify rational independence, so numerically tied
orderings raise TieDetectedError rather than silently picking a side; an
optional 50+ digit decimal form of alpha arbitrates small gaps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    MahlerboundError,
    ShellCapExceededError,
    TieDetectedError,
    ZeroVectorError,
)

LatticePoint = tuple[int, ...]

COORD_CAP = 2**31
TIE_TOLERANCE_REL = 1e-9
EXTENDED_TRIGGER_REL = 1e-6
DECIMAL_PRECISION = 60
NU_SHELL_CAP = 64
Q_CAP = 10**6


def as_point(coords: Iterable[int]) -> LatticePoint:
    pt = tuple(int(c) for c in coords)
    if not pt:
        raise ValueError("lattice points need at least one coordinate")
    for c in pt:
        if abs(c) > COORD_CAP:
            raise ValueError(f"coordinate {c} exceeds cap {COORD_CAP}")
    return pt


def norm_inf(point: Sequence[int]) -> int:
    return max(abs(c) for c in point)


@dataclass(frozen=True)
class DirectionVector:
    """Real direction with an optional high-precision decimal form.

    Decimal literals handed to the constructor are treated as exact
    reals; the decimal path re-evaluates orderings when double-precision
    gaps fall under EXTENDED_TRIGGER_REL relative.
    """

    alphas: tuple[float, ...]
    description: str | None = None
    decimals: tuple[Decimal, ...] | None = None

    def __post_init__(self) -> None:
        if not self.alphas:
            raise ValueError("direction vector needs at least one coordinate")
        for a in self.alphas:
            if not math.isfinite(a):
                raise ValueError("direction coordinates must be finite")
        if self.decimals is not None and len(self.decimals) != len(self.alphas):
            raise ValueError("decimal form must match the coordinate count")

    @classmethod
    def from_decimals(cls, literals: Sequence[str | Decimal], description: str | None = None) -> "DirectionVector":
        decs = tuple(Decimal(str(x)) for x in literals)
        return cls(tuple(float(d) for d in decs), description, decs)

    @property
    def dims(self) -> int:
        return len(self.alphas)

    def value(self, k: Sequence[int]) -> float:
        """The direction functional k . alpha in compensated summation."""
        if len(k) != self.dims:
            raise DimensionMismatchError(f"point has {len(k)} coordinates, direction has {self.dims}")
        return math.fsum(ki * ai for ki, ai in zip(k, self.alphas))

    def value_decimal(self, k: Sequence[int]) -> Decimal:
        if self.decimals is None:
            raise ValueError("no decimal form available")
        with localcontext() as ctx:
            ctx.prec = DECIMAL_PRECISION
            total = Decimal(0)
            for ki, ai in zip(k, self.decimals):
                total += int(ki) * ai
            return total

    def to_json_obj(self) -> dict:
        if self.decimals is not None:
            return {"alphas": [str(d) for d in self.decimals], "precision": "extended"}
        return {"alphas": list(self.alphas), "precision": "double"}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DirectionVector":
        if obj.get("precision") == "extended":
            return cls.from_decimals([str(a) for a in obj["alphas"]])
        return cls(tuple(float(a) for a in obj["alphas"]))


def direction_value(alpha: DirectionVector, k: Sequence[int]) -> float:
    return alpha.value(k)


@dataclass(frozen=True)
class OrderedSupport:
    """A finite support indexed so the direction values strictly increase."""

    points: tuple[LatticePoint, ...]
    alpha: DirectionVector
    values: tuple[float, ...]
    eta: float
    norm: int

    @property
    def dims(self) -> int:
        return len(self.points[0])

    @property
    def count(self) -> int:
        return len(self.points)


def order_support(points: Iterable[Sequence[int]], alpha: DirectionVector) -> OrderedSupport:
    """Index a support set by increasing direction value.

    Raises TieDetectedError when two values are numerically
    indistinguishable: with gaps below TIE_TOLERANCE_REL (relative), or
    below EXTENDED_TRIGGER_REL without a decimal form to arbitrate, the
    rational-independence hypothesis is unverifiable at this precision.
    """
    seen: dict[LatticePoint, None] = {}
    for p in points:
        seen.setdefault(as_point(p), None)
    pts = list(seen)
    if not pts:
        raise ValueError("support set is empty")
    dims = len(pts[0])
    for p in pts:
        if len(p) != dims:
            raise DimensionMismatchError("support points have mixed dimensions")
    if dims != alpha.dims:
        raise DimensionMismatchError("support dimension does not match the direction")

    vals = [alpha.value(p) for p in pts]
    scale = 1.0 + max(abs(v) for v in vals)
    order = sorted(range(len(pts)), key=lambda i: vals[i])
    min_gap = math.inf
    for a, b in zip(order, order[1:]):
        min_gap = min(min_gap, vals[b] - vals[a])
    if len(pts) == 1:
        min_gap = math.inf

    if min_gap < EXTENDED_TRIGGER_REL * scale and alpha.decimals is not None:
        dvals = [alpha.value_decimal(p) for p in pts]
        order = sorted(range(len(pts)), key=lambda i: dvals[i])
        tiny = Decimal(1).scaleb(-45) * (1 + max(abs(d) for d in dvals))
        deta = None
        for a, b in zip(order, order[1:]):
            gap = dvals[b] - dvals[a]
            if gap <= tiny:
                raise TieDetectedError(
                    f"direction values of {pts[a]} and {pts[b]} coincide at 45+ digits"
                )
            deta = gap if deta is None else min(deta, gap)
        eta = float(deta) if deta is not None else math.inf
    elif min_gap < TIE_TOLERANCE_REL * scale:
        i = order[0]
        for a, b in zip(order, order[1:]):
            if vals[b] - vals[a] == min_gap:
                i, j = a, b
                break
        raise TieDetectedError(
            f"direction values of {pts[i]} and {pts[j]} differ by {min_gap:.3e} < tie tolerance"
        )
    else:
        eta = min_gap

    ordered_pts = tuple(pts[i] for i in order)
    ordered_vals = tuple(vals[i] for i in order)
    support_norm = max(norm_inf(p) for p in ordered_pts)
    return OrderedSupport(ordered_pts, alpha, ordered_vals, float(eta), support_norm)


# ---------------------------------------------------------------------------
# the nu function: shortest orthogonal integer vector in sup norm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NuCertificate:
    """A lattice point, its nu value, and a witness achieving it.

    Exhaustive enumeration of every shell below nu certifies minimality;
    the witness is the lexicographically smallest orthogonal vector on
    the winning shell after normalizing its leading sign positive.
    """

    a: LatticePoint
    nu: int
    witness: LatticePoint

    def __post_init__(self) -> None:
        if all(c == 0 for c in self.witness):
            raise ValueError("witness must be nonzero")
        if sum(x * y for x, y in zip(self.a, self.witness)) != 0:
            raise ValueError("witness must be orthogonal to a")
        if norm_inf(self.witness) != self.nu:
            raise ValueError("witness norm must equal nu")

    def to_json_obj(self) -> dict:
        return {"a": list(self.a), "nu": self.nu, "witness": list(self.witness)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "NuCertificate":
        return cls(as_point(obj["a"]), int(obj["nu"]), as_point(obj["witness"]))


def _shell_points(dims: int, radius: int) -> np.ndarray:
    """All integer vectors with sup norm exactly radius, each once.

    Decomposed by the first coordinate index attaining the radius, which
    makes the faces disjoint.
    """
    blocks = []
    for i in range(dims):
        axes = []
        for j in range(dims):
            if j < i:
                axes.append(np.arange(-(radius - 1), radius, dtype=np.int64))
            elif j == i:
                axes.append(np.array([-radius, radius], dtype=np.int64))
            else:
                axes.append(np.arange(-radius, radius + 1, dtype=np.int64))
        grids = np.meshgrid(*axes, indexing="ij")
        blocks.append(np.stack([g.ravel() for g in grids], axis=1))
    return np.concatenate(blocks, axis=0)


def _canonical_witness(candidates: np.ndarray) -> LatticePoint:
    lead = np.argmax(candidates != 0, axis=1)
    signs = np.sign(candidates[np.arange(len(candidates)), lead])
    normalized = candidates * signs[:, None]
    return tuple(int(x) for x in min(map(tuple, normalized)))


def min_orthogonal_norm(a: Sequence[int], shell_cap: int = NU_SHELL_CAP) -> NuCertificate:
    """nu(a): least sup norm of a nonzero integer vector orthogonal to a.

    Shells of radius 1, 2, ... are enumerated exhaustively, so the first
    hit certifies minimality. Candidates may be restricted to primitive
    vectors: dividing any witness by its coordinate gcd yields a shorter
    orthogonal vector, hence first hits are primitive anyway.
    """
    pt = as_point(a)
    if all(c == 0 for c in pt):
        raise ZeroVectorError("nu is undefined at the zero vector")
    arr = np.array(pt, dtype=np.int64)
    for radius in range(1, shell_cap + 1):
        shell = _shell_points(len(pt), radius)
        hits = shell[shell @ arr == 0]
        if len(hits) == 0:
            continue
        primitive = hits[np.gcd.reduce(np.abs(hits), axis=1) == 1]
        witness = _canonical_witness(primitive if len(primitive) else hits)
        return NuCertificate(pt, radius, witness)
    raise ShellCapExceededError(
        f"no orthogonal vector with sup norm <= {shell_cap}", cap=shell_cap
    )


def nu_exceeds(a: Sequence[int], bound: int) -> bool:
    """Whether nu(a) > bound, via exhaustive search of shells <= bound."""
    pt = as_point(a)
    if all(c == 0 for c in pt):
        raise ZeroVectorError("nu is undefined at the zero vector")
    arr = np.array(pt, dtype=np.int64)
    for radius in range(1, bound + 1):
        shell = _shell_points(len(pt), radius)
        if np.any(shell @ arr == 0):
            return False
    return True


@dataclass(frozen=True)
class DistinctnessReport:
    values: tuple[int, ...]
    hypothesis_holds: bool  # 2 * support norm < nu(a)
    distinct: bool


def check_distinct(points: Iterable[Sequence[int]], a: Sequence[int]) -> DistinctnessReport:
    """Integer values k . a over a support, with the distinctness guarantee.

    When twice the support norm is below nu(a) the values are provably
    distinct (a collision k . a = l . a would make k - l an orthogonal
    vector of sup norm at most twice the support norm); the guarantee is
    asserted. Without the hypothesis distinctness is merely reported.
    """
    seen: dict[LatticePoint, None] = {}
    for p in points:
        seen.setdefault(as_point(p), None)
    pts = list(seen)
    pt_a = as_point(a)
    values = tuple(sum(x * y for x, y in zip(p, pt_a)) for p in pts)
    support_norm = max(norm_inf(p) for p in pts)
    hypothesis = nu_exceeds(pt_a, 2 * support_norm)
    distinct = len(set(values)) == len(values)
    if hypothesis and not distinct:
        raise MahlerboundError(
            "distinctness guarantee violated despite 2*norm(S) < nu(a); this is a bug"
        )
    return DistinctnessReport(values, hypothesis, distinct)


# ---------------------------------------------------------------------------
# Dirichlet approximation and admissible specialization directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirichletStep:
    q: int
    b: LatticePoint
    quality: float
    met_bound: bool

    def to_json_obj(self) -> dict:
        return {"q": self.q, "b": list(self.b), "quality": self.quality, "met_bound": self.met_bound}


def dirichlet_step(alpha: DirectionVector, big_q: int) -> DirichletStep:
    """First q <= Q with every q*alpha_m within (Q+1)^(-1/M) of an integer.

    Existence is guaranteed for every Q; if floating point somehow never
    meets the bound the best q found is returned with met_bound False.
    """
    if big_q < 1:
        raise ValueError("Q must be a positive integer")
    dims = alpha.dims
    bound = (big_q + 1) ** (-1.0 / dims)
    alphas = np.array(alpha.alphas)
    best_q, best_quality, best_b = 0, math.inf, None
    chunk = 1 << 16
    for lo in range(1, big_q + 1, chunk):
        qs = np.arange(lo, min(lo + chunk, big_q + 1), dtype=np.int64)
        prods = qs[:, None] * alphas[None, :]
        near = np.rint(prods)
        quality = np.abs(prods - near).max(axis=1)
        hits = np.nonzero(quality <= bound)[0]
        if len(hits):
            i = int(hits[0])
            return DirichletStep(
                int(qs[i]), tuple(int(x) for x in near[i]), float(quality[i]), True
            )
        i = int(np.argmin(quality))
        if quality[i] < best_quality:
            best_q, best_quality, best_b = int(qs[i]), float(quality[i]), near[i]
    return DirichletStep(best_q, tuple(int(x) for x in best_b), best_quality, False)


def dirichlet_set(alpha: DirectionVector, q_cap: int) -> Iterator[tuple[int, LatticePoint, float]]:
    """All q <= q_cap with every q*alpha_m within (q+1)^(-1/M) of an integer.

    Yields (q, rounded lattice point, quality) in increasing q.
    """
    dims = alpha.dims
    alphas = np.array(alpha.alphas)
    chunk = 1 << 16
    for lo in range(1, q_cap + 1, chunk):
        qs = np.arange(lo, min(lo + chunk, q_cap + 1), dtype=np.int64)
        prods = qs[:, None] * alphas[None, :]
        near = np.rint(prods)
        quality = np.abs(prods - near).max(axis=1)
        bound = (qs + 1.0) ** (-1.0 / dims)
        for i in np.nonzero(quality <= bound)[0]:
            yield int(qs[i]), tuple(int(x) for x in near[i]), float(quality[i])


def orders_like(ordered: OrderedSupport, a: Sequence[int]) -> bool:
    """Whether the integer values k . a increase along the alpha-ordering."""
    pt = as_point(a)
    dots = [sum(x * y for x, y in zip(p, pt)) for p in ordered.points]
    return all(u < v for u, v in zip(dots, dots[1:]))


def membership_certificate(
    ordered: OrderedSupport, a: Sequence[int], shell_cap: int = NU_SHELL_CAP
) -> NuCertificate | None:
    """Certificate for a belonging to the admissible direction set.

    Membership means nu(a) exceeds twice the support norm and a orders
    the support exactly as alpha does; None when either test fails.
    """
    pt = as_point(a)
    if all(c == 0 for c in pt):
        return None
    if not orders_like(ordered, pt):
        return None
    if not nu_exceeds(pt, 2 * ordered.norm):
        return None
    return min_orthogonal_norm(pt, shell_cap)


@dataclass(frozen=True)
class PointSearchResult:
    """Certificates found by a direction-point generator.

    exhausted is set when the scan hit its cap before finding the
    requested number of points; shell_capped when a candidate's nu ran
    past the shell cap (retry with a larger cap to keep it).
    """

    certificates: tuple[NuCertificate, ...]
    qs: tuple[int, ...]
    exhausted: bool
    shell_capped: bool = False

    def to_json_obj(self) -> dict:
        return {
            "certificates": [c.to_json_obj() for c in self.certificates],
            "qs": list(self.qs),
            "exhausted": self.exhausted,
            "shell_capped": self.shell_capped,
        }


def _collect_candidates(
    ordered: OrderedSupport,
    candidates: Iterator[tuple[int, LatticePoint]],
    count: int,
    shell_cap: int,
) -> PointSearchResult:
    certs: list[NuCertificate] = []
    qs: list[int] = []
    seen: set[LatticePoint] = set()
    shell_capped = False
    for q, pt in candidates:
        if pt in seen:
            continue
        seen.add(pt)
        try:
            cert = membership_certificate(ordered, pt, shell_cap)
        except ShellCapExceededError:
            shell_capped = True
            continue
        if cert is None:
            continue
        certs.append(cert)
        qs.append(q)
        if len(certs) >= count:
            break
    order = sorted(range(len(certs)), key=lambda i: (certs[i].nu, qs[i]))
    return PointSearchResult(
        tuple(certs[i] for i in order),
        tuple(qs[i] for i in order),
        exhausted=len(certs) < count,
        shell_capped=shell_capped,
    )


def generate_dirichlet_points(
    ordered: OrderedSupport,
    count: int,
    q_cap: int = Q_CAP,
    shell_cap: int = NU_SHELL_CAP,
) -> PointSearchResult:
    """Admissible directions from Dirichlet denominators, sorted by nu.

    Rounds q * alpha over the Dirichlet set of q's and keeps the points
    that pass the full membership test; every returned certificate is
    verified directly rather than through the asymptotic guarantee that
    all large enough q work.
    """
    if count < 1:
        raise ValueError("count must be positive")
    candidates = ((q, b) for q, b, _ in dirichlet_set(ordered.alpha, q_cap))
    return _collect_candidates(ordered, candidates, count, shell_cap)


def generate_scaled_points(
    ordered: OrderedSupport,
    count: int,
    shell_cap: int = NU_SHELL_CAP,
) -> PointSearchResult:
    """Admissible directions from rounding C * alpha along doubling C.

    Alternative generator with the same membership verification; scales
    stop before any coordinate could overflow the lattice coordinate cap.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return PointSearchResult((), (), exhausted=False)
    max_alpha = max(abs(a) for a in ordered.alpha.alphas)
    scale_cap = int(COORD_CAP / max(max_alpha, 1e-12))

    def scan() -> Iterator[tuple[int, LatticePoint]]:
        scale = 1
        while scale <= scale_cap:
            pt = tuple(int(round(scale * a)) for a in ordered.alpha.alphas)
            yield scale, pt
            scale *= 2

    return _collect_candidates(ordered, scan(), count, shell_cap)


__all__ = [
    "LatticePoint",
    "as_point",
    "norm_inf",
    "DirectionVector",
    "direction_value",
    "OrderedSupport",
    "order_support",
    "NuCertificate",
    "min_orthogonal_norm",
    "nu_exceeds",
    "DistinctnessReport",
    "check_distinct",
    "DirichletStep",
    "dirichlet_step",
    "dirichlet_set",
    "orders_like",
    "membership_certificate",
    "PointSearchResult",
    "generate_dirichlet_points",
    "generate_scaled_points",
]
