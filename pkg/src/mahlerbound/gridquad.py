"""Shared machinery for log-integrand averaging on doubling uniform grids.

Both measure engines (circle and torus) average log|p| over uniform grids
whose size doubles until two consecutive estimates agree. Two details are
shared here:

* Samples sit at (j + offset)/G with a fixed irrational offset per axis.
  A plain j/G grid can lock onto exponent patterns sharing powers of two
  with G, making consecutive levels agree on a wrong value; the offset
  removes that failure mode while keeping the spacing uniform.
* The integrand has integrable log singularities when the polynomial
  vanishes on the domain. Their leading contribution to the grid mean
  decays like 1/G, so alongside the plain estimates I_G a Richardson
  pass R_G = 2*I_{2G} - I_G is tracked; whichever sequence stabilizes
  first wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

# Per-axis sample offsets: golden section for axis 0, then sqrt(2)-1 and
# sqrt(3)-1 so that no two axes share an offset.
AXIS_OFFSETS = (
    (math.sqrt(5.0) - 1.0) / 2.0,
    math.sqrt(2.0) - 1.0,
    math.sqrt(3.0) - 1.0,
)

# 80-bit fixed-point image of each offset, for exact reduction of k*offset
# modulo 1 when k is a huge integer (float multiplication would lose the
# fractional part entirely around k ~ 2**40).
_FIX_BITS = 80
_FIX_MOD = 1 << _FIX_BITS
_FIX_OFFSETS = tuple(round(g * _FIX_MOD) for g in AXIS_OFFSETS)


def frac_offset_multiple(k: int, axis: int = 0) -> float:
    """Fractional part of k * AXIS_OFFSETS[axis], exact to ~2**-80."""
    return ((k * _FIX_OFFSETS[axis]) % _FIX_MOD) / _FIX_MOD


@dataclass(frozen=True)
class LadderOutcome:
    """Result of a doubling ladder run (log-of-measure scale)."""

    log_estimate: float
    gap_log: float
    converged: bool
    extrapolated: bool
    levels: int
    grid_final: int


def converge_doubling(
    eval_level: Callable[[int], float],
    start: int,
    cap: int,
    tol: float,
) -> LadderOutcome:
    """Run eval_level on grids start, 2*start, ... until estimates settle.

    Convergence means two consecutive plain estimates, or two consecutive
    Richardson-extrapolated estimates, differ by less than tol. When the
    cap is reached first the best (smallest-gap) estimate is returned with
    converged=False; the caller decides whether that is an error.
    """
    plain: list[float] = []
    extrap: list[float] = []
    grid = start
    grid_last = start
    while grid <= cap:
        value = eval_level(grid)
        plain.append(value)
        grid_last = grid
        if len(plain) >= 2:
            gap_plain = abs(plain[-1] - plain[-2])
            extrap.append(2.0 * plain[-1] - plain[-2])
            if gap_plain < tol:
                # Report the extrapolated value: it agrees with the plain one
                # to within gap_plain and knocks out the leading 1/G error of
                # boundary-zero integrands.
                return LadderOutcome(extrap[-1], gap_plain, True, True, len(plain), grid)
            if len(extrap) >= 2:
                gap_extrap = abs(extrap[-1] - extrap[-2])
                if gap_extrap < tol:
                    return LadderOutcome(extrap[-1], gap_extrap, True, True, len(plain), grid)
        grid *= 2

    if len(plain) < 2:
        return LadderOutcome(plain[-1], math.inf, False, False, len(plain), grid_last)
    gap_plain = abs(plain[-1] - plain[-2])
    gap_extrap = abs(extrap[-1] - extrap[-2]) if len(extrap) >= 2 else math.inf
    if gap_extrap <= gap_plain:
        return LadderOutcome(extrap[-1], gap_extrap, False, True, len(plain), grid_last)
    return LadderOutcome(plain[-1], gap_plain, False, False, len(plain), grid_last)
