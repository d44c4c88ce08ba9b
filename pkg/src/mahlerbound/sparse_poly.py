"""Sparse univariate polynomials with complex coefficients.

A polynomial is stored as its monomial list: strictly increasing
nonnegative integer exponents paired with nonzero complex coefficients.
Writing p(z) = c_0 z^{m_0} + ... + c_N z^{m_N}, the number of terms is
N + 1 and the exponent gaps may be enormous; nothing here ever expands
to a dense coefficient vector.

All operations are pure functions on immutable values, so instances can
be shared freely between threads.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ExponentCapError, ZeroPolynomialError

# Exponents above this are rejected outright: an explicit failure beats a
# silent overflow once a downstream engine densifies the polynomial.
EXPONENT_CAP = 2**40

# Product terms whose magnitude falls below this fraction of the largest
# accumulated term are treated as exact cancellations and dropped.
CANCELLATION_EPS = 1e-14


def _validated_coeff(c: complex) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"coefficient must be finite, got {c!r}")
    return c


def unit_phase(t: float) -> complex:
    """e(t) = exp(2*pi*i*t), the character parameterizing the unit circle."""
    return cmath.exp(complex(0.0, 2.0 * math.pi * t))


@dataclass(frozen=True)
class SparseUniPoly:
    """A nonzero polynomial given by (exponent, coefficient) monomials.

    Invariants enforced at construction:

    * at least one term,
    * exponents strictly increasing, nonnegative integers below 2**40,
    * every coefficient nonzero and finite.
    """

    terms: tuple[tuple[int, complex], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ZeroPolynomialError("a polynomial needs at least one term")
        cleaned = []
        prev = -1
        for exp, coeff in self.terms:
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"exponent must be an int, got {exp!r}")
            if exp < 0:
                raise ValueError(f"exponent must be nonnegative, got {exp}")
            if exp > EXPONENT_CAP:
                raise ExponentCapError(f"exponent {exp} exceeds cap {EXPONENT_CAP}")
            if exp <= prev:
                raise ValueError("exponents must be strictly increasing")
            coeff = _validated_coeff(coeff)
            if abs(coeff) == 0.0:
                raise ValueError(f"zero coefficient stored at exponent {exp}")
            cleaned.append((exp, coeff))
            prev = exp
        object.__setattr__(self, "terms", tuple(cleaned))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, complex]]) -> "SparseUniPoly":
        """Build from unsorted (exponent, coefficient) pairs, merging repeats."""
        acc: dict[int, complex] = {}
        for exp, coeff in pairs:
            acc[exp] = acc.get(exp, 0.0) + complex(coeff)
        kept = [(m, c) for m, c in sorted(acc.items()) if abs(c) > 0.0]
        if not kept:
            raise ZeroPolynomialError("all terms vanished")
        return cls(tuple(kept))

    @classmethod
    def constant(cls, c: complex) -> "SparseUniPoly":
        return cls(((0, complex(c)),))

    @classmethod
    def from_dense(cls, coeffs: Iterable[complex], *, drop_below: float = 0.0) -> "SparseUniPoly":
        """Build from a dense ascending coefficient list, skipping (near-)zeros."""
        pairs = []
        coeffs = [complex(c) for c in coeffs]
        floor = drop_below * max((abs(c) for c in coeffs), default=0.0)
        for m, c in enumerate(coeffs):
            if abs(c) > floor:
                pairs.append((m, c))
        if not pairs:
            raise ZeroPolynomialError("dense coefficient list is zero")
        return cls(tuple(pairs))

    # -- basic views -------------------------------------------------------

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    @property
    def min_exponent(self) -> int:
        return self.terms[0][0]

    @property
    def max_exponent(self) -> int:
        return self.terms[-1][0]

    def exponents(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.terms)

    def coefficients(self) -> tuple[complex, ...]:
        return tuple(c for _, c in self.terms)

    @property
    def leading_coeff(self) -> complex:
        return self.terms[-1][1]

    def coeff_scale(self) -> float:
        """Sum of coefficient magnitudes; bounds |p| on the unit circle."""
        return math.fsum(abs(c) for _, c in self.terms)

    # -- operations --------------------------------------------------------

    def evaluate(self, t: float) -> complex:
        """Value of sum c_n e(m_n t) at a point t of the circle R/Z.

        The fractional part of m*t is reduced with exact integer
        arithmetic on the binary representation of t, so huge exponents
        do not wash out the phase. Terms are summed in increasing
        exponent order.
        """
        num, den = float(t % 1.0).as_integer_ratio()
        total = 0.0 + 0.0j
        for m, c in self.terms:
            total += c * unit_phase(((m * num) % den) / den)
        return total

    def derivative(self) -> "SparseUniPoly":
        """Termwise power rule; the exponent-zero term is dropped."""
        out = [(m - 1, m * c) for m, c in self.terms if m > 0]
        if not out:
            raise ZeroPolynomialError("derivative of a constant is identically zero")
        return SparseUniPoly(tuple(out))

    def reverse(self) -> "SparseUniPoly":
        """Coefficient-reversing involution z^{m_N} p(1/z)."""
        top = self.max_exponent
        return SparseUniPoly(tuple((top - m, c) for m, c in reversed(self.terms)))

    def normalize(self) -> "SparseUniPoly":
        """Shift exponents down so the lowest is zero (same Mahler measure)."""
        low = self.min_exponent
        if low == 0:
            return self
        return SparseUniPoly(tuple((m - low, c) for m, c in self.terms))

    def multiply(self, other: "SparseUniPoly") -> "SparseUniPoly":
        """Product polynomial with cancellation-aware term dropping.

        Coefficients that cancel to below CANCELLATION_EPS relative to the
        largest accumulated term are removed so the sparse representation
        stays sound under floating-point cancellation.
        """
        acc: dict[int, complex] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                e = m1 + m2
                acc[e] = acc.get(e, 0.0) + c1 * c2
        top = max(abs(c) for c in acc.values())
        kept = [(m, c) for m, c in sorted(acc.items()) if abs(c) >= CANCELLATION_EPS * top]
        if not kept:
            raise ZeroPolynomialError("all product terms cancelled")
        return SparseUniPoly(tuple(kept))

    def __mul__(self, other: "SparseUniPoly") -> "SparseUniPoly":
        return self.multiply(other)

    def scale(self, c: complex) -> "SparseUniPoly":
        return SparseUniPoly(tuple((m, c * coeff) for m, coeff in self.terms))

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"terms": [[m, [c.real, c.imag]] for m, c in self.terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SparseUniPoly":
        terms = tuple((int(m), complex(re, im)) for m, (re, im) in obj["terms"])
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "SparseUniPoly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        def mono(m: int, c: complex) -> str:
            base = f"({c.real:.6g}{c.imag:+.6g}j)" if c.imag else f"{c.real:.6g}"
            if m == 0:
                return base
            return f"{base}*z^{m}"

        return " + ".join(mono(m, c) for m, c in self.terms)


def binomial_power(n: int, sign: int = 1) -> SparseUniPoly:
    """(z + sign)^n expanded; the equality family for the coefficient bounds."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return SparseUniPoly(tuple((k, complex(math.comb(n, k) * sign ** (n - k))) for k in range(n + 1)))
