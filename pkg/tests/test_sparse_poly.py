import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlerbound.errors import ExponentCapError, ZeroPolynomialError
from mahlerbound.sparse_poly import EXPONENT_CAP, SparseUniPoly, binomial_power


def poly(*pairs):
    return SparseUniPoly(tuple((m, complex(c)) for m, c in pairs))


# --- construction invariants -------------------------------------------------


def test_rejects_empty():
    with pytest.raises(ZeroPolynomialError):
        SparseUniPoly(())


def test_rejects_unsorted_exponents():
    with pytest.raises(ValueError):
        poly((3, 1.0), (1, 1.0))


def test_rejects_duplicate_exponents():
    with pytest.raises(ValueError):
        poly((2, 1.0), (2, 1.0))


def test_rejects_zero_coefficient():
    with pytest.raises(ValueError):
        poly((0, 0.0), (1, 1.0))


def test_rejects_nan_coefficient():
    with pytest.raises(ValueError):
        poly((0, complex(float("nan"), 0.0)))


def test_rejects_negative_exponent():
    with pytest.raises(ValueError):
        poly((-1, 1.0))


def test_rejects_exponent_over_cap():
    with pytest.raises(ExponentCapError):
        poly((EXPONENT_CAP + 1, 1.0))


# --- evaluate ----------------------------------------------------------------


def test_evaluate_all_characters_at_zero():
    assert poly((0, 1.0), (1, 1.0)).evaluate(0.0) == pytest.approx(2.0)


def test_evaluate_half_turn():
    assert abs(poly((0, 1.0), (1, 1.0)).evaluate(0.5)) == pytest.approx(0.0, abs=1e-15)


def test_evaluate_full_period():
    # e(3 * 1/3) = 1, so 1 + 2 z^3 evaluates to 3
    v = poly((0, 1.0), (3, 2.0)).evaluate(1.0 / 3.0)
    assert v == pytest.approx(3.0, abs=1e-14)


def test_evaluate_huge_exponent_phase_is_exact():
    # m * t reduced with integer arithmetic: t = 0.5 kills odd exponents
    p = poly((0, 1.0), (2**40 - 1, 1.0))
    assert abs(p.evaluate(0.5)) == pytest.approx(0.0, abs=1e-12)


# --- derivative --------------------------------------------------------------


def test_derivative_power_rule():
    assert poly((0, 1.0), (2, 1.0)).derivative().terms == ((1, 2.0 + 0.0j),)


def test_derivative_of_constant_errors():
    with pytest.raises(ZeroPolynomialError):
        poly((0, 5.0)).derivative()


def test_derivative_two_terms():
    d = poly((1, 3.0), (4, 5.0)).derivative()
    assert d.terms == ((0, 3.0 + 0.0j), (3, 20.0 + 0.0j))


# --- reverse / normalize -----------------------------------------------------


def test_reverse_simple():
    assert poly((0, 1.0), (3, 2.0)).reverse().terms == ((0, 2.0 + 0.0j), (3, 1.0 + 0.0j))


def test_reverse_swaps_end_coefficients():
    r = poly((0, 4.0), (7, 9.0)).reverse()
    assert r.terms == ((0, 9.0 + 0.0j), (7, 4.0 + 0.0j))


def test_normalize_shifts_to_zero():
    assert poly((5, 1.0), (7, 1.0)).normalize().terms == ((0, 1.0 + 0.0j), (2, 1.0 + 0.0j))


def test_normalize_monomial():
    assert poly((100, 4.0)).normalize().terms == ((0, 4.0 + 0.0j),)


def test_normalize_identity_when_low_is_zero():
    p = poly((0, 1.0), (1, 1.0))
    assert p.normalize() is p


# --- multiply ----------------------------------------------------------------


def test_multiply_difference_of_squares():
    prod = poly((0, 1.0), (1, 1.0)) * poly((0, 1.0), (1, -1.0))
    assert prod.terms == ((0, 1.0 + 0.0j), (2, -1.0 + 0.0j))


def test_multiply_square():
    prod = poly((0, 1.0), (1, 1.0)) * poly((0, 1.0), (1, 1.0))
    assert prod.terms == ((0, 1 + 0j), (1, 2 + 0j), (2, 1 + 0j))


def test_multiply_identity():
    p = poly((0, 2.0), (3, -1.5))
    assert (p * SparseUniPoly.constant(1.0)).terms == p.terms


def test_multiply_drops_cancelled_terms():
    # (1 + az)(1 - az): the z term cancels exactly
    a = 1e6
    prod = poly((0, 1.0), (1, a)) * poly((0, 1.0), (1, -a))
    assert prod.exponents() == (0, 2)


# --- serialization -----------------------------------------------------------


def test_json_roundtrip():
    p = poly((0, complex(1.5, -2.0)), (7, complex(0.0, 3.0)))
    assert SparseUniPoly.from_json(p.to_json()).terms == p.terms


def test_binomial_power_terms():
    p = binomial_power(4)
    assert [c.real for _, c in p.terms] == [1, 4, 6, 4, 1]
    m = binomial_power(3, -1)
    assert [c.real for _, c in m.terms] == [-1, 3, -3, 1]


# --- property tests ----------------------------------------------------------

coeff_st = st.complex_numbers(
    min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False
)
poly_st = st.builds(
    lambda exps, coeffs: SparseUniPoly(tuple(zip(sorted(exps), coeffs))),
    st.sets(st.integers(min_value=0, max_value=500), min_size=1, max_size=8).map(sorted),
    st.lists(coeff_st, min_size=8, max_size=8),
)


@settings(max_examples=60, deadline=None)
@given(poly_st, st.floats(min_value=0.0, max_value=1.0, exclude_max=True))
def test_normalize_preserves_modulus(p, t):
    assert abs(p.normalize().evaluate(t)) == pytest.approx(abs(p.evaluate(t)), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(poly_st)
def test_reverse_preserves_coefficient_multiset(p):
    assert sorted(p.coefficients(), key=lambda c: (c.real, c.imag)) == sorted(
        p.reverse().coefficients(), key=lambda c: (c.real, c.imag)
    )


@settings(max_examples=60, deadline=None)
@given(poly_st)
def test_reverse_is_an_involution_on_normalized(p):
    q = p.normalize()
    assert q.reverse().reverse().terms == q.terms


@settings(max_examples=60, deadline=None)
@given(poly_st)
def test_derivative_exponents_shift_down(p):
    if p.max_exponent == 0:
        return
    inputs = set(p.exponents())
    for m in p.derivative().exponents():
        assert m + 1 in inputs


@settings(max_examples=40, deadline=None)
@given(poly_st, poly_st)
def test_multiply_degree_law(p, q):
    assert (p * q).max_exponent == p.max_exponent + q.max_exponent
