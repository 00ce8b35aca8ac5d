from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import elem_of, exact_elems, nonzero_exact, poly_add, poly_mul, poly_of, poly_sign

from posrep.errors import NotBig, NotNested, PrecisionExhausted, RamificationCapExceeded, ZeroInput
from posrep.field import (
    EPS,
    ONE,
    ZERO,
    CoeffValue,
    FieldElem,
    absolute,
    compare,
    from_json,
    is_big,
    is_infinitesimal,
    local_settings,
    log_abs_base,
    nested_interval_witness,
    parse_field,
    sign,
    sqrt,
    to_json,
    valuation,
)

eps = FieldElem.eps


def agree(x: FieldElem, y: FieldElem) -> bool:
    """Equal on every exponent both know."""
    return not (x - y).terms


# -- examples -----------------------------------------------------------------

def test_addition_examples():
    assert ((1 + EPS) + (-1)).same_as(EPS)
    s = eps(Fraction(1, 2)) + EPS
    assert s.ramification == 2 and len(s.terms) == 2
    x = (1 + EPS).with_trunc(8)
    y = (2 + EPS**2).with_trunc(4)
    assert (x + y).trunc == 4


def test_multiplication_and_inverse_examples():
    assert ((1 + EPS) * (1 - EPS)).same_as(1 - EPS**2)
    assert EPS.inverse().same_as(eps(-1))
    inv = (1 - EPS).inverse()
    assert inv.trunc == 16
    assert [c.as_fraction() for _, c in inv.terms] == [1] * 16
    assert agree(inv * (1 - EPS), ONE)


def test_sqrt_examples():
    assert sqrt(4).same_as(FieldElem.rational(2))
    assert sqrt(EPS).same_as(eps(Fraction(1, 2)))
    r = sqrt(1 - EPS**2)
    coeffs = {e: c.as_fraction() for e, c in r.terms}
    assert coeffs[0] == 1 and coeffs[2] == Fraction(-1, 2) and coeffs[4] == Fraction(-1, 8)
    assert agree(r * r, 1 - EPS**2)
    # sympy series as an independent oracle
    t = sympy.symbols("t")
    ser = sympy.series(sympy.sqrt(1 - t**2), t, 0, 16).removeO()
    ref = {int(k[0]): Fraction(str(v)) for k, v in sympy.Poly(ser, t).terms()}
    assert {int(e): c for e, c in coeffs.items()} == ref


def test_sqrt_of_two_enters_tower():
    r = sqrt(2)
    assert r.radicands == (2,)
    assert (r * r).same_as(FieldElem.rational(2))
    assert sqrt(8).same_as(2 * r)


def test_sign_examples():
    assert sign(EPS - 10**9 * EPS**2) == 1
    assert compare(EPS, Fraction(1, 1000000)) < 0
    assert absolute(-EPS).same_as(EPS)
    assert sign(parse_field("sqrt(2) - 7/5")) == 1
    assert sign(parse_field("sqrt(3) + sqrt(2) - sqrt(10)")) == -1


def test_valuation_examples():
    assert valuation(EPS**2 + EPS**3) == 2
    assert is_big(1 / EPS)
    assert not is_infinitesimal(3)
    assert valuation(ZERO) == float("inf")


def test_log_abs_examples():
    assert log_abs_base(EPS, 1 / EPS) == -1
    assert log_abs_base(1 + EPS, 1 / EPS) == 0
    assert log_abs_base(EPS**2 + EPS**3, 1 / EPS) == -2
    with pytest.raises(NotBig):
        log_abs_base(EPS, 2)
    with pytest.raises(ZeroInput):
        log_abs_base(0, 1 / EPS)


def test_nested_interval_examples():
    assert nested_interval_witness([(0, 1), (EPS, 1 - EPS)]) == Fraction(1, 2)
    assert nested_interval_witness([(Fraction(-1, k), Fraction(1, k)) for k in range(1, 6)]) == 0
    with pytest.raises(NotNested):
        nested_interval_witness([(0, 1), (-1, 2)])


def test_precision_exhausted():
    x = (1 / (1 - EPS)) - (1 + EPS + EPS**2)
    with local_settings(precision=2):
        y = (1 / (1 - EPS)) - (1 + EPS)
        with pytest.raises(PrecisionExhausted):
            y.sign()
    assert x.sign() == 1


def test_ramification_cap():
    with local_settings(ramification_cap=2):
        with pytest.raises(RamificationCapExceeded):
            sqrt(eps(Fraction(1, 2)))


def test_parse_and_json_round_trip():
    x = parse_field("1 - eps^2/2 + sqrt(2)*eps^(3/2) + 3/eps")
    assert from_json(to_json(x)).same_as(x)
    y = (1 / (1 - EPS))
    assert from_json(to_json(y)).same_as(y)
    assert str(parse_field("O(eps^3) + 1")) == "1 + O(eps^(3))"


def test_trunc_setting_controls_series():
    with local_settings(precision=5):
        assert (1 / (1 - EPS)).trunc == 5


# -- properties -----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(exact_elems(), exact_elems())
def test_add_mul_match_polynomial_oracle(a, b):
    assert (a + b).same_as(elem_of(poly_add(poly_of(a), poly_of(b))))
    assert (a * b).same_as(elem_of(poly_mul(poly_of(a), poly_of(b))))


@settings(max_examples=150, deadline=None)
@given(exact_elems(), exact_elems(), exact_elems())
def test_ring_axioms(a, b, c):
    assert ((a + b) + c).same_as(a + (b + c))
    assert ((a * b) * c).same_as(a * (b * c))
    assert (a * (b + c)).same_as(a * b + a * c)
    assert (a + b).same_as(b + a) and (a * b).same_as(b * a)
    assert (a - a).same_as(ZERO) and (a * 1).same_as(a)


@settings(max_examples=200, deadline=None)
@given(exact_elems())
def test_sign_matches_evaluation(a):
    assert a.sign() == poly_sign(poly_of(a))


@settings(max_examples=150, deadline=None)
@given(exact_elems(), exact_elems(), exact_elems())
def test_order_axioms(a, b, c):
    # totality and trichotomy
    assert (a < b) + (a == b) + (a > b) == 1
    if a <= b:
        assert a + c <= b + c
    if a > 0 and b > 0:
        assert a * b > 0
    if a < b and b < c:
        assert a < c
    assert a * a >= 0


@settings(max_examples=150, deadline=None)
@given(nonzero_exact(), nonzero_exact())
def test_valuation_additive(a, b):
    assert valuation(a * b) == valuation(a) + valuation(b)
    s = a + b
    if s.sign() != 0:
        assert valuation(s) >= min(valuation(a), valuation(b))


@settings(max_examples=100, deadline=None)
@given(nonzero_exact(max_terms=3))
def test_inverse_round_trip(a):
    assert agree(a * a.inverse(), ONE)


@settings(max_examples=100, deadline=None)
@given(nonzero_exact(max_terms=3))
def test_sqrt_round_trip(a):
    a2 = a * a
    r = sqrt(a2)
    assert r.sign() == 1
    assert agree(r * r, a2)
    assert agree(r, absolute(a))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 30), min_size=1, max_size=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_radical_sign_matches_sympy(ns, qs):
    expr_s = sum(q * sympy.sqrt(n) for q, n in zip(qs, ns)) + qs[-1]
    val = sum((FieldElem.monomial(CoeffValue.sqrt_of_int(n).scale(Fraction(q)), 0) for q, n in zip(qs, ns)), ZERO)
    val = val + qs[-1]
    ref = sympy.sign(expr_s)
    assert val.sign() == int(ref)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_nested_interval_witness_random(data):
    n = data.draw(st.integers(1, 8))
    lo, hi = Fraction(-1), Fraction(1)
    family = []
    for _ in range(n):
        a = data.draw(st.fractions(min_value=0, max_value=1, max_denominator=20))
        b = data.draw(st.fractions(min_value=0, max_value=1, max_denominator=20))
        a, b = sorted((a, b))
        new_lo = lo + (hi - lo) * a
        new_hi = lo + (hi - lo) * b
        k = data.draw(st.integers(0, 3))
        if k:
            # shrink by an infinitesimal amount
            new_lo = new_lo + eps(k) if new_lo < new_hi else new_lo
            new_hi = new_hi - eps(k) if new_lo < new_hi else new_hi
        lo, hi = new_lo, new_hi
        family.append((lo, hi))
    w = nested_interval_witness(family)
    for a, b in family:
        assert a <= w <= b


@settings(max_examples=60, deadline=None)
@given(nonzero_exact(), st.integers(1, 4))
def test_log_abs_monomial_base(a, k):
    assert log_abs_base(a, eps(-k)) == Fraction(-valuation(a), k)
