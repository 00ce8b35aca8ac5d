"""Independent reference computations used by the tests.

Exact field elements with rational coefficients and exponents in (1/2)Z are
modelled as Laurent polynomials in s = eps^(1/2), stored as {int: Fraction}.
Signs are decided by evaluating at a tiny rational s, where the lowest term
dominates for the bounded coefficients the strategies produce.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence

from hypothesis import strategies as st

from posrep.field import FieldElem

Poly = Dict[int, Fraction]

TINY_S = Fraction(1, 10**12)


def poly_of(x: FieldElem) -> Poly:
    """Exact element with rational coefficients -> polynomial in s."""
    assert x.trunc is None
    out = {}
    for e, c in x.terms:
        k = e * 2
        assert k.denominator == 1
        out[int(k)] = c.as_fraction()
    return out


def elem_of(p: Poly) -> FieldElem:
    return FieldElem([(Fraction(k, 2), c) for k, c in p.items() if c])


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def poly_eval(p: Poly, s: Fraction = TINY_S) -> Fraction:
    return sum((c * s**k for k, c in p.items()), Fraction(0))


def poly_sign(p: Poly) -> int:
    v = poly_eval(p)
    return (v > 0) - (v < 0)


# -- strategies ---------------------------------------------------------------

small_q = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero_q = small_q.filter(lambda q: q != 0)


@st.composite
def exact_elems(draw, min_half_exp=-4, max_half_exp=8, max_terms=5, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    ks = draw(st.lists(st.integers(min_half_exp, max_half_exp), min_size=n, max_size=n, unique=True))
    cs = draw(st.lists(nonzero_q, min_size=n, max_size=n))
    return FieldElem([(Fraction(k, 2), c) for k, c in zip(ks, cs)])


@st.composite
def nonzero_exact(draw, **kw):
    return draw(exact_elems(nonzero=True, **kw))


@st.composite
def rational_matrix(draw, d, lo=-5, hi=5):
    return [[draw(st.integers(lo, hi)) for _ in range(d)] for _ in range(d)]


# -- linear algebra over Fraction --------------------------------------------

def frac_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def frac_minors_upper(u: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """All minors rows I, cols J with I <= J entrywise (those not forced to vanish)."""
    d = len(u)
    vals = []
    for k in range(1, d + 1):
        for rows in combinations(range(d), k):
            for cols in combinations(range(d), k):
                if all(r <= c for r, c in zip(rows, cols)):
                    vals.append(frac_det([[u[r][c] for c in cols] for r in rows]))
    return vals


def frac_tp_class(u) -> str:
    vals = frac_minors_upper(u)
    if any(v < 0 for v in vals):
        return "not_positive"
    if any(v == 0 for v in vals):
        return "boundary"
    return "totally_positive"
