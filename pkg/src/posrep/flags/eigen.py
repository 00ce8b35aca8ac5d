"""Eigenvalues, attracting/repelling flags and collar quantities in SL_d."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from ..errors import ComplexEigenvalues, NotFactorable, NotWeaklyProximal
from ..field import ONE, FieldElem
from ..linalg import Matrix, as_matrix, det, identity, kernel_vector, mat_sub, mat_scale, trace
from .flag import FullFlag
from ..linalg import from_columns


@dataclass(frozen=True)
class ProxData:
    eigenvalues: Tuple[FieldElem, ...]
    gplus: FullFlag
    gminus: FullFlag
    eigenvectors: Tuple[Tuple[FieldElem, ...], ...]


def _is_upper(m: Matrix) -> bool:
    return all(m[i][j].sign() == 0 for i in range(len(m)) for j in range(i))


def _is_lower(m: Matrix) -> bool:
    return all(m[i][j].sign() == 0 for i in range(len(m)) for j in range(i + 1, len(m)))


def _quadratic_roots(b: FieldElem, c: FieldElem) -> List[FieldElem]:
    """Real roots of t^2 + b t + c."""
    disc = b * b - 4 * c
    s = disc.sign()
    if s < 0:
        raise ComplexEigenvalues("pair of complex conjugate eigenvalues")
    r = disc.sqrt()
    return [(-b + r) / 2, (-b - r) / 2]


def _rational_charpoly_roots(m: Matrix) -> List[FieldElem]:
    import sympy

    if not all(x.is_rational_constant() for row in m for x in row):
        raise NotFactorable("characteristic polynomial has non-rational coefficients")
    t = sympy.Symbol("t")
    sm = sympy.Matrix([[sympy.Rational(x.as_fraction().numerator, x.as_fraction().denominator) for x in row] for row in m])
    poly = sympy.Poly(sm.charpoly(t).as_expr(), t)
    roots: List[FieldElem] = []
    _, factors = sympy.factor_list(poly.as_expr(), t)
    for fac, mult in factors:
        fp = sympy.Poly(fac, t)
        coeffs = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in fp.all_coeffs()]
        lead = coeffs[0]
        coeffs = [c / lead for c in coeffs]
        if fp.degree() == 1:
            found = [FieldElem.rational(-coeffs[1])]
        elif fp.degree() == 2:
            found = _quadratic_roots(FieldElem.rational(coeffs[1]), FieldElem.rational(coeffs[2]))
        else:
            raise NotFactorable(f"irreducible factor of degree {fp.degree()}")
        roots.extend(found * mult)
    return roots


def eigenvalues(g) -> List[FieldElem]:
    m = g if isinstance(g, tuple) and isinstance(g[0][0], FieldElem) else as_matrix(g)
    d = len(m)
    if d == 1:
        return [m[0][0]]
    if _is_upper(m) or _is_lower(m):
        return [m[i][i] for i in range(d)]
    if d == 2:
        return _quadratic_roots(-trace(m), det(m))
    return _rational_charpoly_roots(m)


def eigen_data(g) -> ProxData:
    """Eigenvalues by decreasing absolute value and the associated flags."""
    m = g if isinstance(g, tuple) and isinstance(g[0][0], FieldElem) else as_matrix(g)
    lams = eigenvalues(m)
    lams.sort(key=lambda x: _AbsKey(x), reverse=True)
    for a, b in zip(lams, lams[1:]):
        if (abs(a) - abs(b)).sign() == 0:
            raise NotWeaklyProximal("two eigenvalues share an absolute value")
    d = len(m)
    vecs = []
    for lam in lams:
        vecs.append(kernel_vector(mat_sub(m, mat_scale(identity(d), lam))))
    plus = FullFlag(from_columns(vecs))
    minus = FullFlag(from_columns(vecs[::-1]))
    return ProxData(tuple(lams), plus, minus, tuple(vecs))


class _AbsKey:
    __slots__ = ("v",)

    def __init__(self, v: FieldElem):
        self.v = abs(v)

    def __lt__(self, other: "_AbsKey") -> bool:
        return self.v < other.v


def collar_quantities(g, alpha_index: int) -> Tuple[FieldElem, FieldElem]:
    """(|l_i| / |l_{i+1}|, |l_1...l_i| * |l_1...l_{d-i}|) for a det-one matrix."""
    data = eigen_data(g)
    lams = [abs(x) for x in data.eigenvalues]
    d = len(lams)
    i = alpha_index
    if not 1 <= i <= d - 1:
        raise ValueError(f"root index must be in 1..{d - 1}")
    alpha = lams[i - 1] / lams[i]
    p1 = ONE
    for x in lams[:i]:
        p1 = p1 * x
    p2 = ONE
    for x in lams[: d - i]:
        p2 = p2 * x
    return alpha, p1 * p2
