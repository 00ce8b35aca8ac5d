"""Truncated real Puiseux series in a positive infinitesimal ``eps``.

A ``FieldElem`` stores finitely many terms ``c * eps**q`` with rational
exponents and coefficients in a square-root tower (``CoeffValue``), plus a
truncation order ``trunc``: the element is known up to ``o(eps**trunc)``.
``trunc is None`` marks an exact element (a finite sum, no unknown tail).

Comparisons and signs are decided by the leading term.  When every known term
cancels and the element is not exact, the answer depends on the unseen tail
and ``PrecisionExhausted`` is raised instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import (
    NegativeInput,
    NotBig,
    NotNested,
    PrecisionExhausted,
    RamificationCapExceeded,
    ZeroInput,
)
from .context import settings
from .radicals import ONE_C, ZERO_C, CoeffValue, coeff_from_json, coeff_to_json

Number = Union[int, Fraction, "FieldElem", CoeffValue]
Term = Tuple[Fraction, CoeffValue]

_INF = math.inf


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class FieldElem:
    __slots__ = ("_terms", "_trunc", "_hash")

    def __init__(self, terms: Iterable[Tuple[object, object]] = (), trunc=None):
        acc: Dict[Fraction, CoeffValue] = {}
        for e, c in terms:
            e = Fraction(e)
            c = c if isinstance(c, CoeffValue) else CoeffValue.rational(c)
            acc[e] = acc.get(e, ZERO_C) + c
        t = None if trunc is None else Fraction(trunc)
        self._terms = tuple(
            (e, acc[e]) for e in sorted(acc) if acc[e] and (t is None or e < t)
        )
        self._trunc = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: Tuple[Term, ...], trunc: Optional[Fraction]) -> "FieldElem":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._trunc = trunc
        obj._hash = None
        return obj

    @classmethod
    def _from_dict(cls, acc: Dict[Fraction, CoeffValue], trunc: Optional[Fraction]) -> "FieldElem":
        terms = tuple(
            (e, acc[e]) for e in sorted(acc) if acc[e] and (trunc is None or e < trunc)
        )
        return cls._raw(terms, trunc)

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "FieldElem":
        q = Fraction(q)
        return cls._raw(((Fraction(0), CoeffValue.rational(q)),) if q else (), None)

    @classmethod
    def monomial(cls, coeff, exp=1) -> "FieldElem":
        c = coeff if isinstance(coeff, CoeffValue) else CoeffValue.rational(coeff)
        if not c:
            return ZERO
        return cls._raw(((Fraction(exp), c),), None)

    @classmethod
    def eps(cls, exp=1) -> "FieldElem":
        return cls.monomial(ONE_C, exp)

    @classmethod
    def big_o(cls, order) -> "FieldElem":
        """The unknown quantity ``O(eps**order)``."""
        return cls._raw((), Fraction(order))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    @property
    def trunc(self) -> Optional[Fraction]:
        return self._trunc

    @property
    def is_exact(self) -> bool:
        return self._trunc is None

    @property
    def ramification(self) -> int:
        return _lcm(e.denominator for e, _ in self._terms)

    @property
    def radicands(self) -> Tuple[int, ...]:
        primes = set()
        for _, c in self._terms:
            primes.update(c.radicands)
        return tuple(sorted(primes))

    def _trunc_value(self):
        return _INF if self._trunc is None else self._trunc

    def _low(self):
        # Lower bound for the valuation, usable even when no term is known.
        if self._terms:
            return self._terms[0][0]
        return self._trunc_value()

    def is_resolved(self) -> bool:
        return bool(self._terms) or self._trunc is None

    def leading(self) -> Term:
        if not self._terms:
            if self._trunc is None:
                raise ZeroInput("zero has no leading term")
            raise PrecisionExhausted(f"no term known below eps^{self._trunc}")
        return self._terms[0]

    def is_rational_constant(self) -> bool:
        return self._trunc is None and all(e == 0 and c.is_rational() for e, c in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms[0][1].as_fraction() if self._terms else Fraction(0)

    def coefficient(self, exp) -> CoeffValue:
        exp = Fraction(exp)
        if self._trunc is not None and exp >= self._trunc:
            raise PrecisionExhausted(f"coefficient of eps^{exp} is beyond the truncation")
        for e, c in self._terms:
            if e == exp:
                return c
        return ZERO_C

    def standard_part(self) -> CoeffValue:
        """Coefficient of eps^0; requires the element not to be big."""
        if self._terms and self._terms[0][0] < 0:
            raise ValueError("big elements have no standard part")
        return self.coefficient(0)

    def with_trunc(self, order) -> "FieldElem":
        """Forget every term at or beyond ``eps**order``."""
        order = Fraction(order)
        if self._trunc is not None and self._trunc <= order:
            return self
        return FieldElem._raw(tuple(t for t in self._terms if t[0] < order), order)

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "FieldElem":
        return FieldElem._raw(tuple((e, -c) for e, c in self._terms), self._trunc)

    def __pos__(self) -> "FieldElem":
        return self

    def __add__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        if not other._terms and other._trunc is None:
            return self
        if not self._terms and self._trunc is None:
            return other
        trunc = _min_trunc(self._trunc, other._trunc)
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc[e] + c if e in acc else c
        return FieldElem._from_dict(acc, trunc)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        a, b = self, other
        if (not a._terms and a._trunc is None) or (not b._terms and b._trunc is None):
            return ZERO
        t = _min_trunc(
            None if a._trunc is None else a._trunc + b._low(),
            None if b._trunc is None else b._trunc + a._low(),
        )
        if len(b._terms) == 1 and b._terms[0] == (0, ONE_C) and b._trunc is None:
            return a
        ra, rb = _rational_numerators(a._terms), _rational_numerators(b._terms)
        if ra is not None and rb is not None:
            return FieldElem._from_dict(_convolve_int(ra, rb, t), t)
        acc: Dict[Fraction, CoeffValue] = {}
        for e1, c1 in a._terms:
            for e2, c2 in b._terms:
                e = e1 + e2
                if t is not None and e >= t:
                    break
                p = c1 * c2
                acc[e] = acc[e] + p if e in acc else p
        return FieldElem._from_dict(acc, t)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        v, c0 = self.leading()
        inv0 = c0.inverse()
        if len(self._terms) == 1 and self._trunc is None:
            return FieldElem._raw(((-v, inv0),), None)
        rel = settings().precision if self._trunc is None else self._trunc - v
        gaps = [(e - v, c * inv0) for e, c in self._terms[1:]]
        series = _inverse_unit(gaps, rel)
        terms = tuple((k - v, s * inv0) for k, s in series)
        return FieldElem._raw(terms, rel - v)

    def __truediv__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "FieldElem":
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "FieldElem":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sqrt(self) -> "FieldElem":
        """Positive square root, or zero for exact zero."""
        s = self.sign()
        if s < 0:
            raise NegativeInput(f"square root of negative element {self}")
        if s == 0:
            return ZERO
        v, c0 = self._terms[0]
        half_v = v / 2
        ram = _lcm([half_v.denominator] + [e.denominator for e, _ in self._terms])
        cap = settings().ramification_cap
        if ram > cap:
            raise RamificationCapExceeded(f"ramification {ram} exceeds cap {cap}")
        r0 = c0.sqrt()
        if len(self._terms) == 1 and self._trunc is None:
            return FieldElem._raw(((half_v, r0),), None)
        inv0 = c0.inverse()
        rel = settings().precision if self._trunc is None else self._trunc - v
        gaps = [(e - v, c * inv0) for e, c in self._terms[1:]]
        series = _sqrt_unit(gaps, rel)
        terms = tuple((k + half_v, sc * r0) for k, sc in series)
        if self._trunc is None:
            # The series may terminate; keep the root exact when it does.
            exact = FieldElem._raw(terms, None)
            if (exact * exact)._terms == self._terms:
                return exact
        return FieldElem._raw(terms, rel + half_v)

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        if self._terms:
            return self._terms[0][1].sign()
        if self._trunc is None:
            return 0
        raise PrecisionExhausted(f"sign undetermined below eps^{self._trunc}")

    def is_zero(self) -> bool:
        return self.sign() == 0

    def _cmp(self, other) -> int:
        other = coerce(other)
        return (self - other).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other) -> bool:
        other = coerce(other, strict=False)
        if other is None:
            return NotImplemented
        return (self - other).sign() == 0

    def __ne__(self, other) -> bool:
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._terms, self._trunc))
        return self._hash

    def same_as(self, other: "FieldElem") -> bool:
        """Structural identity, including the truncation order."""
        return self._terms == other._terms and self._trunc == other._trunc

    def __abs__(self) -> "FieldElem":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self.sign() != 0

    # -- valuation --------------------------------------------------------------

    def valuation(self):
        """Leading exponent, ``math.inf`` for exact zero."""
        if self._terms:
            return self._terms[0][0]
        if self._trunc is None:
            return _INF
        raise PrecisionExhausted(f"valuation is at least {self._trunc}, not resolved")

    def is_infinitesimal(self) -> bool:
        return self.valuation() > 0

    def is_big(self) -> bool:
        return self.valuation() < 0

    # -- display ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"FieldElem({self})"

    def __str__(self) -> str:
        parts = []
        for e, c in self._terms:
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            mono = "eps" if e == 1 else f"eps^({e})" if e.denominator != 1 or e < 0 else f"eps^{e}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        if self._trunc is not None:
            parts.append(f"O(eps^({self._trunc}))")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _rational_numerators(terms: Sequence[Term]):
    """(common denominator, [(exp, int numerator)]) or None if some coefficient is irrational."""
    fracs = []
    for e, c in terms:
        if not c.is_rational():
            return None
        fracs.append((e, c.as_fraction()))
    den = _lcm(q.denominator for _, q in fracs)
    return den, [(e, q.numerator * (den // q.denominator)) for e, q in fracs]


def _convolve_int(ra, rb, t: Optional[Fraction]) -> Dict[Fraction, CoeffValue]:
    # integer convolution, one normalization per output coefficient
    (da, na), (db, nb) = ra, rb
    acc: Dict[Fraction, int] = {}
    for e1, n1 in na:
        for e2, n2 in nb:
            e = e1 + e2
            if t is not None and e >= t:
                break
            acc[e] = acc.get(e, 0) + n1 * n2
    den = da * db
    return {e: CoeffValue.rational(Fraction(n, den)) for e, n in acc.items() if n}


def _min_trunc(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _grid(gaps: Sequence[Term], rel: Fraction) -> Tuple[int, int, Dict[int, CoeffValue]]:
    m = _lcm(e.denominator for e, _ in gaps)
    kmax = math.ceil(rel * m)  # exponents k/m with k < kmax stay below rel
    r = {}
    for e, c in gaps:
        k = int(e * m)
        if k < kmax:
            r[k] = c
    return m, kmax, r


def _inverse_unit(gaps: Sequence[Term], rel: Fraction) -> List[Term]:
    """Series of 1/(1 + r) below eps**rel, r given by its terms."""
    m, kmax, r = _grid(gaps, rel)
    rs = sorted(r.items())
    b: Dict[int, CoeffValue] = {0: ONE_C}
    for k in range(1, kmax):
        acc = ZERO_C
        for g, rg in rs:
            if g > k:
                break
            prev = b.get(k - g)
            if prev is not None:
                acc = acc + rg * prev
        if acc:
            b[k] = -acc
    return [(Fraction(k, m), c) for k, c in sorted(b.items())]


def _sqrt_unit(gaps: Sequence[Term], rel: Fraction) -> List[Term]:
    """Series of sqrt(1 + r) below eps**rel, from s*s = 1 + r."""
    m, kmax, r = _grid(gaps, rel)
    half = Fraction(1, 2)
    s: Dict[int, CoeffValue] = {0: ONE_C}
    nz: List[int] = []
    for k in range(1, kmax):
        acc = r.get(k, ZERO_C)
        for j in nz:
            if 2 * j > k:
                break
            other = s.get(k - j)
            if other is None:
                continue
            prod = s[j] * other
            acc = acc - (prod if 2 * j == k else prod + prod)
        if acc:
            s[k] = acc.scale(half)
            nz.append(k)
    return [(Fraction(k, m), c) for k, c in sorted(s.items())]


ZERO = FieldElem._raw((), None)
ONE = FieldElem._raw(((Fraction(0), ONE_C),), None)
EPS = FieldElem._raw(((Fraction(1), ONE_C),), None)


def coerce(x, strict: bool = True) -> Optional[FieldElem]:
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, (int, Fraction)):
        return FieldElem.rational(x)
    if isinstance(x, CoeffValue):
        return FieldElem.monomial(x, 0)
    if strict:
        raise TypeError(f"cannot use {type(x).__name__} as a field element")
    return None


# -- functional surface ---------------------------------------------------------


def sqrt(x) -> FieldElem:
    return coerce(x).sqrt()


def sign(x) -> int:
    return coerce(x).sign()


def compare(a, b) -> int:
    return (coerce(a) - coerce(b)).sign()


def absolute(x) -> FieldElem:
    return abs(coerce(x))


def fe_max(a, b) -> FieldElem:
    a, b = coerce(a), coerce(b)
    return a if compare(a, b) >= 0 else b


def fe_min(a, b) -> FieldElem:
    a, b = coerce(a), coerce(b)
    return a if compare(a, b) <= 0 else b


def valuation(x):
    return coerce(x).valuation()


def is_infinitesimal(x) -> bool:
    return coerce(x).is_infinitesimal()


def is_big(x) -> bool:
    return coerce(x).is_big()


def log_abs_base(x, b) -> Fraction:
    """Rational ``r`` with ``|x|_b = e**r``, i.e. ``v(x) / v(b)``."""
    x, b = coerce(x), coerce(b)
    if x.is_resolved() and x.sign() == 0:
        raise ZeroInput("|0|_b is not defined")
    if not b.is_resolved() or not b.is_big():
        raise NotBig(f"{b} is not a big element")
    return Fraction(x.valuation()) / Fraction(b.valuation())


def nested_interval_witness(intervals: Sequence[Tuple[object, object]]) -> FieldElem:
    """Midpoint of the innermost interval after checking the family is nested."""
    if not intervals:
        raise NotNested("empty family of intervals")
    prev_lo = prev_hi = None
    for i, (lo, hi) in enumerate(intervals):
        lo, hi = coerce(lo), coerce(hi)
        if lo > hi:
            raise NotNested(f"interval {i} has lo > hi")
        if prev_lo is not None and (lo < prev_lo or hi > prev_hi):
            raise NotNested(f"interval {i} is not inside interval {i - 1}")
        prev_lo, prev_hi = lo, hi
    return (prev_lo + prev_hi) / 2


def to_json(x: FieldElem) -> dict:
    return {
        "trunc": None if x.trunc is None else str(x.trunc),
        "terms": [{"exp": str(e), "coeff": coeff_to_json(c)} for e, c in x.terms],
    }


def from_json(obj) -> FieldElem:
    if isinstance(obj, (int, str)):
        return FieldElem.rational(Fraction(obj))
    trunc = obj.get("trunc")
    terms = [(Fraction(t["exp"]), coeff_from_json(t["coeff"])) for t in obj.get("terms", [])]
    return FieldElem(terms, None if trunc is None else Fraction(trunc))
