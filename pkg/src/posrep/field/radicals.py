"""Exact real numbers in a tower of square-root extensions of the rationals.

An element is stored as a finite sum ``sum(q_m * sqrt(m))`` over distinct
square-free integers ``m >= 1`` with nonzero rational ``q_m``.  Square roots of
distinct square-free integers are linearly independent over Q, so this form is
canonical and equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

from ..errors import NegativeInput, TowerExtensionRequired

_MAX_DENEST_DEPTH = 6


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> Tuple[int, ...]:
    if n < 2:
        return ()
    if n < 10**12:
        out = []
        p = 2
        while p * p <= n:
            if n % p == 0:
                out.append(p)
                while n % p == 0:
                    n //= p
            p += 1 if p == 2 else 2
        if n > 1:
            out.append(n)
        return tuple(out)
    from sympy import factorint

    return tuple(sorted(factorint(n)))


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> Tuple[int, int]:
    """Return ``(s, m)`` with ``n = s*s*m`` and ``m`` square-free."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    if n < 10**12:
        s, m, p, rest = 1, 1, 2, n
        while p * p <= rest:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
            p += 1 if p == 2 else 2
        return s, m * rest
    from sympy import factorint

    s = m = 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def _sqrt_bounds(m: int, bits: int) -> Tuple[Fraction, Fraction]:
    scale = 1 << bits
    r = math.isqrt(m * scale * scale)
    if r * r == m * scale * scale:
        return Fraction(r, scale), Fraction(r, scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


class CoeffValue:
    """Element of Q(sqrt(d1), ..., sqrt(dk)); immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coords: Mapping[int, Fraction] | None = None):
        c: Dict[int, Fraction] = {}
        if coords:
            for m, q in coords.items():
                q = Fraction(q)
                if q:
                    c[int(m)] = q
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "CoeffValue":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "CoeffValue":
        q = Fraction(q)
        return cls._raw({1: q} if q else {})

    @classmethod
    def sqrt_of_int(cls, n: int) -> "CoeffValue":
        if n < 0:
            raise NegativeInput(f"sqrt({n})")
        if n == 0:
            return ZERO_C
        s, m = squarefree_split(n)
        return cls._raw({m: Fraction(s)})

    # -- inspection -------------------------------------------------------

    @property
    def coords(self) -> Dict[int, Fraction]:
        return dict(self._c)

    @property
    def radicands(self) -> Tuple[int, ...]:
        primes = set()
        for m in self._c:
            primes.update(prime_factors(m))
        return tuple(sorted(primes))

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return not self._c or (len(self._c) == 1 and 1 in self._c)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._c.get(1, Fraction(0))

    def __float__(self) -> float:
        return sum(float(q) * math.sqrt(m) for m, q in self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, CoeffValue):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({1: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"CoeffValue({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for m in sorted(self._c):
            q = self._c[m]
            if m == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"sqrt({m})")
            else:
                parts.append(f"{q}*sqrt({m})")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "CoeffValue":
        return CoeffValue._raw({m: -q for m, q in self._c.items()})

    def __add__(self, other: "CoeffValue") -> "CoeffValue":
        if not isinstance(other, CoeffValue):
            return NotImplemented
        c = dict(self._c)
        for m, q in other._c.items():
            s = c.get(m, 0) + q
            if s:
                c[m] = s
            else:
                c.pop(m, None)
        return CoeffValue._raw(c)

    def __sub__(self, other: "CoeffValue") -> "CoeffValue":
        if not isinstance(other, CoeffValue):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "CoeffValue") -> "CoeffValue":
        if not isinstance(other, CoeffValue):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) == 1 and 1 in a:
            qa = a[1]
            return CoeffValue._raw({m: qa * q for m, q in b.items()})
        if len(b) == 1 and 1 in b:
            qb = b[1]
            return CoeffValue._raw({m: qb * q for m, q in a.items()})
        c: Dict[int, Fraction] = {}
        for m1, q1 in a.items():
            for m2, q2 in b.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                s = c.get(m, 0) + q1 * q2 * g
                if s:
                    c[m] = s
                else:
                    c.pop(m, None)
        return CoeffValue._raw(c)

    def scale(self, q: Fraction) -> "CoeffValue":
        if not q:
            return ZERO_C
        return CoeffValue._raw({m: q * v for m, v in self._c.items()})

    def _split(self, p: int) -> Tuple["CoeffValue", "CoeffValue"]:
        """Write self = A + B*sqrt(p) with A, B free of sqrt(p)."""
        a: Dict[int, Fraction] = {}
        b: Dict[int, Fraction] = {}
        for m, q in self._c.items():
            if m % p == 0:
                b[m // p] = q
            else:
                a[m] = q
        return CoeffValue._raw(a), CoeffValue._raw(b)

    def inverse(self) -> "CoeffValue":
        if not self._c:
            raise ZeroDivisionError("inverse of zero coefficient")
        if self.is_rational():
            return CoeffValue._raw({1: 1 / self._c[1]})
        # Multiply by the conjugate in one prime; recursion ends at Q.
        p = self.radicands[0]
        A, B = self._split(p)
        conj = A - B * SQRT_CACHE(p)
        norm = self * conj
        return conj * norm.inverse()

    def __truediv__(self, other: "CoeffValue") -> "CoeffValue":
        return self * other.inverse()

    # -- order --------------------------------------------------------------

    def sign(self) -> int:
        c = self._c
        if not c:
            return 0
        if len(c) == 1:
            ((m, q),) = c.items()
            return 1 if q > 0 else -1
        bits = 20
        while True:
            lo = hi = Fraction(0)
            for m, q in c.items():
                s_lo, s_hi = _sqrt_bounds(m, bits)
                if q > 0:
                    lo += q * s_lo
                    hi += q * s_hi
                else:
                    lo += q * s_hi
                    hi += q * s_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    # -- square roots -------------------------------------------------------

    def sqrt(self, _depth: int = 0) -> "CoeffValue":
        """Positive square root; adjoins a radicand for rational input."""
        s = self.sign()
        if s < 0:
            raise NegativeInput(f"sqrt of negative coefficient {self}")
        if s == 0:
            return ZERO_C
        if self.is_rational():
            q = self._c[1]
            num, den = q.numerator, q.denominator
            k, m = squarefree_split(num * den)
            return CoeffValue._raw({m: Fraction(k, den)})
        if _depth < _MAX_DENEST_DEPTH:
            for p in self.radicands:
                A, B = self._split(p)
                if not B:
                    continue
                disc = A * A - B * B * CoeffValue.rational(p)
                if disc.sign() < 0:
                    continue
                try:
                    C = disc.sqrt(_depth + 1)
                    half = Fraction(1, 2)
                    X = (A + C).scale(half)
                    Y = (A - C).scale(half)
                    if X.sign() < 0 or Y.sign() < 0:
                        continue
                    root = X.sqrt(_depth + 1)
                    rest = Y.sqrt(_depth + 1)
                except TowerExtensionRequired:
                    continue
                cand = root + rest if B.sign() > 0 else root - rest
                if cand * cand == self:
                    return cand
        raise TowerExtensionRequired(str(self))


ZERO_C = CoeffValue._raw({})
ONE_C = CoeffValue._raw({1: Fraction(1)})


@lru_cache(maxsize=1024)
def SQRT_CACHE(p: int) -> CoeffValue:
    return CoeffValue._raw({p: Fraction(1)})


def coeff_from_json(obj: Mapping) -> CoeffValue:
    return CoeffValue({int(m): Fraction(q) for m, q in obj.get("coords", {}).items()})


def coeff_to_json(c: CoeffValue) -> dict:
    return {
        "radicands": list(c.radicands),
        "coords": {str(m): str(q) for m, q in sorted(c._c.items())},
    }


def sum_coeffs(values: Iterable[CoeffValue]) -> CoeffValue:
    total = ZERO_C
    for v in values:
        total = total + v
    return total
