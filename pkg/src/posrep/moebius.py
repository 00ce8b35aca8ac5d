"""The projective line over the Puiseux field and the action of 2x2 matrices.

Points are kept in homogeneous coordinates ``(x0 : x1)`` with ``x/1`` the
finite point ``x`` and ``(1 : 0)`` the point at infinity.  Orientation tests
use 2x2 determinants only, so no division is ever needed to compare points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .errors import DegenerateInput, OrbitCollision, PrecisionExhausted
from .field import ONE, ZERO, FieldElem, coerce, parse_field
from .linalg import Matrix, as_matrix, matmul

PointLike = Union["ProjPoint", int, str, FieldElem]


class _Infinity:
    """Value of a cross ratio whose denominator vanishes."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"


INF = _Infinity()


def _scale_out(a: FieldElem, b: FieldElem) -> Tuple[FieldElem, FieldElem]:
    # Divide by the leading monomial of the dominant coordinate; exact.
    cands = [x for x in (b, a) if x.terms]
    if not cands:
        return a, b
    lead = min(cands, key=lambda x: x.terms[0][0])
    e, c = lead.terms[0]
    if e == 0 and c == 1:
        return a, b
    inv = FieldElem.monomial(c.inverse(), -e)
    return a * inv, b * inv


class ProjPoint:
    __slots__ = ("x0", "x1")

    def __init__(self, x0, x1=ONE, normalize: bool = True):
        a, b = coerce(x0), coerce(x1)
        if a.is_exact and b.is_exact and not a.terms and not b.terms:
            raise DegenerateInput("(0 : 0) is not a point")
        if normalize:
            a, b = _scale_out(a, b)
        self.x0, self.x1 = a, b

    @classmethod
    def inf(cls) -> "ProjPoint":
        return cls(ONE, ZERO)

    @classmethod
    def parse(cls, text) -> "ProjPoint":
        if isinstance(text, ProjPoint):
            return text
        if isinstance(text, str) and text.strip().lower() in ("inf", "∞", "infinity"):
            return cls.inf()
        if isinstance(text, str):
            return cls(parse_field(text))
        return cls(coerce(text))

    def is_inf(self) -> bool:
        if not self.x1.is_resolved():
            raise PrecisionExhausted("cannot decide whether point is infinite")
        return self.x1.sign() == 0

    def affine(self) -> FieldElem:
        if self.is_inf():
            raise ZeroDivisionError("the point at infinity has no affine coordinate")
        return self.x0 / self.x1

    def coords(self) -> Tuple[FieldElem, FieldElem]:
        return self.x0, self.x1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            try:
                other = ProjPoint.parse(other)
            except (TypeError, ValueError):
                return NotImplemented
        return cross_det(self, other).sign() == 0

    def __hash__(self):
        # Structural; equal points built the same way hash alike.
        return hash((self.x0, self.x1))

    def __repr__(self):
        return f"ProjPoint({self})"

    def __str__(self):
        try:
            if self.is_inf():
                return "inf"
            if self.x1.same_as(ONE):
                return str(self.x0)
            return str(self.affine())
        except (PrecisionExhausted, ArithmeticError):
            return f"({self.x0} : {self.x1})"


def as_point(p: PointLike) -> ProjPoint:
    if isinstance(p, ProjPoint):
        return p
    return ProjPoint.parse(p)


def cross_det(p: ProjPoint, q: ProjPoint) -> FieldElem:
    """det of the column pair (p | q); zero iff the points coincide."""
    return p.x0 * q.x1 - p.x1 * q.x0


# -- orientation -------------------------------------------------------------


def orientation(a: PointLike, b: PointLike, c: PointLike) -> int:
    """+1 for cyclically ordered, -1 for reversed, 0 if two points coincide."""
    a, b, c = as_point(a), as_point(b), as_point(c)
    return (cross_det(a, b) * cross_det(b, c) * cross_det(c, a)).sign()


def cyclic_triple(a: PointLike, b: PointLike, c: PointLike) -> bool:
    return orientation(a, b, c) > 0


def _fan_signs(points: Sequence[ProjPoint]) -> List[int]:
    p0 = points[0]
    return [orientation(p0, points[i], points[i + 1]) for i in range(1, len(points) - 1)]


def tuple_orientation(points: Sequence[PointLike]) -> int:
    """+1 if cyclically ordered, -1 if reverse cyclically ordered, else 0."""
    pts = [as_point(p) for p in points]
    if len(pts) < 3:
        return 1
    signs = _fan_signs(pts)
    if all(s > 0 for s in signs):
        return 1
    if all(s < 0 for s in signs):
        return -1
    return 0


def cyclic_tuple(points: Sequence[PointLike]) -> bool:
    """Tuple is cyclically ordered (counter-clockwise)."""
    return tuple_orientation(points) > 0


def tuple_positive_p1(points: Sequence[PointLike]) -> bool:
    """Positivity on the projective line: cyclic or reverse cyclic."""
    return tuple_orientation(points) != 0


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class IsoClass:
    tag: str
    discriminant: FieldElem


class Moebius2:
    __slots__ = ("a", "b", "c", "d", "det", "_det_sign")

    def __init__(self, a, b=None, c=None, d=None):
        if b is None:
            (a, b), (c, d) = a
        self.a, self.b, self.c, self.d = (coerce(x) for x in (a, b, c, d))
        self.det = self.a * self.d - self.b * self.c
        self._det_sign = None
        if self.det.is_exact and not self.det.terms:
            raise DegenerateInput("singular matrix")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Moebius2":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    @classmethod
    def identity(cls) -> "Moebius2":
        return cls(1, 0, 0, 1)

    @property
    def det_sign(self) -> int:
        if self._det_sign is None:
            self._det_sign = self.det.sign()
        return self._det_sign

    @property
    def matrix(self) -> Matrix:
        return ((self.a, self.b), (self.c, self.d))

    def trace(self) -> FieldElem:
        return self.a + self.d

    def __matmul__(self, other: "Moebius2") -> "Moebius2":
        return Moebius2.from_matrix(matmul(self.matrix, other.matrix))

    def __mul__(self, other):
        if isinstance(other, Moebius2):
            return self @ other
        return NotImplemented

    def inverse(self) -> "Moebius2":
        # Projectively the adjugate suffices; keep det-scaled entries exact.
        inv = self.det.inverse() if not _is_pm_one(self.det) else self.det
        return Moebius2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def adjugate(self) -> "Moebius2":
        return Moebius2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "Moebius2":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Moebius2.identity(), self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __call__(self, p: PointLike) -> ProjPoint:
        return apply(self, p)

    def normalized(self) -> "Moebius2":
        """Scale to determinant +1 or -1; needs sqrt(|det|) in the tower."""
        s = abs(self.det).sqrt()
        inv = s.inverse()
        return Moebius2(self.a * inv, self.b * inv, self.c * inv, self.d * inv)

    def __repr__(self):
        return f"Moebius2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def _is_pm_one(x: FieldElem) -> bool:
    return x.is_exact and len(x.terms) == 1 and x.terms[0][0] == 0 and x.terms[0][1] in (1, -1)


def as_moebius(g) -> Moebius2:
    if isinstance(g, Moebius2):
        return g
    return Moebius2.from_matrix(as_matrix(g))


def apply(g: Moebius2, p: PointLike) -> ProjPoint:
    p = as_point(p)
    return ProjPoint(g.a * p.x0 + g.b * p.x1, g.c * p.x0 + g.d * p.x1)


def apply_h(g: Moebius2, z: Tuple[object, object]) -> Tuple[FieldElem, FieldElem]:
    """Action on the upper half-plane; det < 0 acts through conjugation."""
    re, im = coerce(z[0]), coerce(z[1])
    if im.sign() <= 0:
        raise DegenerateInput("point is not in the upper half-plane")
    if g.det_sign < 0:
        im = -im
    nr, ni = g.a * re + g.b, g.a * im
    dr, di = g.c * re + g.d, g.c * im
    norm = dr * dr + di * di
    inv = norm.inverse()
    return (nr * dr + ni * di) * inv, (ni * dr - nr * di) * inv


# -- cross ratio ---------------------------------------------------------------


def cross_ratio(a: PointLike, b: PointLike, c: PointLike, d: PointLike):
    """Cross ratio normalized so that CR(0, 1, t, inf) = t; may return INF."""
    a, b, c, d = (as_point(p) for p in (a, b, c, d))
    pts = [a, b, c, d]
    distinct: List[ProjPoint] = []
    for p in pts:
        if all(cross_det(p, q).sign() != 0 for q in distinct):
            distinct.append(p)
    if len(distinct) < 3:
        raise DegenerateInput("cross ratio needs at least three distinct points")
    num = cross_det(c, a) * cross_det(d, b)
    den = cross_det(b, a) * cross_det(d, c)
    if den.sign() == 0:
        return INF
    return num / den


# -- classification --------------------------------------------------------------


def is_identity(g: Moebius2) -> bool:
    return g.b.sign() == 0 and g.c.sign() == 0 and (g.a - g.d).sign() == 0


def discriminant(g: Moebius2) -> FieldElem:
    """Tr^2 - 4 det; its sign classifies g exactly like the det-one case."""
    tr = g.trace()
    return tr * tr - 4 * g.det


def classify(g: Moebius2) -> IsoClass:
    if g.det_sign < 0:
        raise DegenerateInput("classification is defined for positive determinant")
    disc = discriminant(g)
    if is_identity(g):
        return IsoClass("identity", disc)
    s = disc.sign()
    tag = "hyperbolic" if s > 0 else "parabolic" if s == 0 else "elliptic"
    return IsoClass(tag, disc)


def _eigvec_point(g: Moebius2, lam: FieldElem) -> ProjPoint:
    if g.b.sign() != 0:
        return ProjPoint(g.b, lam - g.a)
    if g.c.sign() != 0:
        return ProjPoint(lam - g.d, g.c)
    # diagonal: eigenvalue a on e1 = inf, d on e2 = 0
    if (lam - g.a).sign() == 0:
        return ProjPoint.inf()
    return ProjPoint(ZERO, ONE)


@dataclass(frozen=True)
class FixedPoints:
    points: Tuple[ProjPoint, ...]
    attracting: Optional[ProjPoint] = None
    repelling: Optional[ProjPoint] = None
    eigenvalues: Tuple[FieldElem, ...] = ()


def fixed_points(g: Moebius2) -> FixedPoints:
    """Fixed points in P^1(F); for hyperbolic g the attracting one is flagged."""
    cls = classify(g)
    if cls.tag == "identity":
        raise DegenerateInput("every point is fixed by the identity")
    if cls.tag == "elliptic":
        return FixedPoints(())
    tr = g.trace()
    if cls.tag == "parabolic":
        lam = tr / 2
        p = _eigvec_point(g, lam)
        return FixedPoints((p,), p, p, (lam, lam))
    if g.b.sign() == 0 or g.c.sign() == 0:
        # triangular: eigenvalues sit on the diagonal, read them off exactly
        pa = ProjPoint.inf() if g.c.sign() == 0 else ProjPoint(g.a - g.d, g.c)
        pd = ProjPoint(ZERO, ONE) if g.b.sign() == 0 else ProjPoint(g.b, g.d - g.a)
        pairs = [(g.a, pa), (g.d, pd)]
    else:
        root = cls.discriminant.sqrt()
        pairs = [(lam, _eigvec_point(g, lam)) for lam in ((tr + root) / 2, (tr - root) / 2)]
    if abs(pairs[0][0]) < abs(pairs[1][0]):
        pairs.reverse()
    (l1, plus), (l2, minus) = pairs
    return FixedPoints((plus, minus), plus, minus, (l1, l2))


def reflection_from_endpoints(x: PointLike, y: PointLike) -> Moebius2:
    """Orientation-reversing involution whose fixed line has endpoints x, y."""
    x, y = as_point(x), as_point(y)
    if cross_det(x, y).sign() == 0:
        raise DegenerateInput("endpoints must be distinct")
    if x.is_inf():
        x, y = y, x
    if y.is_inf():
        t = x.affine()
        return Moebius2(-1, 2 * t, 0, 1)
    xa, ya = x.affine(), y.affine()
    c = (xa + ya) / 2
    r = (ya - xa) / 2
    inv = r.inverse()
    return Moebius2(c * inv, (r * r - c * c) * inv, inv, -c * inv)


def trace_cr_identity_check(x1, y1, x2, y2) -> Tuple[FieldElem, FieldElem]:
    """Return |Tr(s1 s2)| and |4 CR(x1, y1, y2, x2) - 2| for the two reflections."""
    s1 = reflection_from_endpoints(x1, y1)
    s2 = reflection_from_endpoints(x2, y2)
    lhs = abs((s1 @ s2).trace())
    cr = cross_ratio(x1, y1, y2, x2)
    if cr is INF:
        raise DegenerateInput("cross ratio is infinite")
    rhs = abs(4 * cr - 2)
    return lhs, rhs


# -- translating and rotating ------------------------------------------------------


@dataclass(frozen=True)
class TranslationData:
    x: ProjPoint
    gplus: ProjPoint
    gminus: ProjPoint
    tag: str


_WITNESS_CANDIDATES = ("0", "1", "-1", "2", "inf", "1/2", "-2", "3")


def pos_translating(g: Moebius2) -> Optional[TranslationData]:
    """Witness and forward/backward fixed points of a positively translating g."""
    g = as_moebius(g)
    cls = classify(g)
    if cls.tag == "identity":
        raise DegenerateInput("identity is excluded")
    if cls.tag == "elliptic":
        return None
    fp = fixed_points(g)
    for cand in _WITNESS_CANDIDATES:
        x = ProjPoint.parse(cand)
        if any(cross_det(x, p).sign() == 0 for p in fp.points):
            continue
        gx = apply(g, x)
        ggx = apply(g, gx)
        if tuple_positive_p1([x, gx, ggx, fp.attracting]):
            return TranslationData(x, fp.attracting, fp.repelling, cls.tag)
    return None


def orbit(g: Moebius2, x: PointLike, lo: int, hi: int) -> List[ProjPoint]:
    """Points g^n x for n = lo..hi, where lo <= 0 <= hi."""
    if lo > 0 or hi < 0:
        raise ValueError("orbit range must contain 0")
    x = as_point(x)
    fwd = [x]
    for _ in range(hi):
        fwd.append(apply(g, fwd[-1]))
    back: List[ProjPoint] = []
    ginv = g.adjugate()
    p = x
    for _ in range(-lo):
        p = apply(ginv, p)
        back.append(p)
    return back[::-1] + fwd


def pos_rotating_prefix(g: Moebius2, x: PointLike, n: int) -> bool:
    """The orbit segment g^-n x, ..., g^n x is a positive tuple."""
    if n < 3:
        raise ValueError("orbit depth must be at least 3")
    g = as_moebius(g)
    pts = orbit(g, x, -n, n)
    p0 = pts[0]
    for i in range(1, len(pts)):
        if cross_det(p0, pts[i]).sign() == 0:
            raise OrbitCollision(f"orbit points {-n} and {i - n} coincide")
    signs = []
    for i in range(1, len(pts) - 1):
        s = orientation(p0, pts[i], pts[i + 1])
        if s == 0:
            raise OrbitCollision(f"orbit points {i - n} and {i + 1 - n} coincide")
        signs.append(s)
    if all(s == signs[0] for s in signs):
        return True
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if cross_det(pts[i], pts[j]).sign() == 0:
                raise OrbitCollision(f"orbit points {i - n} and {j - n} coincide")
    return False


# -- intervals --------------------------------------------------------------------


@dataclass(frozen=True)
class CircInterval:
    """Arc from ``lo`` to ``hi`` in the counter-clockwise direction."""

    lo: ProjPoint
    hi: ProjPoint
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        if cross_det(self.lo, self.hi).sign() == 0:
            raise DegenerateInput("interval endpoints must differ")

    @classmethod
    def open(cls, lo, hi) -> "CircInterval":
        return cls(as_point(lo), as_point(hi))

    @classmethod
    def closed(cls, lo, hi) -> "CircInterval":
        return cls(as_point(lo), as_point(hi), True, True)

    def contains(self, w: PointLike) -> bool:
        w = as_point(w)
        if cross_det(w, self.lo).sign() == 0:
            return self.lo_closed
        if cross_det(w, self.hi).sign() == 0:
            return self.hi_closed
        return cyclic_triple(self.lo, w, self.hi)

    __contains__ = contains

    def complement(self) -> "CircInterval":
        return CircInterval(self.hi, self.lo, not self.hi_closed, not self.lo_closed)

    def sample(self) -> ProjPoint:
        lo, hi = self.lo, self.hi
        if lo.is_inf():
            cand = ProjPoint(hi.affine() - 1)
        elif hi.is_inf():
            cand = ProjPoint(lo.affine() + 1)
        else:
            a, b = lo.affine(), hi.affine()
            cand = ProjPoint((a + b) / 2) if a < b else ProjPoint.inf()
        if not cyclic_triple(lo, cand, hi):
            raise DegenerateInput("failed to sample interval")
        return cand

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"


def interval_image(g: Moebius2, interval: CircInterval) -> CircInterval:
    lo, hi = apply(g, interval.lo), apply(g, interval.hi)
    if g.det_sign > 0:
        return CircInterval(lo, hi, interval.lo_closed, interval.hi_closed)
    return CircInterval(hi, lo, interval.hi_closed, interval.lo_closed)


def _same(p: ProjPoint, q: ProjPoint) -> bool:
    return cross_det(p, q).sign() == 0


def interval_subset(inner: CircInterval, outer: CircInterval) -> bool:
    """inner is contained in outer."""
    c = outer.lo
    if _same(inner.hi, c):
        return False
    if _same(inner.lo, c):
        if inner.lo_closed and not outer.lo_closed:
            return False
    elif not cyclic_triple(c, inner.lo, inner.hi):
        # inner wraps around the start of outer
        return False
    if _same(inner.hi, outer.hi):
        return outer.hi_closed or not inner.hi_closed
    return cyclic_triple(c, inner.hi, outer.hi)


def interval_disjoint(a: CircInterval, b: CircInterval) -> bool:
    return interval_subset(a, b.complement())


def witness_outside(inner: CircInterval, outer: CircInterval) -> Optional[ProjPoint]:
    """An endpoint or sample of ``inner`` that is not in ``outer``, if any."""
    for p in (inner.lo, inner.hi):
        is_lo = p is inner.lo
        included = inner.lo_closed if is_lo else inner.hi_closed
        if included and not outer.contains(p):
            return p
    try:
        s = inner.sample()
        if not outer.contains(s):
            return s
    except DegenerateInput:
        pass
    if not interval_subset(inner, outer):
        # an interior point just inside an endpoint escapes
        return inner.hi if not outer.contains(inner.hi) else inner.lo
    return None


def point_matrix(p: ProjPoint) -> Tuple[FieldElem, FieldElem]:
    return p.x0, p.x1
