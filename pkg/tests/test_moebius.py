from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from posrep.errors import DegenerateInput, OrbitCollision
from posrep.field import EPS, FieldElem, parse_field, sqrt
from posrep.moebius import (
    INF,
    CircInterval,
    Moebius2,
    ProjPoint,
    apply,
    apply_h,
    classify,
    cross_ratio,
    cyclic_triple,
    cyclic_tuple,
    fixed_points,
    interval_image,
    interval_subset,
    orbit,
    pos_rotating_prefix,
    pos_translating,
    reflection_from_endpoints,
    trace_cr_identity_check,
    tuple_positive_p1,
)

Q = st.fractions(min_value=-20, max_value=20, max_denominator=10)


def g_eps():
    c = sqrt(1 - EPS**2)
    return Moebius2(c, EPS, -EPS, c)


def real(p: ProjPoint):
    """Point -> float or inf, for the float-free oracle below."""
    return None if p.is_inf() else p.affine()


def ccw(a, b, c) -> bool:
    """Independent counter-clockwise test, sending inf to the top of the circle."""
    # rotate so that none is inf by the Cayley-type map z -> (z - 1)/(z + 1) after z -> z + shift
    pts = [a, b, c]
    if any(p is None for p in pts):
        i = pts.index(None)
        rest = pts[i + 1:] + pts[:i]  # cyclic rotation keeps orientation
        return rest[0] < rest[1]
    a, b, c = pts
    return (a < b < c) or (b < c < a) or (c < a < b)


# -- examples -------------------------------------------------------------------

def test_apply_examples():
    assert apply(Moebius2(1, 1, 0, 1), "0") == ProjPoint(1)
    s1 = reflection_from_endpoints("-1", "1")
    z = (FieldElem.rational(Fraction(1, 3)), FieldElem.rational(Fraction(1, 2)))
    w = apply_h(s1, z)
    # 1 / conj(z) = z / |z|^2
    n = z[0] * z[0] + z[1] * z[1]
    assert w[0] == z[0] / n and w[1] == z[1] / n


def test_infinitesimal_rotation_formula():
    g = g_eps()
    for a in (Fraction(0), Fraction(1, 2), Fraction(-3)):
        got = apply(g, ProjPoint(a)).affine()
        want = a + EPS * (1 + a * a) / (sqrt(1 - EPS**2) - EPS * a)
        assert not (got - want).terms


def test_cross_ratio_examples():
    t = parse_field("3/7 + eps")
    assert cross_ratio("0", "1", ProjPoint(t), "inf") == t
    assert cross_ratio("-1", "1", ProjPoint(t), "inf") == (t + 1) / 2
    assert cross_ratio("0", "1", "2", "2") is INF
    assert cross_ratio("0", "1", "inf", "1") == 0
    with pytest.raises(DegenerateInput):
        cross_ratio("0", "0", "0", "1")


def test_cyclic_examples():
    assert cyclic_triple("0", "1", "inf")
    assert not cyclic_triple("0", "2", "1")
    assert cyclic_tuple(["0", "1", "2", "inf"])
    assert tuple_positive_p1(["inf", "2", "1", "0"])
    assert not tuple_positive_p1(["0", "2", "1", "inf"])


def test_classify_examples():
    p = Moebius2(1, 1, 0, 1)
    assert classify(p).tag == "parabolic"
    assert fixed_points(p).points == (ProjPoint.inf(),)
    c = classify(g_eps())
    assert c.tag == "elliptic" and c.discriminant.leading()[0] == 2
    assert c.discriminant.leading()[1].as_fraction() == -4
    assert fixed_points(g_eps()).points == ()
    h = Moebius2(2, 0, 0, Fraction(1, 2))
    fp = fixed_points(h)
    assert fp.attracting.is_inf() and fp.repelling == ProjPoint(0)
    # iterate on a sample point: moves towards inf
    x = ProjPoint(1)
    for _ in range(5):
        x = apply(h, x)
    assert x.affine() == 4**5
    with pytest.raises(DegenerateInput):
        classify(Moebius2(1, 0, 0, -1))


def test_reflection_examples():
    s2 = reflection_from_endpoints("5/2", "inf")
    z = (FieldElem.rational(1), FieldElem.rational(2))
    w = apply_h(s2, z)
    assert w[0] == 5 - 1 and w[1] == 2
    for x, y in (("-1", "1"), ("2", "inf"), ("0", "3")):
        s = reflection_from_endpoints(x, y)
        sq = s @ s
        assert sq.b.sign() == 0 and sq.c.sign() == 0 and sq.a == sq.d
        assert apply(s, x) == ProjPoint.parse(x) and apply(s, y) == ProjPoint.parse(y)


def test_trace_cr_examples():
    t = parse_field("7/3")
    lhs, rhs = trace_cr_identity_check("-1", "1", "inf", ProjPoint(t))
    assert lhs == rhs == 2 * t
    s1, s2 = reflection_from_endpoints("-1", "1"), reflection_from_endpoints(ProjPoint(t), "inf")
    prod = (s1 @ s2).normalized()
    assert (prod.trace() ** 2) == 4 * t * t


def test_pos_translating_examples():
    data = pos_translating(Moebius2(1, 1, 0, 1))
    assert data.gplus.is_inf() and data.gminus.is_inf()
    h = Moebius2(2, 0, 0, Fraction(1, 2))
    d = pos_translating(h)
    x = d.x
    seq = [d.gminus, apply(h.inverse(), x), x, apply(h, x), d.gplus]
    assert cyclic_tuple(seq)
    assert pos_translating(g_eps()) is None


def test_rotation_prefix_examples():
    assert pos_rotating_prefix(g_eps(), ProjPoint(EPS), 50)
    h = Moebius2(2, 1, 1, 1)
    assert pos_rotating_prefix(h, ProjPoint(Fraction(1, 3)), 20)
    with pytest.raises(OrbitCollision):
        pos_rotating_prefix(Moebius2(0, 1, -1, 0), "1", 3)


def test_interval_examples():
    img = interval_image(Moebius2(1, 1, 0, 1), CircInterval.open("0", "1"))
    assert img.lo == ProjPoint(1) and img.hi == ProjPoint(2)
    rev = interval_image(Moebius2(-1, 0, 0, 1), CircInterval.open("1", "2"))
    assert rev.lo == ProjPoint(-2) and rev.hi == ProjPoint(-1)
    assert interval_subset(CircInterval.open(ProjPoint(EPS), "1"), CircInterval.open("0", "2"))
    assert not interval_subset(CircInterval.open("-1", "1"), CircInterval.open("0", "2"))
    assert interval_subset(CircInterval.open("3", "-5"), CircInterval.open("2", "-4"))


# -- properties -------------------------------------------------------------------

@st.composite
def sl2(draw):
    a, b, c = draw(Q), draw(Q), draw(Q)
    assume(a != 0)
    d = (1 + b * c) / a
    return Moebius2(a, b, c, d)


@settings(max_examples=60, deadline=None)
@given(sl2(), st.lists(Q, min_size=4, max_size=4, unique=True))
def test_cross_ratio_invariant(g, xs):
    pts = [ProjPoint(x) for x in xs]
    before = cross_ratio(*pts)
    after = cross_ratio(*(apply(g, p) for p in pts))
    assert before == after


@settings(max_examples=100, deadline=None)
@given(st.lists(Q, min_size=3, max_size=3, unique=True), st.booleans())
def test_cyclic_triple_matches_oracle(xs, with_inf):
    pts = [ProjPoint(x) for x in xs]
    if with_inf:
        pts[1] = ProjPoint.inf()
    a, b, c = pts
    assert cyclic_triple(a, b, c) == ccw(real(a), real(b), real(c))
    if cyclic_triple(a, b, c):
        assert cyclic_triple(b, c, a) and not cyclic_triple(a, c, b)


@settings(max_examples=60, deadline=None)
@given(sl2(), st.lists(Q, min_size=3, max_size=3, unique=True))
def test_cyclic_triple_invariant(g, xs):
    pts = [ProjPoint(x) for x in xs]
    assert cyclic_triple(*pts) == cyclic_triple(*(apply(g, p) for p in pts))
    r = Moebius2(-1, 0, 0, 1)
    assert cyclic_triple(*pts) != cyclic_triple(*(apply(r, p) for p in pts))


@settings(max_examples=60, deadline=None)
@given(sl2(), sl2())
def test_classify_conjugation_invariant(g, h):
    assume(not (g.b.sign() == 0 and g.c.sign() == 0 and g.a == g.d))
    conj = h @ g @ h.inverse()
    assert classify(conj).tag == classify(g).tag
    tag = classify(g).tag
    if tag != "elliptic":
        for p in fixed_points(g).points:
            assert apply(g, p) == p


@settings(max_examples=60, deadline=None)
@given(sl2(), Q)
def test_hyperbolic_attracting_point(g, z):
    assume(classify(g).tag == "hyperbolic")
    fp = fixed_points(g)
    zp = ProjPoint(z)
    assume(zp != fp.attracting and zp != fp.repelling)
    # ordered one way on one arc between the fixed points, the other way on the other arc
    assert tuple_positive_p1([fp.repelling, zp, apply(g, zp), fp.attracting])


@settings(max_examples=100, deadline=None)
@given(st.lists(Q, min_size=4, max_size=4, unique=True))
def test_trace_cr_identity_random(xs):
    x1, y1, x2, y2 = (ProjPoint(x) for x in xs)
    lhs, rhs = trace_cr_identity_check(x1, y1, x2, y2)
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(st.lists(Q, min_size=4, max_size=4, unique=True), st.lists(Q, min_size=5, max_size=5))
def test_interval_subset_matches_sampling(ends, probes):
    a, b, c, d = (ProjPoint(x) for x in ends)
    inner, outer = CircInterval.open(a, b), CircInterval.open(c, d)
    # four distinct points: inner in outer iff (c, a, b, d) is cyclically ordered
    ra, rb, rc, rd = ends
    want = ccw(rc, ra, rb) and ccw(rc, rb, rd)
    assert interval_subset(inner, outer) == want
    if want:
        for q in probes:
            p = ProjPoint(q)
            if inner.contains(p):
                assert outer.contains(p)


@settings(max_examples=40, deadline=None)
@given(sl2(), st.lists(Q, min_size=2, max_size=2, unique=True), Q)
def test_interval_image_membership(g, ends, q):
    iv = CircInterval.open(*ends)
    p = ProjPoint(q)
    assert iv.contains(p) == interval_image(g, iv).contains(apply(g, p))


def test_orbit_helper():
    pts = orbit(Moebius2(1, 1, 0, 1), "0", -2, 2)
    assert [p.affine() for p in pts] == [-2, -1, 0, 1, 2]
