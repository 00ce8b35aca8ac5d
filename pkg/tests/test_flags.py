import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import frac_tp_class

from posrep.errors import NotTransverse, NotWeaklyProximal
from posrep.field import EPS, FieldElem, parse_field
from posrep.flags import (
    FullFlag,
    act,
    build_positive_chain,
    collar_quantities,
    eigen_data,
    flag_from_point,
    from_parameters,
    in_diamond,
    is_totally_positive,
    opposite_flag,
    quad_positive,
    reduced_word,
    simultaneous_twist,
    simultaneous_twist_enumerated,
    standard_flag,
    tp_bruteforce,
    transverse,
    tuple_positive,
    tuple_positive_direct,
    unipotent_param,
)
from posrep.linalg import as_matrix, identity, matmul
from posrep.moebius import ProjPoint, cyclic_triple, tuple_positive_p1

Q = st.fractions(min_value=-10, max_value=10, max_denominator=6)
POS = st.fractions(min_value=Fraction(1, 6), max_value=6, max_denominator=6)


def u3(a, b, c):
    return as_matrix([[1, a, b], [0, 1, c], [0, 0, 1]])


def to_frac(m):
    return [[x.as_fraction() for x in row] for row in m]


def same_matrix(a, b):
    return all((x - y).sign() == 0 for ra, rb in zip(a, b) for x, y in zip(ra, rb))


@st.composite
def unipotents(draw, d):
    return as_matrix([[1 if i == j else (draw(st.integers(-3, 6)) if j > i else 0) for j in range(d)]
                      for i in range(d)])


@st.composite
def tp_unipotents(draw, d):
    return from_parameters(d, [draw(POS) for _ in reduced_word(d)])


# -- transversality and parametrization ----------------------------------------

def test_transverse_examples():
    assert transverse(standard_flag(3), opposite_flag(3))
    assert not transverse(standard_flag(3), standard_flag(3))
    assert transverse(flag_from_point("0"), flag_from_point("inf"))
    assert not transverse(flag_from_point("1/2"), flag_from_point("1/2"))


@settings(max_examples=50, deadline=None)
@given(Q, Q)
def test_transverse_iff_distinct_in_p1(a, b):
    assert transverse(flag_from_point(ProjPoint(a)), flag_from_point(ProjPoint(b))) == (a != b)


def test_unipotent_param_examples():
    assert same_matrix(unipotent_param(opposite_flag(4)), identity(4))
    t = parse_field("2/3 - eps")
    assert same_matrix(unipotent_param(flag_from_point(ProjPoint(t))), as_matrix([[1, t], [0, 1]]))
    with pytest.raises(NotTransverse):
        unipotent_param(standard_flag(3))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(unipotents))
def test_unipotent_param_round_trip(u):
    d = len(u)
    assert same_matrix(unipotent_param(act(u, opposite_flag(d))), u)


# -- total positivity -----------------------------------------------------------

def test_tp_examples():
    assert is_totally_positive(u3(1, 1, 1)).tag == "boundary"
    assert is_totally_positive(u3(2, 1, 2)).tag == "totally_positive"
    assert is_totally_positive(u3(1, 2, 1)).tag == "not_positive"
    for t, want in ((Fraction(1, 3), True), (0, False), (-1, False)):
        assert is_totally_positive(as_matrix([[1, t], [0, 1]])).positive == want
    assert is_totally_positive(as_matrix([[1, EPS], [0, 1]])).positive


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 5).flatmap(unipotents))
def test_tp_matches_minor_oracle(u):
    want = frac_tp_class(to_frac(u))
    assert tp_bruteforce(u).tag == want
    assert is_totally_positive(u).tag == want


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(tp_unipotents(d), tp_unipotents(d))))
def test_tp_semigroup(pair):
    u, v = pair
    assert is_totally_positive(u).positive and is_totally_positive(v).positive
    assert is_totally_positive(matmul(u, v)).positive


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(unipotents(d), min_size=1, max_size=3)))
def test_twist_search_matches_enumeration(us):
    assert simultaneous_twist(us)[0] == simultaneous_twist_enumerated(us)


# -- positivity of tuples ---------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.lists(Q, min_size=4, max_size=4, unique=True))
def test_quad_positive_p1(xs):
    flags = [flag_from_point(ProjPoint(x)) for x in xs]
    assert quad_positive(*flags).positive == tuple_positive_p1([ProjPoint(x) for x in xs])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 4).flatmap(lambda d: st.tuples(tp_unipotents(d), tp_unipotents(d))))
def test_quad_definition_instance(pair):
    u, v = pair
    d = len(u)
    opp = opposite_flag(d)
    x = [opp, act(u, opp), act(matmul(u, v), opp), standard_flag(d)]
    assert quad_positive(*x).positive
    assert not quad_positive(x[0], x[2], x[1], x[3]).positive


def test_tuple_examples():
    pts = ["-3", "-1", "0", "1/2", "2", "inf"]
    assert tuple_positive([flag_from_point(p) for p in pts]).positive
    rng = random.Random(3)
    d = 3
    h = as_matrix([[2, 1, 0], [1, 1, 1], [0, 1, 3]])
    incs = [from_parameters(d, [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(3)]) for _ in range(4)]
    chain = build_positive_chain(h, incs)
    assert len(chain) == 6
    assert tuple_positive(chain).positive and tuple_positive_direct(chain).positive
    bad = list(chain)
    bad[2] = FullFlag(matmul(h, identity(3)))  # equals the last flag: not transverse
    assert not tuple_positive(bad).positive and not tuple_positive_direct(bad).positive


def test_triple_positive():
    assert tuple_positive([flag_from_point(p) for p in ("0", "1", "inf")]).positive
    opp = opposite_flag(3)
    u = from_parameters(3, [1, 2, 1])
    assert tuple_positive([opp, act(u, opp), standard_flag(3)]).positive
    # three pairwise transverse flags that do not form a positive triple
    w = as_matrix([[1, 1, 1], [0, 1, -1], [0, 0, 1]])
    assert not tuple_positive([opp, act(w, opp), standard_flag(3)]).positive


@settings(max_examples=40, deadline=None)
@given(st.lists(Q, min_size=4, max_size=4, unique=True))
def test_quad_dihedral_invariance_p1(xs):
    flags = [flag_from_point(ProjPoint(x)) for x in xs]
    v = quad_positive(*flags).positive
    rot = flags[1:] + flags[:1]
    assert quad_positive(*rot).positive == v
    assert quad_positive(*flags[::-1]).positive == v


def test_in_diamond_p1():
    x, z = flag_from_point("0"), flag_from_point("inf")
    ref = flag_from_point("1")
    assert in_diamond(ref, x, z, ref)
    assert in_diamond(flag_from_point("5/2"), x, z, ref)
    assert not in_diamond(flag_from_point("-1"), x, z, ref)


@settings(max_examples=40, deadline=None)
@given(st.lists(Q, min_size=4, max_size=4, unique=True))
def test_in_diamond_matches_arc(xs):
    y, x, z, r = (ProjPoint(v) for v in xs)
    same_arc = cyclic_triple(x, y, z) == cyclic_triple(x, r, z)
    assert in_diamond(*(flag_from_point(p) for p in (y, x, z, r))) == same_arc


# -- eigenvalues -------------------------------------------------------------------

def test_eigen_examples():
    data = eigen_data(as_matrix([[2, 0], [0, Fraction(1, 2)]]))
    assert data.eigenvalues == (2, Fraction(1, 2))
    assert data.gplus == flag_from_point("inf")
    data = eigen_data(as_matrix([[1, 1], [1, 2]]))
    l1, l2 = data.eigenvalues
    assert l1 == (3 + parse_field("sqrt(5)")) / 2 and l1 * l2 == 1
    g = as_matrix([[1 / EPS, 0, 0], [0, 1, 0], [0, 0, EPS]])
    data = eigen_data(g)
    assert data.eigenvalues[0] == 1 / EPS and data.gplus == standard_flag(3)
    with pytest.raises(NotWeaklyProximal):
        eigen_data(as_matrix([[1, 0], [0, -1]]))


def test_eigen_rational_cubic():
    g = as_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    data = eigen_data(g)
    for lam, v in zip(data.eigenvalues, data.eigenvectors):
        gv = [sum((g[i][j] * v[j] for j in range(3)), FieldElem.rational(0)) for i in range(3)]
        assert all((gv[i] - lam * v[i]).sign() == 0 for i in range(3))


def test_collar_quantity_examples():
    g = as_matrix([[1, 1], [1, 2]])
    lam = (3 + parse_field("sqrt(5)")) / 2
    alpha, p = collar_quantities(g, 1)
    assert alpha == lam * lam and p == lam * lam
    assert p == (7 + 3 * parse_field("sqrt(5)")) / 2
    alpha, p = collar_quantities(as_matrix([[4, 0, 0], [0, 1, 0], [0, 0, Fraction(1, 4)]]), 1)
    assert alpha == 4 and p == 16
