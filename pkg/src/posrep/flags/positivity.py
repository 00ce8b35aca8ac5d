"""Positive triples, quadruples and tuples of full flags.

Every decision reduces to the same normalization: move the first flag to the
opposite flag and the last flag to the standard flag, read off the unipotent
parameters of the other flags, and ask whether the consecutive increments are
totally positive after one common sign twist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple

from ..errors import DegenerateInput, NotTransverse, PrecisionExhausted
from ..field import ONE, ZERO
from ..linalg import Matrix, antidiagonal, inverse, matmul, unitriangular_inverse
from .flag import FullFlag, act, opposite_flag, transverse
from .tp import is_totally_positive, superdiagonal_twist, twist


@dataclass(frozen=True)
class PositivityVerdict:
    positive: bool
    witness: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.positive


def unipotent_param(x: FullFlag) -> Matrix:
    """The upper unitriangular u with u . p_opp = x.

    Writes w0 X = L B (no pivoting); then u = w0 L w0.  This exists exactly
    when x is transverse to the standard flag.
    """
    d = x.dim
    w0 = antidiagonal(d)
    a = [list(r) for r in matmul(w0, x.basis)]
    lower = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    for k in range(d):
        piv = a[k][k]
        if not piv.is_resolved():
            raise PrecisionExhausted("pivot undecidable in unipotent parametrization")
        if piv.sign() == 0:
            raise NotTransverse(f"flag is not transverse to the standard flag (level {k + 1})")
        inv = piv.inverse()
        for i in range(k + 1, d):
            f = a[i][k]
            if f.terms or not f.is_exact:
                m = f * inv
                lower[i][k] = m
                a[i] = [y - m * z for y, z in zip(a[i], a[k])]
    lower_t = tuple(tuple(r) for r in lower)
    return matmul(matmul(w0, lower_t), w0)


def normalizer(x_first: FullFlag, x_last: FullFlag) -> Matrix:
    """h with h . x_first = p_opp and h . x_last = p_std."""
    if not transverse(x_first, x_last):
        raise NotTransverse("extremities are not transverse")
    x4_inv = inverse(x_last.basis)
    m = FullFlag(matmul(x4_inv, x_first.basis))
    u = unipotent_param(m)
    return matmul(unitriangular_inverse(u), x4_inv)


def _params(h: Matrix, flags: Sequence[FullFlag]) -> List[Matrix]:
    return [unipotent_param(act(h, f)) for f in flags]


def _increments(params: Sequence[Matrix]) -> List[Matrix]:
    out = []
    prev = None
    for u in params:
        out.append(u if prev is None else matmul(unitriangular_inverse(prev), u))
        prev = u
    return out


def simultaneous_twist(us: Sequence[Matrix]) -> Tuple[bool, Dict[str, Any]]:
    """Is there one sign vector making every matrix in ``us`` totally positive?"""
    if not us:
        return True, {}
    sigma = superdiagonal_twist(us[0])
    if sigma is None:
        return False, {"reason": "vanishing superdiagonal", "index": 0}
    for idx, u in enumerate(us):
        verdict = is_totally_positive(twist(u, sigma))
        if not verdict.positive:
            return False, {
                "reason": verdict.tag,
                "index": idx,
                "sigma": list(sigma),
                "minor": None if verdict.witness is None else [list(verdict.witness[0]), list(verdict.witness[1])],
            }
    return True, {"sigma": list(sigma)}


def simultaneous_twist_enumerated(us: Sequence[Matrix]) -> bool:
    """Same question answered by trying every sign vector."""
    from .tp import sign_vectors

    d = len(us[0])
    for sigma in sign_vectors(d):
        if all(is_totally_positive(twist(u, sigma)).positive for u in us):
            return True
    return False


def positive_chain(flags: Sequence[FullFlag]) -> PositivityVerdict:
    """(x_0, ..., x_n) with x_0 -> p_opp and x_n -> p_std has TP increments."""
    try:
        h = normalizer(flags[0], flags[-1])
        params = _params(h, flags[1:-1])
    except NotTransverse as exc:
        return PositivityVerdict(False, {"reason": "not transverse", "detail": str(exc)})
    ok, info = simultaneous_twist(_increments(params))
    return PositivityVerdict(ok, info)


def quad_positive(x1: FullFlag, x2: FullFlag, x3: FullFlag, x4: FullFlag) -> PositivityVerdict:
    return positive_chain([x1, x2, x3, x4])


def triple_positive(x: FullFlag, y: FullFlag, z: FullFlag) -> PositivityVerdict:
    """Reduced to a quadruple by inserting h^-1 u_y^2 . p_opp after y."""
    try:
        h = normalizer(x, z)
    except NotTransverse as exc:
        return PositivityVerdict(False, {"reason": "not transverse", "detail": str(exc)})
    try:
        uy = unipotent_param(act(h, y))
    except NotTransverse as exc:
        return PositivityVerdict(False, {"reason": "not transverse", "detail": str(exc)})
    t = act(inverse(h), act(matmul(uy, uy), opposite_flag(x.dim)))
    return quad_positive(x, y, t, z)


def _safe(fn, *args) -> PositivityVerdict:
    try:
        return fn(*args)
    except NotTransverse as exc:
        return PositivityVerdict(False, {"reason": "not transverse", "detail": str(exc)})


def tuple_positive(xs: Sequence[FullFlag], parallel: bool = False) -> PositivityVerdict:
    """Positivity through all quadruples (all triples when n = 3)."""
    n = len(xs)
    if n < 3:
        raise DegenerateInput("need at least three flags")
    if n == 3:
        return _safe(triple_positive, *xs)
    quads = list(combinations(range(n), 4))
    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            verdicts = list(pool.map(lambda q: _safe(quad_positive, *(xs[i] for i in q)), quads))
    else:
        verdicts = (_safe(quad_positive, *(xs[i] for i in q)) for q in quads)
    for q, v in zip(quads, verdicts):
        if not v.positive:
            return PositivityVerdict(False, {"quadruple": list(q), **v.witness})
    return PositivityVerdict(True, {"checked": len(quads)})


def tuple_positive_direct(xs: Sequence[FullFlag]) -> PositivityVerdict:
    """Positivity through one normalization and simultaneous TP of increments."""
    if len(xs) < 3:
        raise DegenerateInput("need at least three flags")
    if len(xs) == 3:
        return _safe(triple_positive, *xs)
    return _safe(positive_chain, xs)


def in_diamond(y: FullFlag, x: FullFlag, z: FullFlag, ref: FullFlag) -> bool:
    """y lies in the diamond with extremities (x, z) that contains ref."""
    h = normalizer(x, z)
    try:
        uy = unipotent_param(act(h, y))
    except NotTransverse:
        return False
    u_ref = unipotent_param(act(h, ref))
    sigma = superdiagonal_twist(u_ref)
    if sigma is None:
        raise DegenerateInput("(x, ref, z) is not a positive triple")
    if not is_totally_positive(twist(u_ref, sigma)).positive:
        raise DegenerateInput("(x, ref, z) is not a positive triple")
    return is_totally_positive(twist(uy, sigma)).positive


def build_positive_chain(h: Matrix, increments: Sequence[Matrix]) -> List[FullFlag]:
    """Flags h.(p_opp, u1 p_opp, u1 u2 p_opp, ..., p_std)."""
    d = len(h)
    opp = opposite_flag(d)
    out = [act(h, opp)]
    acc = None
    for u in increments:
        acc = u if acc is None else matmul(acc, u)
        out.append(act(matmul(h, acc), opp))
    std = FullFlag(h)
    out.append(std)
    return out
