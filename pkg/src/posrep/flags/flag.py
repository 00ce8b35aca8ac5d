"""Full flags in F^d given by a basis whose column prefixes span the subspaces."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from ..errors import DegenerateInput, PrecisionExhausted
from ..field import ONE, ZERO, FieldElem, coerce
from ..linalg import Matrix, antidiagonal, as_matrix, det, from_columns, identity, matmul, transpose


class FullFlag:
    """A complete flag, stored by any basis representative.

    Two bases give the same flag iff they differ by right multiplication with
    an invertible upper triangular matrix.
    """

    __slots__ = ("basis", "_normal")

    def __init__(self, basis):
        m = basis if _is_matrix(basis) else as_matrix(basis)
        if len(m) != len(m[0]):
            raise DegenerateInput("flag basis must be square")
        d = det(m)
        if d.is_exact and not d.terms:
            raise DegenerateInput("flag basis is singular")
        self.basis: Matrix = m
        self._normal: Optional[Matrix] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def column(self, k: int) -> Tuple[FieldElem, ...]:
        return tuple(row[k] for row in self.basis)

    def normal_form(self) -> Matrix:
        """Column-echelon form: each column has a unit pivot at its lowest
        nonzero row, and zeros at the pivot rows of earlier columns."""
        if self._normal is None:
            self._normal = _column_echelon(self.basis)
        return self._normal

    def __eq__(self, other) -> bool:
        if not isinstance(other, FullFlag):
            return NotImplemented
        if other.dim != self.dim:
            return False
        a, b = self.normal_form(), other.normal_form()
        return all((x - y).sign() == 0 for ra, rb in zip(a, b) for x, y in zip(ra, rb))

    def __hash__(self):
        return hash(self.normal_form())

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in r) for r in self.basis)
        return f"FullFlag([{rows}])"


def _is_matrix(m) -> bool:
    return isinstance(m, tuple) and m and isinstance(m[0], tuple) and isinstance(m[0][0], FieldElem)


def _column_echelon(m: Matrix) -> Matrix:
    d = len(m)
    cols: List[List[FieldElem]] = [list(c) for c in transpose(m)]
    pivots: List[int] = []
    out: List[List[FieldElem]] = []
    for col in cols:
        v = list(col)
        for p, prev in zip(pivots, out):
            f = v[p]
            if f.terms or not f.is_exact:
                v = [x - f * y for x, y in zip(v, prev)]
        piv = None
        for i in range(d - 1, -1, -1):
            if i in pivots:
                continue
            if v[i].terms:
                piv = i
                break
            if not v[i].is_exact:
                raise PrecisionExhausted("flag normal form needs more precision")
        if piv is None:
            raise DegenerateInput("flag basis is singular")
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        v[piv] = ONE
        pivots.append(piv)
        out.append(v)
    return from_columns(out)


def standard_flag(d: int) -> FullFlag:
    """Flag of spans of e1, e1+e2, ...; fixed by upper triangular matrices."""
    return FullFlag(identity(d))


def opposite_flag(d: int) -> FullFlag:
    """Flag of spans of e_d, e_d+e_{d-1}, ...; fixed by lower triangular matrices."""
    return FullFlag(antidiagonal(d))


def act(g: Matrix, x: FullFlag) -> FullFlag:
    return FullFlag(matmul(g, x.basis))


def transverse(x: FullFlag, y: FullFlag) -> bool:
    """Every k-dim piece of x is complementary to the (d-k)-dim piece of y."""
    d = x.dim
    if y.dim != d:
        raise DegenerateInput("flags of different dimension")
    for k in range(1, d):
        cols = [x.column(i) for i in range(k)] + [y.column(i) for i in range(d - k)]
        if det(from_columns(cols)).sign() == 0:
            return False
    return True


def flag_from_point(p) -> FullFlag:
    """The d=2 flag whose line is the projective point p."""
    from ..moebius import as_point

    p = as_point(p)
    a, b = p.x0, p.x1
    if b.terms:
        return FullFlag(((a, ONE), (b, ZERO)))
    return FullFlag(((a, ZERO), (b, ONE)))


def flag_from_columns(cols: Sequence[Sequence]) -> FullFlag:
    return FullFlag(from_columns([[coerce(x) for x in c] for c in cols]))
