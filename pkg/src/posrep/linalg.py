"""Small dense matrices over ``FieldElem``, stored as tuples of row tuples."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import DegenerateInput, PrecisionExhausted
from .field import ONE, ZERO, FieldElem, coerce

Matrix = Tuple[Tuple[FieldElem, ...], ...]
Vector = Tuple[FieldElem, ...]


def as_matrix(rows) -> Matrix:
    out = tuple(tuple(coerce(x) for x in row) for row in rows)
    if not out or any(len(r) != len(out[0]) for r in out):
        raise DegenerateInput("ragged or empty matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diag(values) -> Matrix:
    vals = [coerce(v) for v in values]
    n = len(vals)
    return tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n))


def antidiagonal(n: int) -> Matrix:
    """Permutation matrix reversing the standard basis."""
    return tuple(tuple(ONE if i + j == n - 1 else ZERO for j in range(n)) for i in range(n))


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), len(a[0])


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if (x.terms or not x.is_exact) and (y.terms or not y.is_exact):
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[FieldElem]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    c = coerce(c)
    return tuple(tuple(x * c for x in r) for r in a)


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        return mat_pow(inverse(a), -n)
    result, base = identity(len(a)), a
    while n:
        if n & 1:
            result = matmul(result, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def trace(a: Matrix) -> FieldElem:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def columns(a: Matrix) -> Tuple[Vector, ...]:
    return transpose(a)


def from_columns(cols: Sequence[Sequence[FieldElem]]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def det(a: Matrix) -> FieldElem:
    """Division-free determinant by cofactor expansion over column subsets."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if all(x.is_rational_constant() for row in a for x in row):
        return FieldElem.rational(rational_det([[x.as_fraction() for x in row] for row in a]))
    memo: Dict[FrozenSet[int], FieldElem] = {}

    def sub(row: int, cols: Tuple[int, ...]) -> FieldElem:
        # determinant of rows row.. and the given columns
        if len(cols) == 1:
            return a[row][cols[0]]
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = ZERO
        for k, c in enumerate(cols):
            x = a[row][c]
            if not x.terms and x.is_exact:
                continue
            term = x * sub(row + 1, cols[:k] + cols[k + 1:])
            acc = acc + term if k % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return sub(0, tuple(range(n)))


def rational_det(rows: List[List[Fraction]]) -> Fraction:
    """Gaussian elimination over Q."""
    m = [list(r) for r in rows]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for i in range(col + 1, n):
            f = m[i][col]
            if f:
                f /= p
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result


def minor(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> FieldElem:
    return det(tuple(tuple(a[i][j] for j in cols) for i in rows))


def _pick_pivot(rows: List[List[FieldElem]], col: int, start: int) -> Optional[int]:
    unresolved = False
    for i in range(start, len(rows)):
        x = rows[i][col]
        if x.terms:
            return i
        if not x.is_exact:
            unresolved = True
    if unresolved:
        raise PrecisionExhausted("pivot undecidable at current truncation")
    return None


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    work = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        p = _pick_pivot(work, col, col)
        if p is None:
            raise DegenerateInput("singular matrix")
        work[col], work[p] = work[p], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col:
                f = work[i][col]
                if f.terms or not f.is_exact:
                    work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return tuple(tuple(r[n:]) for r in work)


def unitriangular_inverse(u: Matrix) -> Matrix:
    """Inverse of an upper unitriangular matrix, division-free."""
    n = len(u)
    inv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = ZERO
            for k in range(i + 1, j + 1):
                acc = acc + u[i][k] * inv[k][j]
            inv[i][j] = -acc
    return tuple(tuple(r) for r in inv)


def kernel_vector(a: Matrix) -> Vector:
    """A nonzero vector in the kernel of a matrix with nullity one."""
    n_rows, n = shape(a)
    work = [list(r) for r in a]
    pivots: List[int] = []
    row = 0
    for col in range(n):
        if row >= n_rows:
            break
        try:
            p = _pick_pivot(work, col, row)
        except PrecisionExhausted:
            # entries that only vanish up to truncation are treated as zero
            p = None
        if p is None:
            continue
        work[row], work[p] = work[p], work[row]
        inv = work[row][col].inverse()
        work[row] = [x * inv for x in work[row]]
        for i in range(n_rows):
            if i != row:
                f = work[i][col]
                if f.terms:
                    work[i] = [x - f * y for x, y in zip(work[i], work[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        raise DegenerateInput("matrix has trivial kernel")
    f = free[0]
    vec = [ZERO] * n
    vec[f] = ONE
    for r, c in enumerate(pivots):
        vec[c] = -work[r][f]
    return tuple(vec)


def is_identity(a: Matrix, up_to_sign: bool = False) -> bool:
    """Entrywise comparison with the identity up to the truncation order."""
    n = len(a)
    for sgn in ((1, -1) if up_to_sign else (1,)):
        ok = True
        for i in range(n):
            for j in range(n):
                target = sgn if i == j else 0
                if (a[i][j] - target).terms:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def upper_minor_index_sets(d: int):
    """Pairs (rows, cols) of equal size with rows[i] <= cols[i] for all i."""
    out = []
    for k in range(1, d + 1):
        for rows in combinations(range(d), k):
            for cols in combinations(range(d), k):
                if all(r <= c for r, c in zip(rows, cols)):
                    out.append((rows, cols))
    return out


upper_minor_index_sets = lru_cache(maxsize=16)(upper_minor_index_sets)
