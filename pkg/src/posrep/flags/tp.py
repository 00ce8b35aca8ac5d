"""Total positivity of upper unitriangular matrices.

A unipotent ``u`` is totally positive when every minor that does not vanish
identically on upper unitriangular matrices is positive.  Those are the
minors with row set ``r`` and column set ``c`` satisfying ``r[i] <= c[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple

from ..errors import DegenerateInput
from ..field import ONE, ZERO, FieldElem
from ..linalg import Matrix, as_matrix, identity, matmul, minor, transpose, upper_minor_index_sets

TOTALLY_POSITIVE = "totally_positive"
BOUNDARY = "boundary"
NOT_POSITIVE = "not_positive"


@dataclass(frozen=True)
class TPVerdict:
    tag: str
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    value: Optional[FieldElem] = None

    @property
    def positive(self) -> bool:
        return self.tag == TOTALLY_POSITIVE

    @property
    def nonnegative(self) -> bool:
        return self.tag != NOT_POSITIVE

    def __bool__(self) -> bool:
        return self.positive


def check_unipotent(u: Matrix) -> Matrix:
    u = u if isinstance(u, tuple) and isinstance(u[0][0], FieldElem) else as_matrix(u)
    d = len(u)
    for i in range(d):
        for j in range(d):
            x = u[i][j]
            if i == j and (x - 1).sign() != 0:
                raise DegenerateInput("unipotent must have unit diagonal")
            if i > j and x.sign() != 0:
                raise DegenerateInput("unipotent must be upper triangular")
    return u


def tp_bruteforce(u) -> TPVerdict:
    """Enumerate every relevant minor."""
    u = check_unipotent(u)
    zero_at = None
    for rows, cols in upper_minor_index_sets(len(u)):
        s = minor(u, rows, cols).sign()
        if s < 0:
            return TPVerdict(NOT_POSITIVE, (rows, cols), minor(u, rows, cols))
        if s == 0 and zero_at is None:
            zero_at = (rows, cols)
    if zero_at is not None:
        return TPVerdict(BOUNDARY, zero_at, ZERO)
    return TPVerdict(TOTALLY_POSITIVE)


def neville_multipliers(u) -> Optional[list]:
    """Multipliers of Neville elimination on the transpose of u.

    Returns None as soon as a zero pivot or a non-positive multiplier
    shows that the fast path cannot certify total positivity.
    """
    lower = [list(r) for r in transpose(u)]
    d = len(lower)
    mults = []
    for k in range(d - 1):
        for i in range(d - 1, k, -1):
            num, den = lower[i][k], lower[i - 1][k]
            if den.sign() <= 0 or num.sign() <= 0:
                return None
            m = num / den
            mults.append(m)
            lower[i] = [x - m * y for x, y in zip(lower[i], lower[i - 1])]
    return mults


def is_totally_positive(u) -> TPVerdict:
    """Neville fast path, with minor enumeration to classify failures."""
    u = check_unipotent(u)
    if len(u) == 1:
        return TPVerdict(TOTALLY_POSITIVE)
    if neville_multipliers(u) is not None:
        return TPVerdict(TOTALLY_POSITIVE)
    return tp_bruteforce(u)


# -- sign twists -------------------------------------------------------------


def sign_vectors(d: int) -> Iterator[Tuple[int, ...]]:
    """All sign vectors with first entry +1 (sigma and -sigma act alike)."""
    for rest in product((1, -1), repeat=d - 1):
        yield (1,) + rest


def twist(u: Matrix, sigma: Sequence[int]) -> Matrix:
    """Entrywise u_ij -> sigma_i sigma_j u_ij, i.e. conjugation by diag(sigma)."""
    return tuple(
        tuple(x if sigma[i] * sigma[j] > 0 else -x for j, x in enumerate(row))
        for i, row in enumerate(u)
    )


def superdiagonal_twist(u: Matrix) -> Optional[Tuple[int, ...]]:
    """The only sign vector (up to overall sign) that can make u TP.

    Positivity of the twisted superdiagonal fixes sigma_{i+1} = sigma_i * sign(u_{i,i+1}).
    Returns None when some superdiagonal entry vanishes.
    """
    sigma = [1]
    for i in range(len(u) - 1):
        s = u[i][i + 1].sign()
        if s == 0:
            return None
        sigma.append(sigma[-1] * s)
    return tuple(sigma)


def elementary(d: int, i: int, t) -> Matrix:
    """I + t E_{i,i+1}."""
    from ..field import coerce

    t = coerce(t)
    return tuple(
        tuple(ONE if r == c else (t if (r, c) == (i, i + 1) else ZERO) for c in range(d))
        for r in range(d)
    )


def reduced_word(d: int) -> Tuple[int, ...]:
    """A reduced word for the longest permutation, length d(d-1)/2."""
    word = []
    for k in range(d - 1, 0, -1):
        word.extend(range(k))
    return tuple(word)


def from_parameters(d: int, params: Sequence) -> Matrix:
    """Product of elementary factors along the reduced word; TP iff all params > 0."""
    word = reduced_word(d)
    if len(params) != len(word):
        raise ValueError(f"need {len(word)} parameters")
    u = identity(d)
    for i, t in zip(word, params):
        u = matmul(u, elementary(d, i, t))
    return u
