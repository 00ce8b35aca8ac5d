"""Finitely generated representations into PSL_2 / SL_d over the field."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple, Union

from ..errors import DegenerateInput, RelatorViolation
from ..field import FieldElem, coerce, parse_field
from ..linalg import Matrix, as_matrix, identity, inverse, is_identity, matmul
from ..moebius import Moebius2
from .words import Word

WordLike = Union[Word, str]


def _adjugate_inverse(m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    dt = a * d - b * c
    if dt.is_exact and dt.is_rational_constant() and dt.as_fraction() == 1:
        return ((d, -b), (-c, a))
    inv = dt.inverse()
    return ((d * inv, -b * inv), (-c * inv, a * inv))


@dataclass(frozen=True)
class RepSpec:
    generators: Tuple[str, ...]
    images: Tuple[Matrix, ...]
    relators: Tuple[Word, ...] = ()
    d: int = 2
    projective: bool = True
    _inverses: Dict[int, Matrix] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.generators) != len(self.images):
            raise DegenerateInput("one image per generator is required")
        for name, m in zip(self.generators, self.images):
            if len(m) != self.d or len(m[0]) != self.d:
                raise DegenerateInput(f"image of {name} is not {self.d}x{self.d}")
        for rel in self.relators:
            val = self.eval(rel)
            if not is_identity(val, up_to_sign=self.projective):
                raise RelatorViolation(f"relator {rel.format(self.generators)} is not the identity")

    @classmethod
    def build(cls, generators: Sequence[str], images: Mapping[str, object], relators: Sequence[WordLike] = (),
              projective: bool = True) -> "RepSpec":
        gens = tuple(generators)
        mats = tuple(_to_matrix(images[g]) for g in gens)
        d = len(mats[0])
        rels = tuple(r if isinstance(r, Word) else Word.parse(r, gens) for r in relators)
        return cls(gens, mats, rels, d, projective)

    def word(self, w: WordLike) -> Word:
        return w if isinstance(w, Word) else Word.parse(w, self.generators)

    def image(self, name: str) -> Matrix:
        return self.images[self.generators.index(name)]

    def _gen_power(self, g: int, e: int) -> Matrix:
        if e > 0:
            base = self.images[g]
        else:
            base = self._inverses.get(g)
            if base is None:
                m = self.images[g]
                base = _adjugate_inverse(m) if self.d == 2 else inverse(m)
                self._inverses[g] = base
            e = -e
        out = base
        for _ in range(e - 1):
            out = matmul(out, base)
        return out

    def eval(self, w: WordLike) -> Matrix:
        w = self.word(w)
        out = identity(self.d)
        for g, e in w.letters:
            out = matmul(out, self._gen_power(g, e))
        return out

    def eval_moebius(self, w: WordLike) -> Moebius2:
        if self.d != 2:
            raise DegenerateInput("Moebius view needs a 2-dimensional target")
        return Moebius2.from_matrix(self.eval(w))

    def conjugate(self, h) -> "RepSpec":
        """The representation g -> h g h^-1."""
        h = _to_matrix(h)
        h_inv = _adjugate_inverse(h) if self.d == 2 else inverse(h)
        imgs = tuple(matmul(matmul(h, m), h_inv) for m in self.images)
        return RepSpec(self.generators, imgs, self.relators, self.d, self.projective)


def rep_eval(rep: RepSpec, w: WordLike) -> Matrix:
    return rep.eval(w)


def _to_matrix(m) -> Matrix:
    if isinstance(m, Moebius2):
        return m.matrix
    if isinstance(m, tuple) and m and isinstance(m[0], tuple) and isinstance(m[0][0], FieldElem):
        return m
    return as_matrix([[_entry(x) for x in row] for row in m])


def _entry(x) -> FieldElem:
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, str):
        return parse_field(x)
    if isinstance(x, dict):
        from ..field import from_json

        return from_json(x)
    return coerce(x)
