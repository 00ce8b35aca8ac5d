"""Which images of a representation are positively translating."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..errors import ComplexEigenvalues, NotFactorable, NotTransverse, NotWeaklyProximal, OrbitCollision
from ..flags import act, eigen_data, from_parameters, normalizer, opposite_flag, quad_positive, reduced_word
from ..flags.tp import sign_vectors, twist
from ..linalg import inverse, matmul
from ..moebius import classify, pos_rotating_prefix, pos_translating
from .rep import RepSpec, WordLike


@dataclass
class TranslatingRecord:
    word: str
    classification: str
    translating: bool
    rotating: Optional[bool] = None
    gplus: Optional[str] = None
    gminus: Optional[str] = None
    transverse: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class TranslatingReport:
    records: List[TranslatingRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.translating for r in self.records)

    def to_dict(self):
        return {"verdict": "pass" if self.passed else "fail", "words": [r.to_dict() for r in self.records]}


def _check_2d(rep: RepSpec, w) -> TranslatingRecord:
    g = rep.eval_moebius(w)
    tag = classify(g).tag
    data = pos_translating(g) if tag != "identity" else None
    if data is not None:
        transverse = tag == "hyperbolic"
        return TranslatingRecord(str(w), tag, True, None, str(data.gplus), str(data.gminus), transverse)
    rotating = None
    if tag == "elliptic":
        try:
            rotating = any(pos_rotating_prefix(g, x, 10) for x in ("0", "1", "eps"))
        except OrbitCollision:
            rotating = False
    return TranslatingRecord(str(w), tag, False, rotating)


def _check_nd(rep: RepSpec, w) -> TranslatingRecord:
    g = rep.eval(w)
    try:
        data = eigen_data(g)
    except (NotWeaklyProximal, ComplexEigenvalues, NotFactorable) as exc:
        return TranslatingRecord(str(w), type(exc).__name__, False)
    d = rep.d
    h = normalizer(data.gminus, data.gplus)
    h_inv = inverse(h)
    base = from_parameters(d, [1] * len(reduced_word(d)))
    for sigma in sign_vectors(d):
        x = act(matmul(h_inv, twist(base, sigma)), opposite_flag(d))
        gx = act(g, x)
        try:
            if quad_positive(x, gx, act(g, gx), data.gplus).positive:
                return TranslatingRecord(str(w), "weakly proximal", True, None,
                                         repr(data.gplus), repr(data.gminus), True)
        except NotTransverse:
            continue
    return TranslatingRecord(str(w), "weakly proximal", False)


def pos_translating_images_check(rep: RepSpec, words: Sequence[WordLike]) -> TranslatingReport:
    report = TranslatingReport()
    for w in words:
        report.records.append(_check_2d(rep, w) if rep.d == 2 else _check_nd(rep, w))
    return report
