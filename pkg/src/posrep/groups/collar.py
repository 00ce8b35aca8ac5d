"""Collar-lemma inequality for pairs of linked elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from ..errors import LinkageFailed
from ..field import FieldElem
from ..flags import collar_quantities
from ..moebius import classify, cross_det, fixed_points, tuple_orientation
from .rep import RepSpec, WordLike


@dataclass
class CollarRecord:
    pair: Tuple[str, str]
    linkage: str
    lhs: List[FieldElem]
    verdicts: List[bool]

    @property
    def passed(self) -> bool:
        return all(self.verdicts)

    def to_dict(self):
        return {
            "pair": list(self.pair),
            "linkage": self.linkage,
            "lhs": [str(v) for v in self.lhs],
            "lhs_at_least_one": self.verdicts,
        }


@dataclass
class CollarReport:
    records: List[CollarRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self):
        return {"verdict": "pass" if self.passed else "fail", "pairs": [r.to_dict() for r in self.records]}


def linkage_2d(g, h) -> str:
    """Check that the fixed points of g and h interleave on the circle.

    Returns the observed orientation of (g-, h-, g+, h+).  Both orientations
    are accepted: replacing h by its inverse swaps h+ and h-, and the collar
    quantity of h equals that of its inverse.
    """
    for name, m in (("first", g), ("second", h)):
        if classify(m).tag != "hyperbolic":
            raise LinkageFailed(f"{name} element is not hyperbolic")
    fg, fh = fixed_points(g), fixed_points(h)
    for p in fg.points:
        for q in fh.points:
            if cross_det(p, q).sign() == 0:
                raise LinkageFailed("the two elements share a fixed point")
    o = tuple_orientation([fg.repelling, fh.repelling, fg.attracting, fh.attracting])
    if o == 0:
        raise LinkageFailed("fixed points are not interleaved")
    return "cyclic" if o > 0 else "reverse cyclic"


def collar_check(rep: RepSpec, pairs: Sequence[Tuple[WordLike, WordLike]],
                 assume_linked: bool = False) -> CollarReport:
    report = CollarReport()
    for w1, w2 in pairs:
        g, h = rep.eval(w1), rep.eval(w2)
        if rep.d == 2:
            linkage = linkage_2d(rep.eval_moebius(w1), rep.eval_moebius(w2))
        elif assume_linked:
            linkage = "asserted"
        else:
            raise LinkageFailed("linkage must be asserted by the caller when d > 2")
        lhs, verdicts = [], []
        for i in range(1, rep.d):
            alpha, _ = collar_quantities(g, i)
            _, p_alpha = collar_quantities(h, i)
            val = (alpha - 1) * (p_alpha - 1)
            lhs.append(val)
            verdicts.append(val >= 1)
        report.records.append(CollarRecord((str(w1), str(w2)), linkage, lhs, verdicts))
    return report
