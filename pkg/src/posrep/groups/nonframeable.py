"""A positive representation of the three-holed sphere group that admits no framing.

Three lines with endpoints (x_i, y_i) give three reflections s1, s2, s3.  The
lines l1 and l3 are placed so that CR(x1, y1, y3, x3) = 1 - eps^k; then s1 s3
is an infinitesimal rotation.  The representation is a = s1 s2, b = s2 s3,
c = s3 s1, so c is elliptic and fixes no boundary point, while a ping-pong
certificate shows the orbit of the attracting point of a is positive.

The ping-pong sets involve the infinite union of the arcs between consecutive
points c^n y1.  Here the union is cut at |n| <= N, and the containments are
checked stage by stage: the image of stage N lands in stage N +- 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..errors import BadConfiguration, OrbitCollision
from ..field import FieldElem
from ..moebius import (
    CircInterval,
    Moebius2,
    ProjPoint,
    apply,
    as_point,
    classify,
    cross_det,
    fixed_points,
    interval_image,
    interval_subset,
    orbit,
    pos_rotating_prefix,
    reflection_from_endpoints,
    tuple_orientation,
)
from .rep import RepSpec
from .schottky import CheckResult, SchottkyCert, SchottkyReport, schottky_verify


@dataclass(frozen=True)
class LineData:
    x1: str = "-1"
    y1: str = "1"
    x3: str = "inf"
    x2: str = "-2"
    y2: str = "-3"


@dataclass
class NonFrameableReport:
    checks: List[CheckResult]
    schottky: SchottkyReport
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.schottky.passed and all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
            "schottky": self.schottky.to_dict(),
            "info": self.info,
        }


def solve_fourth_point(a: ProjPoint, b: ProjPoint, d: ProjPoint, value: FieldElem) -> ProjPoint:
    """The t with CR(a, b, t, d) = value.

    The map sending (0, 1, inf) to (a, b, d) has columns mu*a and lam*d with
    b = lam*d + mu*a; it sends value to t.
    """
    det_da = cross_det(d, a)
    lam = cross_det(b, a) / det_da
    mu = cross_det(d, b) / det_da
    return ProjPoint(lam * value * d.x0 + mu * a.x0, lam * value * d.x1 + mu * a.x1)


def _stage_sets(c: Moebius2, s2: Moebius2, x1, y1, x3, n: int) -> Dict[str, CircInterval]:
    cinv = c.adjugate()
    fwd = y1
    for _ in range(n + 1):
        fwd = apply(c, fwd)  # c^(n+1) y1
    back = y1
    for _ in range(n):
        back = apply(cinv, back)  # c^-n y1
    return {
        "I": CircInterval(fwd, back, True, True),
        "U2": CircInterval(x1, back, True, True),
        "V1": CircInterval(back, x3, False, True),
        "U1": CircInterval(apply(s2, fwd), apply(s2, x1), False, True),
        "V2": CircInterval(apply(s2, x3), apply(s2, fwd), True, True),
    }


def build_nonframeable(epsilon_exponent=1, lines: Optional[LineData] = None, n: int = 20
                       ) -> Tuple[RepSpec, NonFrameableReport]:
    lines = lines or LineData()
    if n < 1:
        raise ValueError("N must be positive")
    x1, y1, x3 = as_point(lines.x1), as_point(lines.y1), as_point(lines.x3)
    x2, y2 = as_point(lines.x2), as_point(lines.y2)
    delta = FieldElem.eps(epsilon_exponent)
    y3 = solve_fourth_point(x1, y1, x3, 1 - delta)

    six = [x1, y3, y1, x3, y2, x2]
    if tuple_orientation(six) <= 0:
        raise BadConfiguration("endpoints must be cyclically ordered as (x1, y3, y1, x3, y2, x2)")

    s1 = reflection_from_endpoints(x1, y1)
    s2 = reflection_from_endpoints(x2, y2)
    s3 = reflection_from_endpoints(x3, y3)
    ga, gb = s1 @ s2, s2 @ s3
    gc = s3 @ s1
    rep = RepSpec.build(["a", "b", "c"], {"a": ga, "b": gb, "c": gc}, ["abc"])

    checks: List[CheckResult] = []
    info: Dict[str, Any] = {"y3": str(y3), "N": n, "epsilon_exponent": str(epsilon_exponent)}

    ab = ga @ gb
    tr = abs(ab.trace())
    expected = 2 - 4 * delta
    checks.append(CheckResult("|Tr(ab)| = 2 - 4 eps^k", (tr - expected).sign() == 0, {"trace": str(tr)}))
    checks.append(CheckResult("ab elliptic", classify(ab).tag == "elliptic"))
    checks.append(CheckResult("c has no fixed point", len(fixed_points(gc).points) == 0))

    stage = _stage_sets(gc, s2, x1, y1, x3, n)
    nxt = _stage_sets(gc, s2, x1, y1, x3, n + 1)
    prev = _stage_sets(gc, s2, x1, y1, x3, n - 1)
    cert = SchottkyCert(
        stage["U1"], stage["U2"], stage["V1"], stage["V2"],
        targets={"a(U1^c) in U2": nxt["U2"], "a^-1(U2^c) in U1": prev["U1"]},
    )
    schottky = schottky_verify(rep, cert)

    # The unshifted containment misses exactly one orbit step.
    plain = interval_subset(interval_image(ga, stage["U1"].complement()), stage["U2"])
    info["unshifted a(U1^c) in U2"] = plain

    # Orbit identities behind b(I) = J and a^-1(I) = J.
    pts = orbit(gc, y1, -n - 1, n + 1)
    at = {k: pts[k + n + 1] for k in range(-n - 1, n + 2)}
    ok_b = all(apply(gb, at[k + 1]) == apply(s2, at[-k]) for k in range(-n, n + 1))
    ainv = ga.adjugate()
    ok_a = all(apply(ainv, at[k]) == apply(s2, at[-k]) for k in range(-n, n + 1))
    checks.append(CheckResult("b(c^(n+1) y1) = s2(c^-n y1)", ok_b))
    checks.append(CheckResult("a^-1(c^n y1) = s2(c^-n y1)", ok_a))
    j_stage = CircInterval(apply(s2, at[-n]), apply(s2, at[n + 1]), True, True)
    img = interval_image(gb, stage["I"])
    same = img.lo == j_stage.lo and img.hi == j_stage.hi
    checks.append(CheckResult("b(I_N) = J_N", same, {"J_N": str(j_stage)}))

    try:
        rot = pos_rotating_prefix(gc, y1, n)
    except OrbitCollision:
        rot = False
    checks.append(CheckResult("c-orbit of y1 positive", rot))

    y1a = y1.affine() if not y1.is_inf() else None
    confined = y1a is not None and all(
        (p.affine() - y1a).is_infinitesimal() for p in pts if not p.is_inf()
    ) and not any(p.is_inf() for p in pts)
    checks.append(CheckResult("orbit in infinitesimal ball about y1", confined))
    checks.append(CheckResult("I_N inside (x1, x3)", interval_subset(stage["I"], CircInterval(x1, x3))))
    nested = interval_subset(stage["I"], nxt["I"]) and interval_subset(prev["I"], stage["I"])
    checks.append(CheckResult("I_(N-1) in I_N in I_(N+1)", nested))

    return rep, NonFrameableReport(checks, schottky, info)
