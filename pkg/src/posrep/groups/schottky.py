"""Ping-pong certificates for two-generator representations into PSL_2."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional

from ..moebius import (
    CircInterval,
    Moebius2,
    classify,
    fixed_points,
    interval_disjoint,
    interval_image,
    interval_subset,
    tuple_orientation,
    witness_outside,
)
from .rep import RepSpec

CONTAINMENTS = (
    # (name, generator word, inverse?, source, default target)
    ("a(U1^c) in U2", "a", False, "U1", "U2"),
    ("a^-1(U2^c) in U1", "a", True, "U2", "U1"),
    ("b(V1^c) in V2", "b", False, "V1", "V2"),
    ("b^-1(V2^c) in V1", "b", True, "V2", "V1"),
)


@dataclass(frozen=True)
class SchottkyCert:
    U1: CircInterval
    U2: CircInterval
    V1: CircInterval
    V2: CircInterval
    a_word: str = "a"
    b_word: str = "b"
    # Optional replacement targets, keyed by containment name.  Used by
    # staged certificates where the image of one stage lands in the next.
    targets: Dict[str, CircInterval] = field(default_factory=dict)

    def sets(self) -> Dict[str, CircInterval]:
        return {"U1": self.U1, "U2": self.U2, "V1": self.V1, "V2": self.V2}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, **self.detail}


@dataclass
class SchottkyReport:
    checks: List[CheckResult]
    arrangement: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "arrangement": self.arrangement,
            "checks": [c.to_dict() for c in self.checks],
        }


def _mapped(g: Moebius2, inverse: bool) -> Moebius2:
    return g.adjugate() if inverse else g


def schottky_verify(rep: RepSpec, cert: SchottkyCert) -> SchottkyReport:
    ga = rep.eval_moebius(cert.a_word)
    gb = rep.eval_moebius(cert.b_word)
    sets = cert.sets()
    checks: List[CheckResult] = []

    # rho(a) hyperbolic with attracting point in U2
    cls = classify(ga)
    if cls.tag != "hyperbolic":
        checks.append(CheckResult("a hyperbolic", False, {"class": cls.tag}))
    else:
        plus = fixed_points(ga).attracting
        checks.append(CheckResult("a hyperbolic", True))
        checks.append(CheckResult("a+ in U2", cert.U2.contains(plus), {"a+": str(plus)}))

    gens = {"a": ga, "b": gb}
    for name, gen, inv, src, dst in CONTAINMENTS:
        g = _mapped(gens[gen], inv)
        image = interval_image(g, sets[src].complement())
        target = cert.targets.get(name, sets[dst])
        ok = interval_subset(image, target)
        detail: Dict[str, Any] = {"image": str(image), "target": str(target)}
        if not ok:
            w = witness_outside(image, target)
            detail["witness"] = None if w is None else str(w)
        checks.append(CheckResult(name, ok, detail))

    for (n1, s1), (n2, s2) in combinations(sets.items(), 2):
        ok = interval_disjoint(s1, s2)
        checks.append(CheckResult(f"{n1} disjoint {n2}", ok))

    samples = {k: v.sample() for k, v in sets.items()}
    arrangement = None
    order = [samples["U1"], samples["U2"], samples["V1"], samples["V2"]]
    swapped = [samples["U1"], samples["U2"], samples["V2"], samples["V1"]]
    if tuple_orientation(order) > 0:
        arrangement = "(u1, u2, v1, v2)"
    elif tuple_orientation(swapped) > 0:
        arrangement = "(u1, u2, v2, v1)"
    checks.append(
        CheckResult(
            "U and V unlinked",
            arrangement is not None,
            {"samples": {k: str(v) for k, v in samples.items()}},
        )
    )
    return SchottkyReport(checks, arrangement)
