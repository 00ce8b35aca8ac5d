"""Framed positivity on an invariant ideal triangulation.

A framing assigns a flag to each cusp, fixed by its peripheral element.  A
triangulation is given combinatorially: one record per orbit of edges, with
the four vertices (x, z, y, w) of the two adjacent triangles, x and y the
edge endpoints and z, w the opposite vertices.  Each vertex is a cusp index
plus a word translating that cusp.  The representation is framed positive
exactly when every edge quadruple (xi(x), xi(z), xi(y), xi(w)) is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple, Union

from ..errors import DegenerateInput, NotTransverse, PrecisionExhausted
from ..flags import FullFlag, act, flag_from_point, quad_positive
from ..moebius import ProjPoint
from .rep import RepSpec, WordLike

VertexRef = Tuple[int, WordLike]
EDGE_KEYS = ("x", "z", "y", "w")


@dataclass(frozen=True)
class FramingSpec:
    cusps: Tuple[Tuple[WordLike, FullFlag], ...]

    @classmethod
    def build(cls, cusps: Sequence[Tuple[WordLike, Union[FullFlag, ProjPoint, str, object]]]) -> "FramingSpec":
        out = []
        for word, f in cusps:
            out.append((word, f if isinstance(f, FullFlag) else _as_flag(f)))
        return cls(tuple(out))


@dataclass(frozen=True)
class EdgeRecord:
    x: VertexRef
    z: VertexRef
    y: VertexRef
    w: VertexRef

    def refs(self) -> Tuple[VertexRef, ...]:
        return (self.x, self.z, self.y, self.w)

    def retranslated(self, word: str) -> "EdgeRecord":
        """Prefix every translating word by a common element."""
        def shift(ref):
            ci, wd = ref
            return (ci, f"{word} {wd}".strip())

        return EdgeRecord(*(shift(r) for r in self.refs()))


@dataclass(frozen=True)
class TriangulationSpec:
    edges: Tuple[EdgeRecord, ...]

    @classmethod
    def build(cls, edges: Sequence[Dict[str, Sequence]]) -> "TriangulationSpec":
        recs = []
        for e in edges:
            recs.append(EdgeRecord(*((int(e[k][0]), e[k][1]) for k in EDGE_KEYS)))
        return cls(tuple(recs))


@dataclass
class EdgeResult:
    index: int
    positive: bool
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class FramedPositivityReport:
    framing_ok: bool
    framing_detail: List[Dict[str, Any]]
    edges: List[EdgeResult]

    @property
    def passed(self) -> bool:
        return self.framing_ok and all(e.positive for e in self.edges)

    def failing_edges(self) -> List[int]:
        return [e.index for e in self.edges if not e.positive]

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "framing_ok": self.framing_ok,
            "framing": self.framing_detail,
            "edges": [{**e.detail, "index": e.index, "positive": e.positive} for e in self.edges],
        }


def _as_flag(f) -> FullFlag:
    if isinstance(f, FullFlag):
        return f
    if isinstance(f, (ProjPoint, str, int)):
        return flag_from_point(f)
    return FullFlag(f)


def resolve_vertex(rep: RepSpec, framing: FramingSpec, ref: VertexRef) -> FullFlag:
    ci, word = ref
    if not 0 <= ci < len(framing.cusps):
        raise DegenerateInput(f"cusp index {ci} out of range")
    return act(rep.eval(word), framing.cusps[ci][1])


def check_framing(rep: RepSpec, framing: FramingSpec) -> Tuple[bool, List[Dict[str, Any]]]:
    details = []
    ok = True
    for i, (word, f) in enumerate(framing.cusps):
        fixed = act(rep.eval(word), f) == f
        ok = ok and fixed
        details.append({"cusp": i, "peripheral": str(word), "fixed": fixed})
    return ok, details


def _edge_check(rep: RepSpec, framing: FramingSpec, idx: int, edge: EdgeRecord) -> EdgeResult:
    flags = [resolve_vertex(rep, framing, r) for r in edge.refs()]
    for i in range(4):
        for j in range(i + 1, 4):
            if flags[i] == flags[j]:
                return EdgeResult(idx, False, {"reason": f"vertices {EDGE_KEYS[i]} and {EDGE_KEYS[j]} coincide"})
    try:
        verdict = quad_positive(*flags)
    except NotTransverse as exc:
        return EdgeResult(idx, False, {"reason": "not transverse", "detail": str(exc)})
    except PrecisionExhausted as exc:
        return EdgeResult(idx, False, {"reason": "precision exhausted", "detail": str(exc)})
    return EdgeResult(idx, verdict.positive, dict(verdict.witness))


def framed_positivity_check(rep: RepSpec, framing: FramingSpec, tri: TriangulationSpec,
                            parallel: bool = False) -> FramedPositivityReport:
    ok, details = check_framing(rep, framing)
    jobs = list(enumerate(tri.edges))
    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda j: _edge_check(rep, framing, *j), jobs))
    else:
        results = [_edge_check(rep, framing, i, e) for i, e in jobs]
    results.sort(key=lambda r: r.index)
    return FramedPositivityReport(ok, details, results)
