"""JSON encodings of field elements, points, matrices and input files."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, List

from .field import FieldElem, from_json as field_from_json, parse_field, to_json as field_to_json
from .flags import FullFlag, flag_from_point
from .groups import FramingSpec, RepSpec, SchottkyCert, TriangulationSpec
from .moebius import CircInterval, ProjPoint


def value_from_json(obj) -> FieldElem:
    """Accepts a FieldElem object, an expression string or a number."""
    if isinstance(obj, FieldElem):
        return obj
    if isinstance(obj, str):
        return parse_field(obj)
    if isinstance(obj, bool):
        raise ValueError("booleans are not field elements")
    if isinstance(obj, int):
        return FieldElem.rational(obj)
    if isinstance(obj, float):
        return FieldElem.rational(Fraction(repr(obj)))
    if isinstance(obj, dict):
        return field_from_json(obj)
    raise ValueError(f"cannot read a field element from {obj!r}")


def point_to_json(p: ProjPoint) -> Dict[str, Any]:
    if p.is_inf():
        return {"inf": True}
    return {"val": field_to_json(p.affine())}


def point_from_json(obj) -> ProjPoint:
    if isinstance(obj, dict):
        if obj.get("inf"):
            return ProjPoint.inf()
        return ProjPoint(value_from_json(obj["val"]))
    if isinstance(obj, str):
        return ProjPoint.parse(obj)
    return ProjPoint(value_from_json(obj))


def matrix_to_json(m) -> List[List[Dict[str, Any]]]:
    return [[field_to_json(x) for x in row] for row in m]


def matrix_from_json(obj):
    return tuple(tuple(value_from_json(x) for x in row) for row in obj)


def flag_from_json(obj) -> FullFlag:
    """A basis matrix, or for d = 2 a projective point."""
    if isinstance(obj, list) and obj and isinstance(obj[0], list):
        return FullFlag(matrix_from_json(obj))
    return flag_from_point(point_from_json(obj))


def rep_from_json(obj) -> RepSpec:
    gens = obj["generators"]
    images = {g: matrix_from_json(obj["images"][g]) for g in gens}
    rep = RepSpec.build(gens, images, obj.get("relators", []))
    if "d" in obj and int(obj["d"]) != rep.d:
        raise ValueError(f"declared dimension {obj['d']} does not match images")
    return rep


def rep_to_json(rep: RepSpec) -> Dict[str, Any]:
    return {
        "d": rep.d,
        "generators": list(rep.generators),
        "relators": [r.format(rep.generators) for r in rep.relators],
        "images": {g: matrix_to_json(m) for g, m in zip(rep.generators, rep.images)},
    }


def framing_from_json(obj) -> FramingSpec:
    cusps = []
    for c in obj["cusps"]:
        cusps.append((c["peripheral"], flag_from_json(c["flag"])))
    return FramingSpec(tuple(cusps))


def triangulation_from_json(obj) -> TriangulationSpec:
    return TriangulationSpec.build(obj["edges"])


def interval_from_json(obj) -> CircInterval:
    return CircInterval(
        point_from_json(obj["lo"]),
        point_from_json(obj["hi"]),
        bool(obj.get("lo_closed", False)),
        bool(obj.get("hi_closed", False)),
    )


def cert_from_json(obj) -> SchottkyCert:
    return SchottkyCert(
        *(interval_from_json(obj[k]) for k in ("U1", "U2", "V1", "V2")),
        a_word=obj.get("a", "a"),
        b_word=obj.get("b", "b"),
    )


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()
