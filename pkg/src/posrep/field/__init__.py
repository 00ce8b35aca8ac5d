"""Ordered field of truncated real Puiseux series over a square-root tower."""

from .context import Settings, local_settings, settings
from .parse import ParseError, parse_field, parse_rational
from .puiseux import (
    EPS,
    ONE,
    ZERO,
    FieldElem,
    absolute,
    coerce,
    compare,
    fe_max,
    fe_min,
    from_json,
    is_big,
    is_infinitesimal,
    log_abs_base,
    nested_interval_witness,
    sign,
    sqrt,
    to_json,
    valuation,
)
from .radicals import CoeffValue

__all__ = [
    "CoeffValue", "EPS", "FieldElem", "ONE", "ParseError", "Settings", "ZERO",
    "absolute", "coerce", "compare", "fe_max", "fe_min", "from_json", "is_big",
    "is_infinitesimal", "local_settings", "log_abs_base", "nested_interval_witness",
    "parse_field", "parse_rational", "settings", "sign", "sqrt", "to_json", "valuation",
]
