"""Per-context arithmetic settings.

``precision`` is the relative number of orders kept when an exact element has
to be expanded into an infinite series (inverse or square root of a
non-monomial).  ``ramification_cap`` bounds the exponent denominators that
square roots may introduce.
"""

from __future__ import annotations

import contextlib
import os
from contextvars import ContextVar
from dataclasses import dataclass, replace
from fractions import Fraction


@dataclass(frozen=True)
class Settings:
    precision: Fraction = Fraction(16)
    ramification_cap: int = 8


def _initial() -> Settings:
    raw = os.environ.get("POSREP_TRUNC")
    if raw:
        try:
            return Settings(precision=Fraction(raw))
        except (ValueError, ZeroDivisionError):
            pass
    return Settings()


_current: ContextVar[Settings] = ContextVar("posrep_settings", default=_initial())


def settings() -> Settings:
    return _current.get()


@contextlib.contextmanager
def local_settings(precision=None, ramification_cap=None):
    """Temporarily override the settings for the current context."""
    s = _current.get()
    if precision is not None:
        s = replace(s, precision=Fraction(precision))
    if ramification_cap is not None:
        s = replace(s, ramification_cap=int(ramification_cap))
    if s.precision <= 0:
        raise ValueError("precision must be positive")
    if s.ramification_cap < 1:
        raise ValueError("ramification cap must be at least 1")
    token = _current.set(s)
    try:
        yield s
    finally:
        _current.reset(token)
