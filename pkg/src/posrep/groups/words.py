"""Freely reduced words in a finite set of generators."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class Word:
    letters: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "Word":
        return cls(reduce_pairs(pairs))

    @classmethod
    def parse(cls, text: str, generators: Sequence[str]) -> "Word":
        return cls.from_pairs(parse_pairs(text, generators))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_pairs(self.letters + other.letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def format(self, generators: Sequence[str]) -> str:
        parts = []
        for g, e in self.letters:
            name = generators[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)


def reduce_pairs(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    stack: List[Tuple[int, int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            total = stack[-1][1] + e
            stack.pop()
            if total:
                stack.append((g, total))
        else:
            stack.append((g, e))
    return tuple(stack)


def parse_pairs(text: str, generators: Sequence[str]) -> List[Tuple[int, int]]:
    """Parse words like ``"a b A B"``, ``"abAB"`` or ``"a^2 b^-1"``.

    An upper-case letter stands for the inverse of the matching lower-case
    generator unless it is itself a generator name.
    """
    index = {name: i for i, name in enumerate(generators)}
    out: List[Tuple[int, int]] = []
    text = text.strip()
    if text in ("", "1", "e", "id"):
        return out
    for chunk in text.replace("*", " ").split():
        pos = 0
        while pos < len(chunk):
            name, exp, consumed = _take(chunk, pos, index)
            out.append((index[name[0]], name[1] * exp))
            pos += consumed
    return out


def _take(chunk: str, pos: int, index):
    # longest generator name at pos, then an optional ^k
    best = None
    for name in sorted(index, key=len, reverse=True):
        if chunk.startswith(name, pos):
            best = ((name, 1), len(name))
            break
    if best is None:
        ch = chunk[pos]
        if ch.isupper() and ch.lower() in index:
            best = ((ch.lower(), -1), 1)
        else:
            raise ValueError(f"unknown generator at {chunk[pos:]!r}")
    (name, sgn), used = best
    end = pos + used
    exp = 1
    m = re.match(r"\^\(?(-?\d+)\)?", chunk[end:])
    if m:
        exp = int(m.group(1))
        used += m.end()
    if exp == 0:
        raise ValueError("zero exponent in word")
    return (name, sgn), exp, used
