"""Multi-degree sequences and the operators used on them.

A multi-degree is stored as a flat non-decreasing tuple of positive
integers.  The caret notation ``(2^4,3^3,4)`` is accepted by
:meth:`MultiDegree.parse` and produced by :func:`format_multidegree`.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "MultiDegree",
    "PairParams",
    "normalize",
    "uplus",
    "bang",
    "tail_multiplicities",
    "hodge_level_k",
    "format_multidegree",
]

_ITEM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


class MultiDegree(tuple):
    """Immutable non-decreasing sequence of positive integers."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()) -> "MultiDegree":
        items = list(entries)
        if all(type(x) is int for x in items):
            items.sort()
            if items and items[0] < 1:
                raise ValueError(f"multi-degree entries must be positive, got {items[0]}")
            return super().__new__(cls, items)
        checked = []
        for x in items:
            if isinstance(x, bool) or int(x) != x:
                raise ValueError(f"multi-degree entries must be integers, got {x!r}")
            x = int(x)
            if x < 1:
                raise ValueError(f"multi-degree entries must be positive, got {x}")
            checked.append(x)
        return super().__new__(cls, sorted(checked))

    @classmethod
    def parse(cls, text: str) -> "MultiDegree":
        """Parse ``"(2^2,3)"``, ``"(2,2,3)"``, ``"2,2,3"`` or ``"()"``."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        elif "(" in body or ")" in body:
            raise ValueError(f"unbalanced parentheses in multi-degree {text!r}")
        if not body.strip():
            return cls()
        entries: list[int] = []
        for item in body.split(","):
            match = _ITEM.match(item)
            if match is None:
                raise ValueError(f"malformed multi-degree item {item!r} in {text!r}")
            value = int(match.group(1))
            reps = int(match.group(2)) if match.group(2) is not None else 1
            if value < 1:
                raise ValueError(f"multi-degree entries must be positive, got {value}")
            if reps < 1:
                raise ValueError(f"repetition count must be positive in {item!r}")
            entries.extend([value] * reps)
        return cls(entries)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def max(self) -> int:
        if not self:
            raise ValueError("max of an empty multi-degree")
        return self[-1]

    @property
    def min(self) -> int:
        if not self:
            raise ValueError("min of an empty multi-degree")
        return self[0]

    def __str__(self) -> str:
        return format_multidegree(self)

    def __repr__(self) -> str:
        return f"MultiDegree({format_multidegree(self)!r})"


def format_multidegree(a: Iterable[int]) -> str:
    """Caret form: values repeated at least twice are written ``v^count``."""
    counts = Counter(a)
    parts = []
    for value in sorted(counts):
        c = counts[value]
        parts.append(f"{value}^{c}" if c >= 2 else str(value))
    return "(" + ",".join(parts) + ")"


def normalize(raw: Iterable[int]) -> MultiDegree:
    return MultiDegree(raw)


def uplus(a: Iterable[int], a2: Iterable[int]) -> MultiDegree:
    """Sorted multiset union of two sequences."""
    return MultiDegree(list(a) + list(a2))


def bang(a: Iterable[int]) -> MultiDegree:
    """``(a_1)! ⊎ ... ⊎ (a_r)!`` where ``(c)! = (2, 3, ..., c)``."""
    out: list[int] = []
    for c in MultiDegree(a):
        if c < 2:
            raise ValueError(f"bang requires entries >= 2, got {c}")
        out.extend(range(2, c + 1))
    return MultiDegree(out)


def tail_multiplicities(a: Iterable[int], b: Iterable[int]) -> tuple[int, int]:
    """Occurrences of ``max(a)`` in ``a`` and in ``b``."""
    a = MultiDegree(a)
    if not a:
        raise ValueError("tail multiplicities need a non-empty a")
    top = a.max
    return a.count(top), tuple(b).count(top)


@dataclass(frozen=True)
class PairParams:
    """Ambient dimension ``n`` together with a Fano multi-degree ``a``."""

    n: int
    a: MultiDegree

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", MultiDegree(self.a))
        if self.n < 4:
            raise ValueError(f"n must be at least 4, got {self.n}")
        if not self.a:
            raise ValueError("a must be non-empty")
        if self.a.min < 2:
            raise ValueError(f"entries of a must be >= 2, got {format_multidegree(self.a)}")
        if self.a.total > self.n:
            raise ValueError(
                f"sum(a) = {self.a.total} exceeds n = {self.n} (not Fano)"
            )

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        return self.n - len(self.a)

    @property
    def k(self) -> int:
        return hodge_level_k(self)


def hodge_level_k(p: PairParams) -> int:
    """``floor((n - sum(a)) / max(a)) + 1``."""
    return (p.n - p.a.total) // p.a.max + 1
