"""Exact integer predicates on pairs ``(n, a)`` and triples ``(n, a, b)``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .multidegree import (
    MultiDegree,
    PairParams,
    bang,
    format_multidegree,
    tail_multiplicities,
    uplus,
)

__all__ = [
    "TripleParams",
    "NumericVerdict",
    "check_numeric",
    "delta",
    "delta_minus",
    "contains_linear_subspace",
    "check_numlin",
    "multiset_complement",
    "is_covered_all_dimensions",
    "excluded_small",
    "excluded_small_disjunction",
]


@dataclass(frozen=True)
class TripleParams:
    n: int
    a: MultiDegree
    b: MultiDegree

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", MultiDegree(self.a))
        object.__setattr__(self, "b", MultiDegree(self.b))
        if not self.a or self.a.min < 2:
            raise ValueError(f"a must be non-empty with entries >= 2, got {self.a}")
        if not self.b:
            raise ValueError("b must be non-empty")
        r, s = len(self.a), len(self.b)
        if not r < s < self.n:
            raise ValueError(f"need r < s < n, got r={r}, s={s}, n={self.n}")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def m(self) -> int:
        return self.n - self.r

    @property
    def l(self) -> int:  # noqa: E743
        return self.n - self.s

    @property
    def target(self) -> int:
        """Smallest possible quotient dimension, ``n + r - s``."""
        return self.n + self.r - self.s


@dataclass(frozen=True)
class NumericVerdict:
    num1_ok: bool
    num2_ok: bool
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.num1_ok and self.num2_ok


def check_numeric(t: TripleParams) -> NumericVerdict:
    a, b = t.a, t.b
    ta, tb = tail_multiplicities(a, b)
    detail = {
        "a_ge_b_prefix": all(a[i] >= b[i] for i in range(t.r)),
        "ar_ge_bs": a.max >= b.max,
        "m_minus_2l_ge_tb_minus_ta": t.m - 2 * t.l >= tb - ta,
        "m_gt_2l": t.m > 2 * t.l,
        "m": t.m,
        "l": t.l,
        "t_a": ta,
        "t_b": tb,
    }
    return NumericVerdict(
        num1_ok=detail["a_ge_b_prefix"] and detail["ar_ge_bs"],
        num2_ok=detail["m_minus_2l_ge_tb_minus_ta"] and detail["m_gt_2l"],
        detail=detail,
    )


def delta(n: int, a: Iterable[int], ell: int) -> int:
    """Expected dimension of the variety of ``ell``-planes (may be negative)."""
    if ell < 0:
        raise ValueError(f"ell must be non-negative, got {ell}")
    return (ell + 1) * (n - ell) - sum(comb(ai + ell, ell) for ai in a)


def delta_minus(n: int, a: Iterable[int], ell: int) -> int:
    a = tuple(a)
    return min(delta(n, a, ell), n - 2 * ell - len(a))


def contains_linear_subspace(n: int, a: Iterable[int], ell: int) -> bool:
    """Whether a general complete intersection of type ``a`` in P^n contains an ell-plane."""
    return delta_minus(n, a, ell) >= 0


def multiset_complement(a: Iterable[int], sub: Iterable[int]) -> MultiDegree:
    """``a`` minus ``sub`` as multisets; raises if ``sub`` is not contained in ``a``."""
    rest = Counter(a)
    rest.subtract(Counter(sub))
    if any(c < 0 for c in rest.values()):
        raise ValueError(
            f"{format_multidegree(sub)} is not a sub-multiset of {format_multidegree(a)}"
        )
    return MultiDegree(rest.elements())


def check_numlin(
    n: int, a: Iterable[int], a_prime: Iterable[int], lam: int
) -> Optional[MultiDegree]:
    """Linear-subspace construction of ``b`` from a sub-multiset ``a_prime`` of ``a``.

    Returns ``(1^(n - lam)) ⊎ a''`` when the three inequalities hold, where
    ``a''`` is the complement of ``a_prime``, and ``None`` otherwise.
    """
    pair = PairParams(n, MultiDegree(a))
    a = pair.a
    a_prime = MultiDegree(a_prime)
    if not a_prime or a_prime.max != a.max:
        raise ValueError("a_prime must contain max(a)")
    a_pp = multiset_complement(a, a_prime)
    if lam < 1:
        raise ValueError(f"lambda must be positive, got {lam}")
    ok = (
        delta_minus(n - len(a_prime), bang(a_prime), lam - 1) >= 0
        and len(a_pp) < lam
        and n - len(a) > 2 * (lam - len(a_pp))
    )
    if not ok:
        return None
    b = uplus([1] * (n - lam), a_pp)
    triple = TripleParams(n, a, b)
    assert triple.l == lam - len(a_pp)
    assert check_numeric(triple).ok, f"numlin produced a failing triple {triple}"
    return b


def is_covered_all_dimensions(p: PairParams) -> bool:
    """Pairs already handled in every dimension: ``k = 1`` or ``a = (2^r)``."""
    return p.k == 1 or all(x == 2 for x in p.a)


def excluded_small(p: PairParams) -> bool:
    """``m <= 2k``; these pairs are outside the search."""
    return p.m <= 2 * p.k


def excluded_small_disjunction(p: PairParams) -> bool:
    """Closed-form description of :func:`excluded_small`, kept as a cross-check."""
    return (
        p.m <= 2
        or p.a == (2,)
        or (p.a == (2, 2) and p.m % 2 == 0)
    )
