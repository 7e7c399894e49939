"""Graded pieces over F_p[x_0, ..., x_n] and the quotient-dimension test.

Monomials of a fixed degree are ordered graded-lexicographically with
``x_0 > x_1 > ... > x_n``, so ``x_0^d`` is always basis slot 0.  A sampled
witness ``(g, h)`` lives in ``(I_o M_b)_0 x Hom(M_b, N_a)_0``; the test
computes ``dim (M_a / (J_g M_a + I_o h(M_b)))_0``.

Random stream discipline (bit-exact across platforms): a PCG64 bit
generator seeded with the trial seed yields raw 64-bit words; a word ``w``
is accepted when ``w < floor(2^64 / p) * p`` and maps to ``w % p``.
Coefficients are drawn for free monomials only, in basis order, all of
``g_1 .. g_s`` first, then ``h`` row by row (``h_11, h_12, ..., h_rs``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linalg import rank_fp, rref_mod_p
from .multidegree import MultiDegree, format_multidegree

Monomial = tuple

__all__ = [
    "monomial_basis",
    "monomial_index",
    "HomogPoly",
    "GHData",
    "GradedBasisIndex",
    "FpStream",
    "sample_g",
    "sample_h",
    "sample_witness",
    "assemble_generators",
    "quotient_dim",
    "quotient_breakdown",
    "format_witness",
    "parse_witness",
]


# -- monomials ---------------------------------------------------------------

def _basis_rec(nvars: int, d: int) -> list[tuple[int, ...]]:
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        out.extend((e,) + rest for rest in _basis_rec(nvars - 1, d - e))
    return out


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[Monomial, ...]:
    """Exponent vectors of all degree-``d`` monomials in ``x_0..x_n``."""
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")
    return tuple(_basis_rec(n + 1, d))


@lru_cache(maxsize=None)
def _exponents(n: int, d: int) -> np.ndarray:
    arr = np.array(monomial_basis(n, d), dtype=np.int64).reshape(-1, n + 1)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _binom_table(size: int) -> np.ndarray:
    t = np.zeros((size + 1, size + 1), dtype=np.int64)
    for x in range(size + 1):
        for y in range(x + 1):
            t[x, y] = comb(x, y)
    return t


def monomial_index(exps: np.ndarray, d: int) -> np.ndarray:
    """Position of each exponent vector (last axis) in ``monomial_basis(n, d)``.

    Monomials before ``x^e`` with the same prefix but a larger exponent at
    variable ``k`` number ``C(rem - e_k - 1 + v - 1, v - 1)``, where ``v``
    variables remain and ``rem`` is the degree left for them.
    """
    exps = np.asarray(exps, dtype=np.int64)
    nvars = exps.shape[-1]
    table = _binom_table(d + nvars)
    idx = np.zeros(exps.shape[:-1], dtype=np.int64)
    rem = np.full(exps.shape[:-1], d, dtype=np.int64)
    for k in range(nvars - 1):
        v = nvars - k
        e = exps[..., k]
        top = rem - e - 1
        ok = top >= 0
        idx += np.where(ok, table[np.where(ok, top + v - 1, 0), v - 1], 0)
        rem = rem - e
    return idx


@lru_cache(maxsize=None)
def _mult_table(n: int, d1: int, d2: int) -> np.ndarray:
    """``table[u, v]`` = index in degree ``d1+d2`` of monomial ``u`` times ``v``."""
    e1, e2 = _exponents(n, d1), _exponents(n, d2)
    prod = e1[:, None, :] + e2[None, :, :]
    out = monomial_index(prod, d1 + d2)
    out.setflags(write=False)
    return out


def _format_monomial(exps: Sequence[int]) -> str:
    parts = []
    for var, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{var}")
        elif e > 1:
            parts.append(f"x{var}^{e}")
    return "*".join(parts) if parts else "1"


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_monomial(text: str, n: int) -> tuple[int, ...]:
    exps = [0] * (n + 1)
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        match = _VAR.match(factor)
        if match is None:
            raise ValueError(f"malformed monomial factor {factor!r}")
        var = int(match.group(1))
        if var > n:
            raise ValueError(f"variable x{var} out of range for n={n}")
        exps[var] += int(match.group(2) or 1)
    return tuple(exps)


# -- polynomials ---------------------------------------------------------------

@dataclass(frozen=True)
class HomogPoly:
    """Sparse homogeneous polynomial of fixed degree over F_p."""

    n: int
    degree: int
    p: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for mono, c in self.terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.n + 1 or sum(mono) != self.degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} is not of degree {self.degree} in {self.n + 1} variables")
            c = int(c) % self.p
            if c:
                clean[mono] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def zero(cls, n: int, degree: int, p: int) -> "HomogPoly":
        return cls(n, degree, p, {})

    @classmethod
    def from_dense(cls, n: int, degree: int, p: int, coeffs: Sequence[int]) -> "HomogPoly":
        basis = monomial_basis(n, degree)
        if len(coeffs) != len(basis):
            raise ValueError(f"expected {len(basis)} coefficients, got {len(coeffs)}")
        return cls(n, degree, p, {m: int(c) for m, c in zip(basis, coeffs) if int(c) % p})

    def dense(self) -> np.ndarray:
        vec = np.zeros(comb(self.n + self.degree, self.n), dtype=np.int64)
        if self.terms:
            exps = np.array(list(self.terms), dtype=np.int64)
            vec[monomial_index(exps, self.degree)] = list(self.terms.values())
        return vec

    def coefficient(self, mono: Iterable[int]) -> int:
        return self.terms.get(tuple(mono), 0)

    def x0_power_coefficient(self) -> int:
        return self.coefficient((self.degree,) + (0,) * self.n)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "HomogPoly") -> None:
        if self.n != other.n or self.p != other.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        degree = self.degree if not self.is_zero() else other.degree
        return HomogPoly(self.n, degree, self.p, terms)

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other)
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                terms[mono] = (terms.get(mono, 0) + c1 * c2) % self.p
        return HomogPoly(self.n, self.degree + other.degree, self.p, terms)

    def scale(self, c: int) -> "HomogPoly":
        return HomogPoly(self.n, self.degree, self.p, {m: v * c for m, v in self.terms.items()})

    def format(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{_format_monomial(m)}:{c}" for m, c in self.terms.items())

    def __str__(self) -> str:
        return self.format()


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class GHData:
    """A point ``(g, h)`` of the witness space for ``(n, a, b)`` over F_p."""

    n: int
    a: MultiDegree
    b: MultiDegree
    p: int
    g: tuple[HomogPoly, ...]
    h: tuple[tuple[HomogPoly, ...], ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", MultiDegree(self.a))
        object.__setattr__(self, "b", MultiDegree(self.b))
        self.validate()

    def validate(self) -> None:
        n, a, b, p = self.n, self.a, self.b, self.p
        r, s = len(a), len(b)
        if len(self.g) != s:
            raise ValueError(f"g must have {s} entries, got {len(self.g)}")
        if len(self.h) != r or any(len(row) != s for row in self.h):
            raise ValueError(f"h must be a {r}x{s} matrix")
        for j, (gj, bj) in enumerate(zip(self.g, b)):
            if gj.n != n or gj.p != p or gj.degree != bj:
                raise ValueError(f"g[{j + 1}] must be a degree-{bj} form over F_{p} in x0..x{n}")
            if gj.x0_power_coefficient():
                raise ValueError(f"g[{j + 1}] does not vanish at o (x0^{bj} coefficient nonzero)")
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                hij = self.h[i][j]
                if hij.n != n or hij.p != p:
                    raise ValueError(f"h[{i + 1},{j + 1}] lives in the wrong ring")
                if ai < bj:
                    if not hij.is_zero():
                        raise ValueError(f"h[{i + 1},{j + 1}] must be zero since a_i < b_j")
                    continue
                if hij.degree != ai - bj and not hij.is_zero():
                    raise ValueError(f"h[{i + 1},{j + 1}] must have degree {ai - bj}")
                if i == r - 1 and hij.coefficient((ai - bj,) + (0,) * n):
                    raise ValueError(f"h[{r},{j + 1}] must lie in I_o")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def s(self) -> int:
        return len(self.b)

    @classmethod
    def zero(cls, n: int, a: Iterable[int], b: Iterable[int], p: int) -> "GHData":
        a, b = MultiDegree(a), MultiDegree(b)
        g = tuple(HomogPoly.zero(n, bj, p) for bj in b)
        h = tuple(
            tuple(HomogPoly.zero(n, max(ai - bj, 0), p) for bj in b) for ai in a
        )
        return cls(n, a, b, p, g, h)


class FpStream:
    """Uniform F_p draws from a PCG64 raw stream (see module docstring)."""

    def __init__(self, seed: int, p: int) -> None:
        self.p = p
        self._bits = np.random.PCG64(seed)
        self._limit = (2**64 // p) * p

    def draw(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.int64)
        filled = 0
        while filled < count:
            raw = self._bits.random_raw(count - filled)
            raw = np.atleast_1d(np.asarray(raw, dtype=np.uint64))
            if self._limit < 2**64:
                raw = raw[raw < np.uint64(self._limit)]
            out[filled : filled + raw.size] = (raw % np.uint64(self.p)).astype(np.int64)
            filled += raw.size
        return out


def _random_form(n: int, d: int, p: int, stream: FpStream, in_io: bool) -> HomogPoly:
    size = comb(n + d, n)
    coeffs = np.zeros(size, dtype=np.int64)
    start = 1 if in_io else 0
    if size > start:
        coeffs[start:] = stream.draw(size - start)
    return HomogPoly.from_dense(n, d, p, coeffs)


def sample_g(n: int, b: Iterable[int], p: int, stream: FpStream) -> tuple[HomogPoly, ...]:
    """Random ``g_j`` in ``(I_o)_{b_j}``: uniform off the ``x_0^{b_j}`` slot."""
    return tuple(_random_form(n, bj, p, stream, in_io=True) for bj in MultiDegree(b))


def sample_h(
    n: int, a: Iterable[int], b: Iterable[int], p: int, stream: FpStream
) -> tuple[tuple[HomogPoly, ...], ...]:
    """Random ``h`` in ``Hom(M_b, N_a)_0``; the last row is taken in ``I_o``."""
    a, b = MultiDegree(a), MultiDegree(b)
    rows = []
    for i, ai in enumerate(a):
        last = i == len(a) - 1
        row = []
        for bj in b:
            if ai < bj:
                row.append(HomogPoly.zero(n, 0, p))
            else:
                row.append(_random_form(n, ai - bj, p, stream, in_io=last))
        rows.append(tuple(row))
    return tuple(rows)


def sample_witness(n: int, a: Iterable[int], b: Iterable[int], p: int, seed: int) -> GHData:
    stream = FpStream(seed, p)
    g = sample_g(n, b, p, stream)
    h = sample_h(n, a, b, p, stream)
    return GHData(n, MultiDegree(a), MultiDegree(b), p, g, h, seed=seed)


# -- assembly and quotient dimension -------------------------------------------

@dataclass(frozen=True)
class GradedBasisIndex:
    """Coordinates of ``(M_a)_0 = R_{a_1} + ... + R_{a_r}``."""

    n: int
    a: MultiDegree
    sizes: tuple[int, ...]
    offsets: tuple[int, ...]

    @classmethod
    def build(cls, n: int, a: Iterable[int]) -> "GradedBasisIndex":
        a = MultiDegree(a)
        sizes = tuple(comb(n + ai, n) for ai in a)
        offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(sizes)[:-1]])) if a else ()
        return cls(n, a, sizes, offsets)

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    def coordinate(self, component: int, mono: Iterable[int]) -> int:
        mono = tuple(mono)
        d = self.a[component]
        if sum(mono) != d or len(mono) != self.n + 1:
            raise ValueError(f"monomial {mono} is not in R_{d}")
        return self.offsets[component] + int(monomial_index(np.array(mono), d))


def _multiples(n: int, f: np.ndarray, fdeg: int, mdeg: int, drop_x0_power: bool = False) -> np.ndarray:
    """Rows ``mu * f`` for every degree-``mdeg`` monomial ``mu``, in ``R_{fdeg+mdeg}``."""
    table = _mult_table(n, mdeg, fdeg)
    if drop_x0_power:
        table = table[1:]
    out = np.zeros((table.shape[0], comb(n + fdeg + mdeg, n)), dtype=np.int64)
    nz = np.flatnonzero(f)
    if nz.size and table.shape[0]:
        out[np.arange(table.shape[0])[:, None], table[:, nz]] = f[nz][None, :]
    return out


def _type1_block(n: int, d: int, b: MultiDegree, gdense: Sequence[np.ndarray]) -> np.ndarray:
    parts = [
        _multiples(n, gj, bj, d - bj)
        for bj, gj in zip(b, gdense)
        if bj <= d
    ]
    if not parts:
        return np.zeros((0, comb(n + d, n)), dtype=np.int64)
    return np.vstack(parts)


def _type2_component(n: int, ai: int, b: MultiDegree, hrow: Sequence[HomogPoly]) -> np.ndarray:
    parts = []
    for bj, hij in zip(b, hrow):
        nrows = comb(n + bj, n) - 1
        if ai < bj or hij.is_zero():
            parts.append(np.zeros((nrows, comb(n + ai, n)), dtype=np.int64))
        else:
            parts.append(_multiples(n, hij.dense(), ai - bj, bj, drop_x0_power=True))
    return np.vstack(parts)


def assemble_generators(
    n: int, a: Iterable[int], b: Iterable[int], gh: GHData, idx: GradedBasisIndex | None = None
) -> np.ndarray:
    """Spanning vectors of ``(J_g M_a + I_o h(M_b))_0`` as rows of a dense matrix.

    Type-1 rows (``nu * g_j`` in one component) come first, component by
    component; Type-2 rows (``mu * h(e_j)`` for ``mu`` in ``(I_o)_{b_j}``)
    follow, ordered by ``j`` then ``mu``.
    """
    a, b = MultiDegree(a), MultiDegree(b)
    if (gh.n, gh.a, gh.b) != (n, a, b):
        raise ValueError("witness does not match (n, a, b)")
    idx = idx or GradedBasisIndex.build(n, a)
    if idx.a != a or idx.n != n:
        raise ValueError("basis index does not match (n, a)")
    D = idx.dim
    gdense = [gj.dense() for gj in gh.g]
    blocks = []
    for i, ai in enumerate(a):
        t1 = _type1_block(n, ai, b, gdense)
        full = np.zeros((t1.shape[0], D), dtype=np.int64)
        full[:, idx.offsets[i] : idx.offsets[i] + idx.sizes[i]] = t1
        blocks.append(full)
    t2 = np.zeros((sum(comb(n + bj, n) - 1 for bj in b), D), dtype=np.int64)
    for i, ai in enumerate(a):
        t2[:, idx.offsets[i] : idx.offsets[i] + idx.sizes[i]] = _type2_component(n, ai, b, gh.h[i])
    blocks.append(t2)
    return np.vstack(blocks)


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    if x.shape[1] == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    if x.shape[1] * (p - 1) ** 2 < 2**53:
        return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64) % p
    return (x @ y) % p


def quotient_breakdown(gh: GHData, backend: str | None = None) -> dict:
    """Quotient dimension computed block by block.

    ``(J_g M_a)_0`` is block diagonal, one copy of ``(J_g)_{a_i}`` per
    component, so each distinct degree is row-reduced once and the Type-2
    vectors are reduced modulo those echelon forms before a final rank.
    """
    n, a, b, p = gh.n, gh.a, gh.b, gh.p
    gdense = [gj.dense() for gj in gh.g]
    echelons = {}
    for d in sorted(set(a)):
        rows, pivots = rref_mod_p(_type1_block(n, d, b, gdense), p, backend=backend)
        free = np.setdiff1d(np.arange(comb(n + d, n)), pivots)
        echelons[d] = (rows, np.array(pivots, dtype=np.int64), free)
    residual_parts = []
    type1_quotient = 0
    for i, ai in enumerate(a):
        rows, pivots, free = echelons[ai]
        type1_quotient += free.size
        vecs = _type2_component(n, ai, b, gh.h[i])
        if pivots.size:
            red = (vecs[:, free] - _matmul_mod(vecs[:, pivots], rows[:, free], p)) % p
        else:
            red = vecs[:, free] % p
        residual_parts.append(red)
    residual = np.hstack(residual_parts)
    type2_rank = rank_fp(residual, p, backend=backend) if residual.size else 0
    return {
        "D": sum(comb(n + ai, n) for ai in a),
        "type1_rank": sum(comb(n + ai, n) for ai in a) - type1_quotient,
        "type1_quotient": type1_quotient,
        "type2_rank": type2_rank,
        "quotient_dim": type1_quotient - type2_rank,
    }


def quotient_dim(
    n: int,
    a: Iterable[int],
    b: Iterable[int],
    gh: GHData,
    p: int | None = None,
    method: str = "blocked",
    backend: str | None = None,
) -> int:
    """``dim_{F_p} (M_a / (J_g M_a + I_o h(M_b)))_0`` for the witness ``gh``.

    ``method="dense"`` ranks the full generator matrix from
    :func:`assemble_generators`; ``"blocked"`` (default) gives the same
    number far faster at realistic sizes.
    """
    a, b = MultiDegree(a), MultiDegree(b)
    if (gh.n, gh.a, gh.b) != (n, a, b):
        raise ValueError("witness does not match (n, a, b)")
    if p is not None and p != gh.p:
        raise ValueError(f"witness is over F_{gh.p}, not F_{p}")
    if method == "blocked":
        return quotient_breakdown(gh, backend=backend)["quotient_dim"]
    if method == "dense":
        gens = assemble_generators(n, a, b, gh)
        return gens.shape[1] - rank_fp(gens, gh.p, backend=backend)
    raise ValueError(f"unknown method {method!r}")


# -- witness text format -------------------------------------------------------

def format_witness(gh: GHData) -> str:
    """Audit dump of a witness; :func:`parse_witness` reads it back."""
    lines = [
        "witness v1",
        f"p {gh.p}",
        f"seed {gh.seed if gh.seed is not None else '-'}",
        f"n {gh.n}",
        f"a {format_multidegree(gh.a)}",
        f"b {format_multidegree(gh.b)}",
    ]
    for j, gj in enumerate(gh.g, start=1):
        lines.append(f"g[{j}] = {gj.format()}")
    for i, row in enumerate(gh.h, start=1):
        for j, hij in enumerate(row, start=1):
            lines.append(f"h[{i},{j}] = {hij.format()}")
    return "\n".join(lines) + "\n"


def _parse_terms(text: str, n: int, d: int, p: int) -> HomogPoly:
    text = text.strip()
    if text == "0":
        return HomogPoly.zero(n, d, p)
    terms: dict[Monomial, int] = {}
    for item in text.split():
        mono, _, coeff = item.rpartition(":")
        if not mono:
            raise ValueError(f"malformed term {item!r}")
        exps = _parse_monomial(mono, n)
        terms[exps] = terms.get(exps, 0) + int(coeff)
    return HomogPoly(n, d, p, terms)


def parse_witness(text: str) -> GHData:
    header: dict[str, str] = {}
    polys: dict[str, str] = {}
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != "witness v1":
        raise ValueError("not a witness v1 block")
    for ln in lines[1:]:
        if "=" in ln:
            key, _, body = ln.partition("=")
            polys[key.strip()] = body
        else:
            key, _, value = ln.partition(" ")
            header[key] = value.strip()
    p, n = int(header["p"]), int(header["n"])
    a, b = MultiDegree.parse(header["a"]), MultiDegree.parse(header["b"])
    seed = None if header.get("seed", "-") == "-" else int(header["seed"])
    g = tuple(_parse_terms(polys.get(f"g[{j}]", "0"), n, bj, p) for j, bj in enumerate(b, 1))
    h = tuple(
        tuple(
            _parse_terms(polys.get(f"h[{i},{j}]", "0"), n, max(ai - bj, 0), p)
            for j, bj in enumerate(b, 1)
        )
        for i, ai in enumerate(a, 1)
    )
    return GHData(n, a, b, p, g, h, seed=seed)
