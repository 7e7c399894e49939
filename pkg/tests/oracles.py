"""Reference computations kept independent of the package's fast paths.

Nothing here uses ``ghcsearch.linalg``, the monomial ranking or the
generator assembly: vectors are built from explicit polynomial products
keyed by exponent tuples, and ranks come from plain-list elimination that
pivots on the last column first.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from pathlib import Path

DATA = Path(__file__).parent / "data"


def rank_reference(rows, p):
    """Rank over F_p; pivots chosen right-to-left, bottom-most row first."""
    work = [[int(x) % p for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    live = list(range(len(work)))
    for col in reversed(range(ncols)):
        pivot = None
        for i in reversed(live):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        live.remove(pivot)
        prow = work[pivot]
        inv = pow(prow[col], p - 2, p)
        for i in live:
            f = work[i][col]
            if f:
                c = f * inv % p
                row = work[i]
                for k in range(col + 1):
                    if prow[k]:
                        row[k] = (row[k] - c * prow[k]) % p
        rank += 1
    return rank


def monomials(nvars, d):
    """Exponent tuples of degree d, via combinations (any order)."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def poly_times_monomial(poly_terms, mono, p):
    out = {}
    for m, c in poly_terms.items():
        key = tuple(x + y for x, y in zip(m, mono))
        out[key] = (out.get(key, 0) + c) % p
    return out


def quotient_dim_reference(gh):
    """dim (M_a / (J_g M_a + I_o h(M_b)))_0 by brute-force span computation."""
    n, a, b, p = gh.n, list(gh.a), list(gh.b), gh.p
    nv = n + 1
    coords = {}
    for i, ai in enumerate(a):
        for m in monomials(nv, ai):
            coords[(i, m)] = len(coords)
    D = len(coords)
    vectors = []
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if bj > ai:
                continue
            for nu in monomials(nv, ai - bj):
                vec = [0] * D
                for m, c in poly_times_monomial(dict(gh.g[j].terms), nu, p).items():
                    vec[coords[(i, m)]] = c
                vectors.append(vec)
    for j, bj in enumerate(b):
        x0_power = (bj,) + (0,) * n
        for mu in monomials(nv, bj):
            if mu == x0_power:
                continue
            vec = [0] * D
            for i, ai in enumerate(a):
                for m, c in poly_times_monomial(dict(gh.h[i][j].terms), mu, p).items():
                    vec[coords[(i, m)]] = c
            vectors.append(vec)
    return D - rank_reference(vectors, p)


def binom_reference(x, y):
    """Binomial coefficient by the multiplicative formula (no math.comb)."""
    if y < 0 or y > x:
        return 0
    num = den = 1
    for t in range(1, y + 1):
        num *= x - y + t
        den *= t
    return num // den


def load_pairs():
    table = {}
    for line in (DATA / "pairs.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        n, _, rest = line.partition("|")
        table[int(n)] = [item.strip() for item in _split_items(rest)]
    return table


def load_triples():
    rows = []
    for line in (DATA / "verified_triples.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        n, a, b = (x.strip() for x in line.split("|"))
        rows.append((int(n), a, b))
    return rows


def _split_items(text):
    items, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        items.append(cur)
    return items
