"""Triple verification and the exhaustive searches over multi-degrees."""

from __future__ import annotations

import enum
import hashlib
import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .conditions import (
    NumericVerdict,
    TripleParams,
    check_numeric,
    check_numlin,
    excluded_small,
    is_covered_all_dimensions,
)
from .fpalgebra import quotient_dim, sample_witness
from .linalg import is_prime
from .multidegree import MultiDegree, PairParams, format_multidegree

__all__ = [
    "Status",
    "Trial",
    "VerificationReport",
    "SearchConfig",
    "NumlinWitness",
    "trial_seed",
    "verify_triple",
    "candidate_bs",
    "search_b",
    "enumerate_a",
    "enumerate_subsequences_with_max",
    "numlin_goal_witnesses",
    "search_pairs_numlin",
]


class Status(str, enum.Enum):
    VERIFIED = "Verified"
    INCONCLUSIVE = "Inconclusive"
    NUMERIC_FAIL = "NumericFail"


@dataclass(frozen=True)
class Trial:
    prime: int
    seed: int
    dim: int


@dataclass(frozen=True)
class VerificationReport:
    n: int
    a: MultiDegree
    b: MultiDegree
    numeric: NumericVerdict
    target: int
    trials: tuple[Trial, ...]
    status: Status

    @property
    def achieved(self) -> int | None:
        """Smallest quotient dimension seen, or ``None`` without trials."""
        return min((t.dim for t in self.trials), default=None)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "a": format_multidegree(self.a),
            "b": format_multidegree(self.b),
            "num1_ok": self.numeric.num1_ok,
            "num2_ok": self.numeric.num2_ok,
            "target": self.target,
            "trials": [{"p": t.prime, "seed": t.seed, "dim": t.dim} for t in self.trials],
            "achieved": self.achieved,
            "status": self.status.value,
        }


@dataclass(frozen=True)
class SearchConfig:
    primes: tuple[int, ...] = (101,)
    trials_per_prime: int = 10
    base_seed: int = 0
    n_max: int = 40
    method: str = "blocked"
    jobs: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(int(q) for q in self.primes))
        if not self.primes:
            raise ValueError("at least one prime is required")
        for q in self.primes:
            if not is_prime(q) or q >= 2**16:
                raise ValueError(f"{q} is not a prime below 2^16")
        if self.trials_per_prime < 0:
            raise ValueError("trials_per_prime must be non-negative")


def trial_seed(base_seed: int, n: int, a: Iterable[int], b: Iterable[int], prime: int, trial: int) -> int:
    """64-bit seed: first 8 bytes (big-endian) of SHA-256 of a canonical key."""
    key = f"{base_seed}|{n}|{format_multidegree(a)}|{format_multidegree(b)}|{prime}|{trial}"
    return int.from_bytes(hashlib.sha256(key.encode("ascii")).digest()[:8], "big")


def verify_triple(n: int, a: Iterable[int], b: Iterable[int], cfg: SearchConfig | None = None) -> VerificationReport:
    """Numeric checks, then random F_p trials until one reaches ``n + r - s``.

    One success certifies the triple; exhausting the trials proves nothing.
    """
    cfg = cfg or SearchConfig()
    t = TripleParams(n, MultiDegree(a), MultiDegree(b))
    verdict = check_numeric(t)
    if not verdict.ok:
        return VerificationReport(n, t.a, t.b, verdict, t.target, (), Status.NUMERIC_FAIL)
    trials = []
    status = Status.INCONCLUSIVE
    for prime in cfg.primes:
        for k in range(cfg.trials_per_prime):
            seed = trial_seed(cfg.base_seed, n, t.a, t.b, prime, k)
            gh = sample_witness(n, t.a, t.b, prime, seed)
            dim = quotient_dim(n, t.a, t.b, gh, prime, method=cfg.method)
            if dim < t.target:
                raise RuntimeError(
                    f"quotient dimension {dim} below the lower bound {t.target} "
                    f"for {t} (p={prime}, seed={seed})"
                )
            trials.append(Trial(prime, seed, dim))
            if dim == t.target:
                status = Status.VERIFIED
                break
        if status is Status.VERIFIED:
            break
    return VerificationReport(n, t.a, t.b, verdict, t.target, tuple(trials), status)


def candidate_bs(n: int, a: Iterable[int]) -> Iterator[MultiDegree]:
    """All ``b`` with ``n - |b| = k`` passing the numeric checks, lexicographically."""
    pair = PairParams(n, MultiDegree(a))
    a = pair.a
    s = n - pair.k
    top = a.max
    caps = [a[i] if i < len(a) else top for i in range(s)]

    def rec(prefix: list[int], lo: int) -> Iterator[list[int]]:
        i = len(prefix)
        if i == s:
            yield prefix
            return
        for v in range(lo, caps[i] + 1):
            yield from rec(prefix + [v], v)

    for seq in rec([], 1):
        b = MultiDegree(seq)
        if check_numeric(TripleParams(n, a, b)).ok:
            yield b


def _verify_args(args: tuple) -> VerificationReport:
    n, a, b, cfg = args
    return verify_triple(n, a, b, cfg)


def search_b(
    n: int, a: Iterable[int], cfg: SearchConfig | None = None, first: bool = False
) -> list[VerificationReport]:
    """Verified triples ``(n, a, b)`` with codimension ``l = k``."""
    cfg = cfg or SearchConfig()
    pair = PairParams(n, MultiDegree(a))
    if excluded_small(pair):
        raise ValueError(
            f"(n, a) = ({n}, {format_multidegree(pair.a)}) has m = {pair.m} <= 2k = {2 * pair.k}"
        )
    candidates = list(candidate_bs(n, pair.a))
    found = []
    if cfg.jobs > 1 and not first:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = pool.map(_verify_args, [(n, pair.a, b, cfg) for b in candidates])
            found = [rep for rep in reports if rep.status is Status.VERIFIED]
        return found
    for b in candidates:
        rep = verify_triple(n, pair.a, b, cfg)
        if rep.status is Status.VERIFIED:
            found.append(rep)
            if first:
                break
    return found


def enumerate_a(n: int) -> list[MultiDegree]:
    """Non-decreasing sequences with entries >= 2 and sum <= n, lexicographically."""
    if n < 4:
        raise ValueError("n must be at least 4")
    out: list[MultiDegree] = []

    def rec(prefix: tuple[int, ...], lo: int, budget: int) -> None:
        for v in range(lo, budget + 1):
            seq = prefix + (v,)
            out.append(MultiDegree(seq))
            rec(seq, v, budget - v)

    rec((), 2, n)
    return out


def enumerate_subsequences_with_max(a: Iterable[int]) -> list[tuple[MultiDegree, MultiDegree]]:
    """Distinct sub-multisets containing ``max(a)``, each with its complement."""
    a = MultiDegree(a)
    if not a:
        raise ValueError("a must be non-empty")
    counts = Counter(a)
    values = sorted(counts)
    ranges = [range(counts[v] + 1) if v != a.max else range(1, counts[v] + 1) for v in values]
    out = []
    for choice in itertools.product(*ranges):
        sub = MultiDegree(itertools.chain.from_iterable([v] * c for v, c in zip(values, choice)))
        rest = MultiDegree(
            itertools.chain.from_iterable([v] * (counts[v] - c) for v, c in zip(values, choice))
        )
        out.append((sub, rest))
    out.sort(key=lambda pr: (len(pr[0]), pr[0]))
    return out


@dataclass(frozen=True)
class NumlinWitness:
    a_prime: MultiDegree
    a_double_prime: MultiDegree
    lam: int
    b: MultiDegree


def _iter_goal_witnesses(n: int, a: Iterable[int]) -> Iterator[NumlinWitness]:
    pair = PairParams(n, MultiDegree(a))
    for sub, rest in enumerate_subsequences_with_max(pair.a):
        lam = pair.k + len(rest)
        b = check_numlin(n, pair.a, sub, lam)
        if b is not None:
            yield NumlinWitness(sub, rest, lam, b)


def numlin_goal_witnesses(n: int, a: Iterable[int]) -> list[NumlinWitness]:
    """Sub-multisets for which the linear-subspace construction gives ``l = k``."""
    return list(_iter_goal_witnesses(n, a))


def search_pairs_numlin(n_max: int) -> dict[int, list[MultiDegree]]:
    """Pairs not covered in every dimension but reached by the linear-subspace route."""
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    table: dict[int, list[MultiDegree]] = {}
    for n in range(4, n_max + 1):
        hits = []
        for a in enumerate_a(n):
            pair = PairParams(n, a)
            if excluded_small(pair) or is_covered_all_dimensions(pair):
                continue
            if next(_iter_goal_witnesses(n, a), None) is not None:
                hits.append(a)
        if hits:
            table[n] = hits
    return table
