"""Command-line front end.

Exit codes: 0 success or Verified, 1 usage/parse error, 2 structural error
or failing numeric check, 3 Inconclusive.

Machine output (``--format machine``) is one JSON object per line with
sorted keys.  Every record carries ``command``, ``params`` and ``result``;
``wall_time`` is added only with ``--timing`` so that repeated runs stay
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from typing import Sequence

from .conditions import (
    TripleParams,
    check_numeric,
    check_numlin,
    delta,
    delta_minus,
    excluded_small,
    is_covered_all_dimensions,
)
from .fpalgebra import (
    format_witness,
    parse_witness,
    quotient_breakdown,
    quotient_dim,
    sample_witness,
)
from .linalg import BACKEND, is_prime
from .multidegree import MultiDegree, PairParams, format_multidegree
from .search import (
    SearchConfig,
    Status,
    VerificationReport,
    enumerate_a,
    numlin_goal_witnesses,
    search_b,
    search_pairs_numlin,
    verify_triple,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _multidegree(text: str) -> MultiDegree:
    try:
        return MultiDegree.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prime(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(q) or q >= 2**16:
        raise argparse.ArgumentTypeError(f"{q} is not a prime below 2^16")
    return q


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _emit(args, command: str, params: dict, result: dict, human: list[str], started: float) -> None:
    if args.format == "machine":
        record = {"command": command, "params": params, "result": result}
        if args.timing:
            record["wall_time"] = round(time.perf_counter() - started, 6)
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        print("\n".join(human))
        if args.timing:
            print(f"wall time: {time.perf_counter() - started:.3f}s")


def _report_lines(rep: VerificationReport) -> list[str]:
    lines = [
        f"n = {rep.n}, a = {format_multidegree(rep.a)}, b = {format_multidegree(rep.b)}",
        f"numeric: degree bounds {'ok' if rep.numeric.num1_ok else 'FAIL'}, "
        f"dimension bounds {'ok' if rep.numeric.num2_ok else 'FAIL'}",
        f"target n+r-s = {rep.target}",
    ]
    if rep.trials:
        lines.append("  p      seed                  dim")
        for t in rep.trials:
            lines.append(f"  {t.prime:<6} {t.seed:<21} {t.dim}")
    lines.append(f"status: {rep.status.value}")
    return lines


def _config(args) -> SearchConfig:
    return SearchConfig(
        primes=tuple(args.p or [101]),
        trials_per_prime=args.trials,
        base_seed=args.seed,
        method=args.method,
        jobs=getattr(args, "jobs", 1),
    )


def _cfg_params(cfg: SearchConfig) -> dict:
    return {"primes": list(cfg.primes), "trials": cfg.trials_per_prime, "seed": cfg.base_seed}


def cmd_delta(args) -> int:
    d, dm = delta(args.n, args.a, args.ell), delta_minus(args.n, args.a, args.ell)
    params = {"n": args.n, "a": format_multidegree(args.a), "ell": args.ell}
    result = {"delta": d, "delta_minus": dm, "contains_linear_subspace": dm >= 0}
    human = [f"delta = {d}", f"delta_minus = {dm}",
             f"general complete intersection contains a {args.ell}-plane: {'yes' if dm >= 0 else 'no'}"]
    _emit(args, "delta", params, result, human, args._started)
    return EXIT_OK


def cmd_check_conditions(args) -> int:
    t = TripleParams(args.n, args.a, args.b)
    v = check_numeric(t)
    params = {"n": args.n, "a": format_multidegree(t.a), "b": format_multidegree(t.b)}
    result = {"num1_ok": v.num1_ok, "num2_ok": v.num2_ok, "ok": v.ok, "detail": v.detail,
              "target": t.target}
    human = [f"m = {t.m}, l = {t.l}, t_a = {v.detail['t_a']}, t_b = {v.detail['t_b']}"]
    for key in ("a_ge_b_prefix", "ar_ge_bs", "m_minus_2l_ge_tb_minus_ta", "m_gt_2l"):
        human.append(f"  {key}: {v.detail[key]}")
    try:
        pair = PairParams(args.n, t.a)
    except ValueError:
        pair = None
    if pair is not None:
        result.update(k=pair.k, goal=(t.l == pair.k), excluded=excluded_small(pair),
                      covered_all_dimensions=is_covered_all_dimensions(pair))
        human.append(f"k = {pair.k}, l == k: {t.l == pair.k}, m <= 2k: {excluded_small(pair)}, "
                     f"covered in all dimensions: {is_covered_all_dimensions(pair)}")
    human.append(f"numeric conditions: {'pass' if v.ok else 'FAIL'}")
    _emit(args, "check-conditions", params, result, human, args._started)
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_numlin(args) -> int:
    pair = PairParams(args.n, args.a)
    params = {"n": args.n, "a": format_multidegree(pair.a)}
    if args.a_prime is not None:
        if args.lam is None:
            raise ValueError("--lam is required with --a-prime")
        b = check_numlin(args.n, pair.a, args.a_prime, args.lam)
        params.update(a_prime=format_multidegree(args.a_prime), lam=args.lam)
        found = [] if b is None else [{"a_prime": format_multidegree(args.a_prime),
                                       "lam": args.lam, "b": format_multidegree(b)}]
    else:
        found = [{"a_prime": format_multidegree(w.a_prime), "lam": w.lam,
                  "b": format_multidegree(w.b)} for w in numlin_goal_witnesses(args.n, pair.a)]
    result = {"k": pair.k, "witnesses": found}
    human = [f"k = {pair.k}"]
    human += [f"a' = {w['a_prime']}, lambda = {w['lam']}  ->  b = {w['b']}" for w in found]
    if not found:
        human.append("no b from the linear-subspace construction")
    _emit(args, "numlin", params, result, human, args._started)
    return EXIT_OK if found else EXIT_FAIL


def cmd_dim(args) -> int:
    if args.witness:
        with open(args.witness) as fh:
            gh = parse_witness(fh.read())
    else:
        if args.n is None or args.a is None or args.b is None:
            raise ValueError("--n, --a and --b are required unless --witness is given")
        TripleParams(args.n, args.a, args.b)
        gh = sample_witness(args.n, args.a, args.b, args.p[0] if args.p else 101, args.seed)
    if args.dump_witness:
        with open(args.dump_witness, "w") as fh:
            fh.write(format_witness(gh))
    if args.method == "dense":
        info = {"D": sum(comb(gh.n + ai, gh.n) for ai in gh.a),
                "quotient_dim": quotient_dim(gh.n, gh.a, gh.b, gh, method="dense")}
    else:
        info = quotient_breakdown(gh)
    target = gh.n + gh.r - gh.s
    params = {"n": gh.n, "a": format_multidegree(gh.a), "b": format_multidegree(gh.b),
              "p": gh.p, "seed": gh.seed}
    result = dict(info, target=target)
    human = [f"D = dim (M_a)_0 = {info['D']}",
             f"quotient dimension = {info['quotient_dim']} (target n+r-s = {target})"]
    _emit(args, "dim", params, result, human, args._started)
    return EXIT_OK


def cmd_check_triple(args) -> int:
    cfg = _config(args)
    rep = verify_triple(args.n, args.a, args.b, cfg)
    params = {"n": args.n, "a": format_multidegree(rep.a), "b": format_multidegree(rep.b),
              **_cfg_params(cfg)}
    _emit(args, "check-triple", params, rep.to_record(), _report_lines(rep), args._started)
    return {Status.VERIFIED: EXIT_OK, Status.NUMERIC_FAIL: EXIT_FAIL,
            Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.status]


def cmd_search_b(args) -> int:
    cfg = _config(args)
    reports = search_b(args.n, args.a, cfg, first=args.first)
    params = {"n": args.n, "a": format_multidegree(args.a), "first": args.first, **_cfg_params(cfg)}
    result = {"verified": [rep.to_record() for rep in reports]}
    human = [f"{len(reports)} verified b with l = k for n = {args.n}, a = {format_multidegree(args.a)}"]
    for rep in reports:
        last = rep.trials[-1]
        human.append(f"  b = {format_multidegree(rep.b)}  dim {last.dim}  (p={last.prime}, seed={last.seed})")
    _emit(args, "search-b", params, result, human, args._started)
    return EXIT_OK if reports else EXIT_INCONCLUSIVE


def format_pair_table(table: dict[int, list[MultiDegree]]) -> list[str]:
    lines = [f"{n} | " + ", ".join(format_multidegree(a) for a in table[n]) for n in sorted(table)]
    lines.append(f"total: {sum(len(v) for v in table.values())}")
    return lines


def cmd_search_pairs(args) -> int:
    table = search_pairs_numlin(args.n_max)
    rows = []
    for n in sorted(table):
        for a in table[n]:
            w = numlin_goal_witnesses(n, a)[0]
            rows.append({"n": n, "a": format_multidegree(a), "a_prime": format_multidegree(w.a_prime),
                         "lam": w.lam, "b": format_multidegree(w.b)})
    if args.out:
        with open(args.out, "w") as fh:
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
    result = {"pairs": {str(n): [format_multidegree(a) for a in table[n]] for n in sorted(table)},
              "total": len(rows)}
    _emit(args, "search-pairs", {"n_max": args.n_max}, result, format_pair_table(table), args._started)
    return EXIT_OK


def cmd_enumerate_a(args) -> int:
    seqs = enumerate_a(args.n)
    result = {"a": [format_multidegree(a) for a in seqs], "count": len(seqs)}
    _emit(args, "enumerate-a", {"n": args.n}, result, [format_multidegree(a) for a in seqs], args._started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--timing", action="store_true", help="report wall time")

    randomized = _Parser(add_help=False)
    randomized.add_argument("--p", type=_prime, action="append",
                            help="prime modulus; repeat for several (default 101)")
    randomized.add_argument("--trials", type=_nonneg, default=10, help="trials per prime")
    randomized.add_argument("--seed", type=_nonneg, default=0, help="base seed")
    randomized.add_argument("--method", choices=("blocked", "dense"), default="blocked")

    parser = _Parser(prog="ghcsearch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernel: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("delta", parents=[common], help="delta and delta_minus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_multidegree, required=True)
    p.add_argument("--ell", type=_nonneg, required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("check-conditions", parents=[common], help="numeric conditions on (n, a, b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_multidegree, required=True)
    p.add_argument("--b", type=_multidegree, required=True)
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("numlin", parents=[common], help="linear-subspace construction of b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_multidegree, required=True)
    p.add_argument("--a-prime", type=_multidegree)
    p.add_argument("--lam", type=int)
    p.set_defaults(func=cmd_numlin)

    p = sub.add_parser("dim", parents=[common, randomized], help="quotient dimension of one witness")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=_multidegree)
    p.add_argument("--b", type=_multidegree)
    p.add_argument("--witness", help="read the witness from this file instead of sampling")
    p.add_argument("--dump-witness", help="write the witness to this file")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("check-triple", parents=[common, randomized], help="verify a triple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_multidegree, required=True)
    p.add_argument("--b", type=_multidegree, required=True)
    p.set_defaults(func=cmd_check_triple)

    p = sub.add_parser("search-b", parents=[common, randomized], help="verified b with l = k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_multidegree, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--first", dest="first", action="store_true", default=True)
    mode.add_argument("--all", dest="first", action="store_false")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search_b)

    p = sub.add_parser("search-pairs", parents=[common], help="exhaustive pair search")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--out", help="write one JSON record per pair to this file")
    p.set_defaults(func=cmd_search_pairs)

    p = sub.add_parser("enumerate-a", parents=[common], help="list Fano multi-degrees for n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate_a)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args._started = time.perf_counter()
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
