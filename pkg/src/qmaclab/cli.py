"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap
exceeded, 4 forgery bound violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import adversaries as advs
from . import crypto_classical as cc
from . import suites
from .errors import DomainError, ResourceError
from .games import (
    GameConfig,
    forgery_success,
    ind_qcpa_game,
    ind_scpa_game,
    simplified_bound,
    theorem_bound,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_BOUND = 0, 1, 2, 3, 4
CSV_HEADER = ("n", "m", "q", "k", "adversary", "p", "bound", "ratio")
SEED_MAX = 2**64 - 1


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _emit(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
    else:
        Path(out).write_text(payload)


def _sidecar(out: str | None, started: float, label: str) -> None:
    """Wall-clock timing stays out of the payload so reruns are byte-identical."""
    if out is not None:
        Path(out + ".log").write_text(f"{label} elapsed_s={time.perf_counter() - started:.3f}\n")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# --- bound ------------------------------------------------------------------


def cmd_bound(args) -> int:
    k = args.k if args.k is not None else args.q + 1
    if args.q < 0 or k < 1 or args.m < 2:
        raise UsageError("need q >= 0, k >= 1, m >= 2")
    payload = {"q": args.q, "k": k, "m": args.m}
    if args.simplified:
        if k != args.q + 1:
            raise UsageError("--simplified applies to k = q + 1")
        payload["bound"] = simplified_bound(args.q, args.m)
        payload["identity_check"] = abs(payload["bound"] - theorem_bound(args.q, k, args.m)) <= 1e-12
    else:
        payload["bound"] = theorem_bound(args.q, k, args.m)
    sys.stdout.write(_json(payload))
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    name = args.target
    if name == "oracle-equivalence":
        res = suites.oracle_equivalence_suite(args.max_n, args.max_m, args.seed)
    elif name == "zerosum":
        res = suites.zerosum_suite(args.max_m)
    elif name in ("poly", "expectation"):
        grid = dict(n=args.n, m=args.m, q=args.q)
        if any(v is not None and v < 2 for v in (args.n, args.m)):
            raise UsageError("n and m must be at least 2")
        width, base = args.n or 3, args.m or 3
        if base**width > args.enumeration_cap:
            raise ResourceError(f"{base**width} oracles exceed the enumeration cap")
        fn = suites.poly_suite if name == "poly" else suites.expectation_suite
        res = fn(seed=args.seed, count=args.count, **grid)
        if name == "poly" and args.dump:
            _dump_polys(args)
    else:
        res = suites.corollary_suite(seed=args.seed)
    sys.stdout.write(_json(res.to_dict()))
    return EXIT_OK if res.passed else EXIT_FAIL


def _dump_polys(args) -> None:
    from .games import symbolic_run

    buf = io.StringIO()
    for c, adv in enumerate(suites.suite_circuits(args.seed, args.count, n=args.n, m=args.m, q=args.q)):
        sym = symbolic_run(adv)
        for idx, poly in enumerate(sym.polys):
            if poly.terms:
                buf.write(f"# circuit={c} n={adv.n} m={adv.m} q={adv.query_count} index={idx}\n")
                buf.write(poly.dump())
                buf.write("\n")
    Path(args.dump).write_text(buf.getvalue())


# --- game -------------------------------------------------------------------


@dataclass(frozen=True)
class ForgeTask:
    n: int
    m: int
    q: int
    k: int
    adversary: str
    mode: str
    trials: int
    seed: int
    cap: int
    iters: int
    restarts: int


def _forge_adversary(t: ForgeTask):
    if t.adversary == "search":
        cfg = GameConfig(t.n, t.m, t.q, t.k, seed=t.seed, enumeration_cap=t.cap)
        strategy = advs.ParameterizedStrategy(t.n, t.m, t.q, t.k)
        return strategy.build(advs.hill_climb(strategy, cfg, t.iters, t.restarts).params)
    return advs.build_adversary(t.adversary, t.n, t.m, t.q, t.k)


def run_forge_task(t: ForgeTask):
    adv = _forge_adversary(t)
    cfg = GameConfig.for_adversary(adv, mode=t.mode, trials=t.trials, seed=t.seed, enumeration_cap=t.cap)
    return forgery_success(adv, cfg)


def _range(args, name: str) -> list[int]:
    single = getattr(args, name)
    lo, hi = getattr(args, f"min_{name}"), getattr(args, f"max_{name}")
    if lo is None and hi is None:
        return [single]
    lo = single if lo is None else lo
    hi = lo if hi is None else hi
    if lo > hi:
        raise UsageError(f"--min-{name} exceeds --max-{name}")
    return list(range(lo, hi + 1))


def _is_sweep(args) -> bool:
    return any(getattr(args, f"{p}_{x}") is not None for p in ("min", "max") for x in "nmqk")


def _task(args, n, m, q, k) -> ForgeTask:
    return ForgeTask(n, m, q, k, args.adversary, args.mode, args.trials, args.seed,
                     args.enumeration_cap, args.iters, args.restarts)


def _report_row(report, name: str) -> tuple:
    return (report.n, report.m, report.q, report.k, name, repr(report.p), repr(report.bound), repr(report.ratio))


def cmd_game_forge(args) -> int:
    started = time.perf_counter()
    if not _is_sweep(args):
        report = run_forge_task(_task(args, args.n, args.m, args.q, args.k))
        _emit(report.to_json() + "\n", args.out)
        _sidecar(args.out, started, "game forge")
        return EXIT_OK if report.conforms else EXIT_BOUND
    tasks = []
    for n, m, q, k in itertools.product(*(_range(args, x) for x in "nmqk")):
        if q < k <= n and (args.adversary != "fourier" or m == 2) and (args.adversary != "guess" or q == 0):
            tasks.append(_task(args, n, m, q, k))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(run_forge_task, tasks))
    else:
        reports = [run_forge_task(t) for t in tasks]
    rows = sorted(_report_row(r, t.adversary) for r, t in zip(reports, tasks))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    _sidecar(args.out, started, f"game forge sweep points={len(tasks)}")
    return EXIT_OK if all(r.conforms for r in reports) else EXIT_BOUND


IND_ADVERSARIES = {
    "constant": advs.ConstantAdversary,
    "challenge": advs.ChallengeDistinguisher,
    "randomness-reuse": advs.RandomnessReuseAdversary,
    "basis-pair": advs.BasisPairDistinguisher,
    "half-split": advs.HalfSplitDistinguisher,
    "fourier-pair": advs.FourierPairDistinguisher,
}
DEFAULT_IND_ADVERSARY = {"ind-qcpa": "challenge", "ind-scpa": "half-split"}


def _scheme(args):
    if args.scheme == "identity":
        return cc.identity_scheme(args.messages)
    return cc.pad_scheme(cc.full_table_family(args.randomness, args.messages))


def cmd_game_ind(args) -> int:
    started = time.perf_counter()
    name = args.adversary or DEFAULT_IND_ADVERSARY[args.game]
    if name not in IND_ADVERSARIES:
        raise UsageError(f"unknown adversary {name!r} for {args.game}; expected one of {sorted(IND_ADVERSARIES)}")
    adv = IND_ADVERSARIES[name]()
    cfg = GameConfig(mode=args.mode, trials=args.trials, seed=args.seed, enumeration_cap=args.enumeration_cap)
    game = ind_qcpa_game if args.game == "ind-qcpa" else ind_scpa_game
    report = game(_scheme(args), adv, cfg)
    _emit(report.to_json() + "\n", args.out)
    _sidecar(args.out, started, args.game)
    return EXIT_OK


def cmd_game(args) -> int:
    if args.game == "forge":
        if args.adversary is not None and args.adversary not in advs.STRATEGIES:
            raise UsageError(f"unknown strategy {args.adversary!r}; expected one of {advs.STRATEGIES}")
        args.adversary = args.adversary or "classical"
        return cmd_game_forge(args)
    return cmd_game_ind(args)


# --- optimize ---------------------------------------------------------------


def cmd_optimize(args) -> int:
    started = time.perf_counter()
    cfg = GameConfig(args.n, args.m, args.q, args.k, seed=args.seed, enumeration_cap=args.enumeration_cap)
    strategy = advs.ParameterizedStrategy(args.n, args.m, args.q, args.k)
    state = advs.hill_climb(strategy, cfg, args.iters, args.restarts)
    bound = theorem_bound(args.q, args.k, args.m)
    payload = {
        "n": args.n, "m": args.m, "q": args.q, "k": args.k,
        "seed": args.seed, "iterations": state.iterations, "restart": state.restart,
        "score": state.score, "bound": bound, "ratio": state.score / bound,
        "digest": state.digest(),
    }
    _emit(_json(payload), args.out)
    _sidecar(args.out, started, "optimize forge")
    violated = args.k > args.q and state.score > bound + 1e-9
    return EXIT_BOUND if violated else EXIT_OK


# --- parser -----------------------------------------------------------------


def _add_grid(p, sweep: bool) -> None:
    for name, default in (("n", 2), ("m", 2), ("q", 1), ("k", 2)):
        p.add_argument(f"--{name}", type=int, default=default)
        if sweep:
            p.add_argument(f"--min-{name}", type=int, default=None)
            p.add_argument(f"--max-{name}", type=int, default=None)


def _add_common(p) -> None:
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--enumeration-cap", type=int, default=2**20)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmaclab", description="Quantum MAC forgery bound lab.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate the forgery bound")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--simplified", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", choices=sorted(suites.SUITES))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--dump", default=None, help="write symbolic polynomials (poly target)")
    p.add_argument("--enumeration-cap", type=int, default=2**20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("game", help="play a security game")
    p.add_argument("game", choices=("forge", "ind-qcpa", "ind-scpa"))
    _add_grid(p, sweep=True)
    _add_common(p)
    p.add_argument("--adversary", default=None)
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--iters", type=int, default=200, help="hill-climb steps for --adversary search")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--scheme", choices=("identity", "pad"), default="pad")
    p.add_argument("--messages", type=int, default=2)
    p.add_argument("--randomness", type=int, default=4, help="pad randomness space size")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("optimize", help="search for strong forgery adversaries")
    p.add_argument("problem", choices=("forge",))
    _add_grid(p, sweep=False)
    _add_common(p)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--restarts", type=int, default=1)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"qmaclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"qmaclab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
