"""Command-line front end.

    jts-envelope verify --p 2 --q 3 [--format json] [--suite lemma] ...
    jts-envelope basis  --p 2 --q 3
    jts-envelope units  --p 2 --q 3
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .envelope import BuildError, build, matrix_units
from .freealg import format_poly, format_word
from .report import SUITES, run_suites, timed_summary, to_json_line, to_text_line

__all__ = ["RunConfig", "main", "cmd_verify", "cmd_basis", "cmd_units"]

UNPROVEN_BANNER = "theorem assertions disabled"


@dataclass
class RunConfig:
    p: int
    q: int
    max_degree: int = 8
    format: str = "text"
    suite: str = "all"
    allow_unproven: bool = False
    seed: int = 0
    out: Optional[str] = None
    timings: bool = True

    @property
    def suites(self) -> Sequence[str]:
        return SUITES if self.suite == "all" else (self.suite,)


@contextmanager
def _output(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(fh, line: str) -> None:
    fh.write(line + "\n")
    fh.flush()


def cmd_verify(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    try:
        ctx = build(cfg.p, cfg.q, cfg.max_degree, allow_unproven=cfg.allow_unproven)
    except BuildError as exc:
        with _output(cfg.out) as fh:
            fail = {"summary": {"p": cfg.p, "q": cfg.q, "status": "incomplete", "result": "fail", "error": str(exc)}}
            _emit(fh, json.dumps(fail, sort_keys=True) if cfg.format == "json" else f"FAIL  build: {exc}")
        return 1
    records = []
    with _output(cfg.out) as fh:
        if cfg.allow_unproven and cfg.format == "text":
            _emit(fh, f"# {UNPROVEN_BANNER}")
        for rec in run_suites(ctx, cfg.suites, seed=cfg.seed):
            records.append(rec)
            _emit(fh, to_json_line(rec, cfg.timings) if cfg.format == "json" else to_text_line(rec, cfg.timings))
        summ = timed_summary(ctx, records, t0, cfg.timings)
        if cfg.format == "json":
            _emit(fh, json.dumps({"summary": summ}, sort_keys=True))
        else:
            _emit(
                fh,
                f"summary: p={summ['p']} q={summ['q']} dimension={summ['dimension']} "
                f"status={summ['status']} certificates={summ['certificates']} "
                f"failed={len(summ['failed'])} result={summ['result'].upper()}",
            )
    return 0 if summ["result"] == "pass" else 1


def cmd_basis(cfg: RunConfig) -> int:
    ctx = build(cfg.p, cfg.q, cfg.max_degree, allow_unproven=cfg.allow_unproven)
    words = ctx.basis.words
    with _output(cfg.out) as fh:
        if cfg.format == "json":
            _emit(fh, json.dumps({
                "p": cfg.p, "q": cfg.q, "dimension": len(words),
                "theorem_assertions": not cfg.allow_unproven,
                "words": [format_word(w) for w in words],
            }, sort_keys=True))
        else:
            if cfg.allow_unproven:
                _emit(fh, f"# {UNPROVEN_BANNER}")
            for w in words:
                _emit(fh, format_word(w))
    return 0


def cmd_units(cfg: RunConfig) -> int:
    ctx = build(cfg.p, cfg.q, cfg.max_degree, allow_unproven=cfg.allow_unproven)
    units = matrix_units(ctx)
    with _output(cfg.out) as fh:
        if cfg.format == "json":
            _emit(fh, json.dumps({
                "p": cfg.p, "q": cfg.q, "j": units.j, "t": units.t,
                "theorem_assertions": not cfg.allow_unproven,
                "units": [
                    {"i": i, "k": k, "raw": format_poly(units.raw[i, k]), "nf": format_poly(units.nf[i, k])}
                    for i, k in sorted(units.raw)
                ],
            }, sort_keys=True))
        else:
            if cfg.allow_unproven:
                _emit(fh, f"# {UNPROVEN_BANNER}")
            for i, k in sorted(units.raw):
                _emit(fh, f"A[{i},{k}] = {format_poly(units.raw[i, k])}  ;  NF = {format_poly(units.nf[i, k])}")
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="number of rows")
    common.add_argument("--q", type=int, required=True, help="number of columns")
    common.add_argument("--max-degree", type=int, default=8, help="composition degree bound (default 8)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--allow-unproven", action="store_true",
                        help="permit p == q or p, q = 1 without theorem-level assertions")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--no-timings", action="store_true",
                        help="omit timings so output is byte-for-byte reproducible")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="jts-envelope", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", parents=[common], help="build and run certification suites")
    verify.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sub.add_parser("basis", parents=[common], help="list the normal-word basis")
    sub.add_parser("units", parents=[common], help="dump the matrix-unit table")
    return parser


def _config(args, parser) -> RunConfig:
    if args.p < 1 or args.q < 1:
        parser.error("--p and --q must be positive")
    if args.max_degree < 3:
        parser.error("--max-degree must be at least 3")
    if not args.allow_unproven and (args.p == args.q or args.p < 2 or args.q < 2):
        parser.error(
            f"(p,q)=({args.p},{args.q}) violates the envelope theorem's hypothesis "
            "p != q, p > 1, q > 1; use --allow-unproven to explore anyway"
        )
    return RunConfig(
        p=args.p, q=args.q, max_degree=args.max_degree, format=args.format,
        suite=getattr(args, "suite", "all"), allow_unproven=args.allow_unproven,
        seed=args.seed, out=args.out, timings=not args.no_timings,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = _config(args, parser)
    cmd = {"verify": cmd_verify, "basis": cmd_basis, "units": cmd_units}[args.command]
    try:
        return cmd(cfg)
    except BuildError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
