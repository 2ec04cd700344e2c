"""Command-line front end.

    python -m farey_cf --p 5 --x 11/40 expand
    python -m farey_cf best --p 5 --x 7/27 --format json

Global flags may be given before or after the subcommand.  Exit codes:
0 success, 1 bad input, 2 interval too coarse, 3 wrong regime for the
command (enumerate off the vertex set, decompose on a vertex), 4 a failed
cross-check (verify disagreement or fuzz failure).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from .best import best_report, default_v_max, verify_equivalence
from .checks import run_fuzz, self_test
from .errors import InsufficientPrecision, InX, NotInX, ParseError
from .exact import as_real, format_real, parse_real, reduce
from .expansion import (
    DEFAULT_MAX_TERMS,
    enumerate_all_expansions,
    expand_max_plus_one,
    fins,
    iter_convergents,
    select_max_plus_one,
)
from .graph import BSet, GeneralRational, Modulus, classify, decompose

EXIT_OK, EXIT_PARSE, EXIT_PRECISION, EXIT_REGIME, EXIT_CHECK = 0, 1, 2, 3, 4

# convergents shown past the finite part of a tailed expansion
TAIL_PREVIEW = 3


@dataclass
class CliConfig:
    p: int
    l: int
    x: Optional[str]
    format: str = "text"
    max_terms: int = DEFAULT_MAX_TERMS
    v_max: Optional[int] = None
    seed: int = 42
    method: str = "theorem"
    trials: int = 1000
    self_test: bool = False

    @property
    def modulus(self) -> Modulus:
        return Modulus(self.p, self.l)


# ---------------------------------------------------------------------------
# Commands: each returns (lines or JSON-able object, exit code)


def _frac_list(pairs) -> list[str]:
    return [str(reduce(p, q)) for p, q in pairs]


def _input(cfg: CliConfig):
    if cfg.x is None:
        raise ParseError("missing --x")
    return parse_real(cfg.x)


def cmd_expand(cfg: CliConfig):
    x, m = _input(cfg), cfg.modulus
    result = expand_max_plus_one(x, m, cfg.max_terms)
    items = []
    for e in result.expansions:
        count = len(e.terms) + 1 + (TAIL_PREVIEW if not e.is_finite and not e.truncated else 0)
        pairs = list(itertools.islice(iter_convergents(e), count))
        ys = fins(e, x, count - 1)
        items.append((e, pairs, ys))
    if cfg.format == "json":
        return {
            "x": format_real(x),
            "p": m.p,
            "l": m.l,
            "classification": result.classification.describe(),
            "expansions": [
                dict(e.to_json(), convergents=_frac_list(pairs), fins=[format_real(y) for y in ys])
                for e, pairs, ys in items
            ],
        }, EXIT_OK
    lines = [f"classification: {result.classification.describe()}"]
    for e, pairs, ys in items:
        more = " ..." if not e.is_finite else ""
        lines.append(e.text())
        lines.append("convergents: " + " ".join(_frac_list(pairs)) + more)
        lines.append("fins: " + " ".join(format_real(y) for y in ys) + more)
    return lines, EXIT_OK


def cmd_enumerate(cfg: CliConfig):
    x, m = _input(cfg), cfg.modulus
    allx = enumerate_all_expansions(as_real(x), m)
    best = {(e.b, e.terms) for e in select_max_plus_one(allx)}
    if cfg.format == "json":
        return [dict(e.to_json(), max_plus_one=(e.b, e.terms) in best) for e in allx], EXIT_OK
    return [("* " if (e.b, e.terms) in best else "  ") + e.text() for e in allx], EXIT_OK


def _v_max(cfg: CliConfig, x, m: Modulus) -> int:
    v_max = cfg.v_max if cfg.v_max is not None else default_v_max(x, m)
    if v_max is None:
        raise ParseError("an irrational input needs --v-max")
    return v_max


def _report_lines(report) -> list[str]:
    head = f"best ({report.method}, v_max={report.v_max}):"
    lines = [head + "".join(f" {r.frac}" for r in report.records)]
    lines += [f"  {r.frac}  |vx-u| = {format_real(r.quality)}" for r in report.records]
    if report.agreement is not None:
        lines.append(f"agreement={str(report.agreement).lower()}")
    lines += report.notes
    return lines


def cmd_best(cfg: CliConfig):
    x, m = _input(cfg), cfg.modulus
    report = best_report(x, m, _v_max(cfg, x, m), cfg.method)
    if cfg.format == "json":
        return dict(report.to_json(), notes=report.notes), EXIT_OK
    return _report_lines(report), EXIT_OK


def cmd_verify(cfg: CliConfig):
    x, m = _input(cfg), cfg.modulus
    report = verify_equivalence(x, m, _v_max(cfg, x, m))
    code = EXIT_OK if report.agreement else EXIT_CHECK
    if cfg.format == "json":
        return dict(report.to_json(), notes=report.notes), code
    return _report_lines(report), code


def cmd_classify(cfg: CliConfig):
    x, m = _input(cfg), cfg.modulus
    cls = classify(x, m)
    if cfg.format == "json":
        return {"x": format_real(x), "p": m.p, "l": m.l, "classification": cls.describe()}, EXIT_OK
    return [cls.describe()], EXIT_OK


def cmd_decompose(cfg: CliConfig):
    x, m = as_real(_input(cfg)), cfg.modulus
    if not hasattr(x, "denominator"):
        raise ParseError("decompose needs a rational input")
    d = decompose(x, m)
    cls = classify(x, m)
    nx = cls.nx if isinstance(cls, GeneralRational) else (0 if isinstance(cls, BSet) else None)
    if cfg.format == "json":
        return {"x": format_real(x), "r1": str(d.r1), "r2": str(d.r2), "adjacent": d.adjacent, "nx": nx}, EXIT_OK
    line = f"R1={d.r1} R2={d.r2}"
    if isinstance(cls, GeneralRational):
        line += f" Nx={nx}"
    else:
        line += f" ({cls.describe()}, flanks not adjacent)" if not d.adjacent else f" ({cls.describe()})"
    return [line], EXIT_OK


def cmd_fuzz(cfg: CliConfig):
    m = cfg.modulus
    if cfg.self_test:
        ok, msg = self_test(m, cfg.seed)
        lines = [("self-test ok: " if ok else "self-test FAILED: ") + msg]
        return (
            ({"self_test": ok, "message": msg} if cfg.format == "json" else lines),
            EXIT_OK if ok else EXIT_CHECK,
        )
    summary = run_fuzz(m, cfg.trials, cfg.seed)
    code = EXIT_OK if summary.failures == 0 else EXIT_CHECK
    if cfg.format == "json":
        return {
            "p": m.p,
            "l": m.l,
            "seed": cfg.seed,
            "trials": summary.trials,
            "checks": summary.checks,
            "failures": summary.failures,
            "by_check": summary.by_check,
            "first_counterexample": summary.first,
        }, code
    return summary.lines(), code


COMMANDS: dict[str, Callable] = {
    "expand": cmd_expand,
    "enumerate": cmd_enumerate,
    "best": cmd_best,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "fuzz": cmd_fuzz,
}


# ---------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _add_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--p", type=int, default=d(None), help="prime p")
    parser.add_argument("--l", type=int, default=d(1), help="exponent l (N = p**l)")
    parser.add_argument("--x", default=d(None), help="num/den, quad:a,b,d,c or dec:<digits>:<err>")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--max-terms", type=int, default=d(DEFAULT_MAX_TERMS))
    parser.add_argument("--v-max", type=int, default=d(None))
    parser.add_argument("--seed", type=int, default=d(42))
    parser.add_argument("--batch", default=d(None), metavar="FILE", help="one x per line")
    parser.add_argument("--method", choices=("theorem", "oracle"), default=d("theorem"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="farey_cf", description="F_N continued fractions and best X_N-approximations")
    _add_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        _add_flags(sp, suppress=True)
        if name == "fuzz":
            sp.add_argument("--trials", type=int, default=1000)
            sp.add_argument("--self-test", action="store_true")
    return parser


def _run_one(fn: Callable, cfg: CliConfig) -> tuple[list[str], int]:
    """Run a command, mapping library errors onto exit codes."""
    try:
        out, code = fn(cfg)
    except InsufficientPrecision as exc:
        return [f"error: insufficient precision: {exc}"], EXIT_PRECISION
    except (NotInX, InX) as exc:
        return [f"error: {exc}"], EXIT_REGIME
    except (ParseError, ValueError) as exc:
        return [f"error: {exc}"], EXIT_PARSE
    if cfg.format == "json":
        return [json.dumps(out, sort_keys=True)], code
    return list(out), code


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.p is None:
        print("error: --p is required", file=sys.stderr)
        return EXIT_PARSE
    cfg = CliConfig(
        p=args.p,
        l=args.l,
        x=args.x,
        format=args.format,
        max_terms=args.max_terms,
        v_max=args.v_max,
        seed=args.seed,
        method=args.method,
        trials=getattr(args, "trials", 1000),
        self_test=getattr(args, "self_test", False),
    )
    try:
        cfg.modulus
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    fn = COMMANDS[args.command]
    if args.batch is None:
        lines, code = _run_one(fn, cfg)
        stream = sys.stdout if code in (EXIT_OK, EXIT_CHECK) else sys.stderr
        print("\n".join(lines), file=stream)
        return code
    try:
        with open(args.batch) as fh:
            inputs = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    worst = EXIT_OK
    for x in inputs:
        cfg.x = x
        lines, code = _run_one(fn, cfg)
        if cfg.format == "json":
            print(lines[0] if code in (EXIT_OK, EXIT_CHECK) else json.dumps({"x": x, "error": lines[0], "exit": code}))
        else:
            print(f"# x = {x}")
            print("\n".join(lines))
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
