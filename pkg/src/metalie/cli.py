"""``metalie`` command line.

Exit status: 0 pass, 1 failed certificate, 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from .fp import compile, fitting_contains
from .free import free_context
from .lie import AlgebraContext
from .modules import DEFAULT_BUDGET, BudgetExceeded
from .product import NameClash, ProductModel, verify_lemma_mprime, verify_product_theorems
from .reproduce import SuiteConfig, run_suite
from .semidomain import DEFAULT_BOUND, classify
from .text import ParseError, element_records, format_algebra, parse_algebra_file, parse_element

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class SessionConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    bound: Optional[int] = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    format: str = "text"

    def __post_init__(self):
        if self.bound is not None and self.bound < 1:
            raise ValueError("--bound must be positive")
        if self.budget < 1:
            raise ValueError("--budget must be positive")


class Output:
    """Collects ``key=value`` records (machine) or free lines (text)."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: List[str] = []

    def kv(self, key: str, value) -> None:
        self.lines.append(f"{key}={value}" if self.fmt == "machine" else f"{key}: {value}")

    def text(self, line: str) -> None:
        if self.fmt == "text":
            self.lines.append(line)

    def element(self, key: str, a) -> None:
        if self.fmt == "machine":
            for rec in element_records(a):
                _, coeff, body = rec.split(" ", 2)
                self.lines.append(f"{key}.{body}={coeff}")
            if not a:
                self.lines.append(f"{key}.zero=1")
        else:
            self.lines.append(f"{key}: {a}")


def _load_algebra(path: str, budget: int) -> AlgebraContext:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return compile(parse_algebra_file(text), budget)


def _context(args, budget: int) -> AlgebraContext:
    if getattr(args, "algebra", None):
        return _load_algebra(args.algebra, budget)
    gens = args.gens
    if gens is None:
        return free_context(args.rank if args.rank else 3, budget=budget)
    return free_context(gens.replace(",", " ").split(), budget=budget)


# -- commands --------------------------------------------------------------------

def cmd_normalize(args, cfg: SessionConfig, out: Output) -> int:
    ctx = _context(args, cfg.budget)
    for expr in args.expr:
        out.element(expr if cfg.format == "text" else "result", parse_element(expr, ctx))
    return EXIT_OK


def cmd_mul(args, cfg: SessionConfig, out: Output) -> int:
    ctx = _context(args, cfg.budget)
    a, b = parse_element(args.left, ctx), parse_element(args.right, ctx)
    out.element("product", ctx.mul(a, b))
    return EXIT_OK


def cmd_fitting(args, cfg: SessionConfig, out: Output) -> int:
    ctx = _load_algebra(args.algebra_file, cfg.budget)
    e = parse_element(args.element, ctx)
    ans = fitting_contains(e, budget=cfg.budget)
    if ans.verdict == "budget_exceeded":
        raise BudgetExceeded(ans.reason)
    out.kv("verdict", ans.verdict)
    if ans.index is not None:
        out.kv("index", ans.index)
    out.kv("reason", ans.reason)
    return EXIT_OK


def cmd_classify(args, cfg: SessionConfig, out: Output) -> int:
    ctx = _load_algebra(args.algebra_file, cfg.budget)
    cls = classify(ctx, cfg.bound or DEFAULT_BOUND, cfg.budget, cfg.seed)
    out.kv("algebra", ctx.name)
    out.kv("verdict", str(cls))
    out.kv("rationale", cls.rationale)
    if cls.torsion is not None:
        out.element("torsion.element", ctx.element(comm=cls.torsion.element))
        out.kv("torsion.linear_form", cls.torsion.f)
    if cls.zero_divisors is not None:
        out.element("pair.x", cls.zero_divisors.x)
        out.element("pair.y", cls.zero_divisors.y)
        for k, v in cls.zero_divisors.checks.items():
            out.kv(f"check[{k}]", 0 if v else "nonzero")
    return EXIT_OK


def cmd_product(args, cfg: SessionConfig, out: Output) -> int:
    A = _load_algebra(args.left_file, cfg.budget)
    B = _load_algebra(args.right_file, cfg.budget)
    try:
        model = ProductModel(A, B, cfg.budget, rename=args.rename)
    except NameClash as exc:
        raise ParseError(str(exc)) from exc
    out.text(format_algebra(model.presentation).rstrip())
    ok = True
    bound = args.verify_upto or cfg.bound
    if bound:
        for rep in (verify_lemma_mprime(model, bound), verify_product_theorems(model, bound)):
            ok = ok and rep.ok
            if cfg.format == "machine":
                key = rep.title.split()[0] + "_" + rep.title.split()[1]
                for row in rep.rows:
                    vals = ",".join(f"{k}:{v}" for k, v in row.values.items())
                    out.kv(f"{key}.d{row.degree}", f"{vals} {'pass' if row.ok else 'fail'}")
                out.kv(f"{key}.status", "pass" if rep.ok else "fail")
            else:
                out.lines.extend(rep.lines())
    if args.report:
        Path(args.report).write_text("\n".join(out.lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, cfg: SessionConfig, out: Output) -> int:
    report = run_suite(SuiteConfig(seed=cfg.seed, bound=cfg.bound or 5, budget=cfg.budget))
    if cfg.format == "machine":
        for item in report.items:
            out.kv(item.name, "pass" if item.ok else "fail")
    else:
        out.lines.extend(report.lines(verbose=args.verbose))
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="degree bound for searches and certificates")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="reduction step budget")
    common.add_argument("--format", choices=("text", "machine"), default="text")

    ctx_opts = argparse.ArgumentParser(add_help=False)
    group = ctx_opts.add_mutually_exclusive_group()
    group.add_argument("--gens", help="generator names of a free algebra, e.g. 'a1 a2 a3'")
    group.add_argument("--rank", type=int, help="free algebra on a1..aN (default 3)")
    group.add_argument("--algebra", help="algebra file")

    parser = argparse.ArgumentParser(prog="metalie", description="Finitely presented metabelian Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common, ctx_opts], help="normal form of element expressions")
    p.add_argument("expr", nargs="+")
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("mul", parents=[common, ctx_opts], help="product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_mul)

    p = sub.add_parser("fitting", parents=[common], help="Fitting radical membership")
    p.add_argument("algebra_file")
    p.add_argument("element")
    p.set_defaults(run=cmd_fitting)

    p = sub.add_parser("classify", parents=[common], help="semidomain classification")
    p.add_argument("algebra_file")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("product", parents=[common], help="metabelian product of two algebras")
    p.add_argument("left_file")
    p.add_argument("right_file")
    p.add_argument("--verify-upto", type=int, default=None)
    p.add_argument("--report", help="also write the report to this file")
    p.add_argument("--rename", action="store_true", help="prime clashing generator names of the right factor")
    p.set_defaults(run=cmd_product)

    p = sub.add_parser("verify-paper", parents=[common], help="replay the reproduction suite")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(run=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = SessionConfig(args.command, [], args.bound, args.seed, args.budget, args.format)
        out = Output(cfg.format)
        status = args.run(args, cfg, out)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    for line in out.lines:
        print(line, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
