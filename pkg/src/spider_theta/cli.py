"""Command-line entry point: ``spider-theta {theta,table,verify,oracle}``.

Exit codes: 0 success, 1 verification or I/O failure, 2 usage error,
3 term budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import netforms as nf
from .errors import DenominatorVanishes, DivergentLimit, MalformedWeb, PrecisionExhausted, TermBudgetExceeded
from .qscalar import DEFAULT_PRECISION_BITS, QScalar, RootContext, certify_nonzero, eval_at_root, limit_q1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
PRECISION_ENV = "SPIDER_PRECISION_BITS"


class UsageError(Exception):
    pass


def precision_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if bits < 128:
        raise UsageError(f"{PRECISION_ENV} must be at least 128")
    return bits


def root_context(order_N: int) -> RootContext:
    bits = precision_bits()
    return RootContext(order_N, bits, max(bits, 4096))


def resolve_level(k: Optional[int], N: Optional[int]) -> tuple[Optional[int], Optional[int]]:
    """Accept level k and/or root order N, insisting on N = 4k + 12 when both are given."""
    if k is not None and k < 0:
        raise UsageError("level k must be nonnegative")
    if N is not None and (N <= 0 or N % 2):
        raise UsageError("root order N must be a positive even integer")
    if k is not None and N is not None and N != 4 * k + 12:
        raise UsageError(f"N = {N} does not match k = {k} (expected N = {4 * k + 12})")
    if k is not None:
        return k, 4 * k + 12
    if N is not None and (N - 12) % 4 == 0 and N >= 12:
        return (N - 12) // 4, N
    return None, N


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q1_or_none(s: QScalar) -> Optional[str]:
    try:
        return fraction_str(limit_q1(s))
    except DivergentLimit:
        return None


# -- table rows ----------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    a: int
    b: int
    c: int
    k: int
    N: int
    admissible_generic: bool
    admissible_level: bool
    negligible_any_clasp: bool
    theta_exact: dict
    theta_at_root: Optional[dict]
    theta_q1: Optional[str]
    nonzero_certified: bool

    def to_json(self) -> dict:
        return asdict(self)

    def to_csv(self) -> dict:
        d = asdict(self)
        d["theta_exact"] = json.dumps(self.theta_exact, sort_keys=True)
        root = self.theta_at_root or {"re": "", "im": "", "error_bound": ""}
        del d["theta_at_root"]
        d["theta_at_root_re"] = root["re"]
        d["theta_at_root_im"] = root["im"]
        d["theta_at_root_error_bound"] = root["error_bound"]
        d["theta_q1"] = self.theta_q1 if self.theta_q1 is not None else ""
        return d


CSV_FIELDS = ["a", "b", "c", "k", "N", "admissible_generic", "admissible_level", "negligible_any_clasp",
              "theta_exact", "theta_at_root_re", "theta_at_root_im", "theta_at_root_error_bound",
              "theta_q1", "nonzero_certified"]


def table_row(t: tuple[int, int, int], k: int) -> TableRow:
    level = nf.LevelContext(k)
    ctx = root_context(level.order_N)
    value = nf.theta(t)
    root: Optional[dict] = None
    certified = False
    try:
        v = certify_nonzero(value, ctx)
        certified = True
        root = v.to_json()
    except PrecisionExhausted:
        root = eval_at_root(value, ctx).to_json()
    except DenominatorVanishes:
        root = None
    return TableRow(
        *t, k=k, N=level.order_N,
        admissible_generic=nf.admissible_generic(t),
        admissible_level=nf.admissible_level(t, level),
        negligible_any_clasp=any(nf.negligible(x, level) for x in t),
        theta_exact=value.to_json(),
        theta_at_root=root,
        theta_q1=q1_or_none(value),
        nonzero_certified=certified,
    )


def table_triples(max_sum: int) -> list[tuple[int, int, int]]:
    return [(a, b, c) for a in range(max_sum + 1) for b in range(a, max_sum + 1)
            for c in range(b, max_sum + 1) if a + b + c <= max_sum]


def render_table(rows: list[TableRow], fmt: str, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({**meta, "rows": [r.to_json() for r in rows]}, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.to_csv())
    return buf.getvalue()


# -- commands ------------------------------------------------------------------

def cmd_theta(args) -> int:
    t = (args.a, args.b, args.c)
    if min(t) < 0:
        raise UsageError("labels must be nonnegative")
    value, reason = nf.theta_tagged(t)
    report = {
        "triple": list(t),
        "admissible_generic": reason is None,
        "reason": reason,
        "theta_exact": value.to_json(),
        "diagram_sign": nf.diagram_sign(t),
    }
    if args.q1:
        report["theta_q1"] = q1_or_none(value)
    if args.at_root is not None or args.k is not None:
        k, N = resolve_level(args.k, args.at_root)
        ctx = root_context(N)
        try:
            v = eval_at_root(value, ctx)
            report["theta_at_root"] = {"N": N, **v.to_json(), "nonzero_certified": v.is_certified_nonzero()}
        except DenominatorVanishes as exc:
            report["theta_at_root"] = {"N": N, "error": str(exc)}
        if k is not None:
            level = nf.LevelContext(k)
            report["k"] = k
            report["admissible_level"] = nf.admissible_level(t, level)
            report["negligible_any_clasp"] = any(nf.negligible(x, level) for x in t)
    _emit(report, args.format)
    return EXIT_OK


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
    elif fmt == "csv":
        flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in report.items()}
        writer = csv.DictWriter(sys.stdout, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
    else:
        for key, val in report.items():
            print(f"{key}: {json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val}")


def cmd_table(args) -> int:
    if args.max_sum < 0:
        raise UsageError("--max-sum must be nonnegative")
    k, N = resolve_level(args.level, args.N)
    if k is None:
        raise UsageError("table needs --level k (or an N of the form 4k + 12)")
    rows = [table_row(t, k) for t in table_triples(args.max_sum)]
    meta = {"max_sum": args.max_sum, "k": k, "N": N, "precision_bits": precision_bits()}
    text = render_table(rows, args.format, meta)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .webcalc import Reducer, ReductionConfig, Web, reduce_closed, theta_web

    config = ReductionConfig(term_budget=args.term_budget)
    red = Reducer(config)
    if args.web_file:
        try:
            web = Web.loads(Path(args.web_file).read_text())
        except OSError as exc:
            print(f"error: cannot read {args.web_file}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        except (MalformedWeb, ValueError) as exc:
            raise UsageError(f"malformed web file: {exc}") from None
        label = args.web_file
    else:
        if None in (args.a, args.b, args.c):
            raise UsageError("give --a --b --c or --web-file")
        t = (args.a, args.b, args.c)
        reason = nf.inadmissibility_reason(t) if min(t) >= 0 else "negative label"
        if reason:
            raise UsageError(f"inadmissible triple {t}: {reason}")
        web = theta_web(*t)
        label = list(t)
    if not web.is_closed:
        raise UsageError("oracle needs a closed web")
    t0 = time.perf_counter()
    value = reduce_closed(web, config, red)
    report = {
        "input": label,
        "value": value.to_json(),
        "value_q1": q1_or_none(value),
        "steps": red.stats.steps,
        "terms_generated": red.stats.terms_generated,
        "term_high_water": red.stats.high_water,
        "seconds": round(time.perf_counter() - t0, 6),
    }
    if not args.web_file:
        report["closed_form_times_sign"] = (nf.diagram_sign(label) * nf.theta(label)).to_json()
        report["matches_closed_form"] = value == nf.diagram_sign(label) * nf.theta(label)
    _emit(report, args.format)
    return EXIT_OK


# -- verify suites -------------------------------------------------------------

def _admissible_upto(max_sum: int):
    for s in range(0, max_sum + 1, 2):
        for a in range(s + 1):
            for b in range(s + 1 - a):
                t = (a, b, s - a - b)
                if nf.admissible_generic(t):
                    yield t


def _suite_recursion(max_sum: int):
    for t in _admissible_upto(max_sum):
        sh = nf.tri_to_net(t)
        yield f"{t}", nf.net_closed(sh.m, sh.n, sh.p) == nf.net_ladder(sh.m, sh.n, sh.p)


def _suite_trace(max_sum: int):
    for p in range(1, max_sum + 1):
        yield f"p={p}", nf.clasp_trace_recursive(p) == nf.trace_sign(p) * nf.clasp_trace(p)
    for p in range(0, max_sum + 1):
        yield f"dim p={p}", limit_q1(nf.clasp_trace(p)) == (p + 1) * (p + 2) * (p + 3) // 6


def _suite_oracle(max_sum: int):
    from .webcalc import Reducer, theta_oracle

    red = Reducer()
    for t in _admissible_upto(max_sum):
        yield f"{t}", theta_oracle(*t, reducer=red) == nf.diagram_sign(t) * nf.theta(t)


def _suite_theorem9(max_sum: int):
    for t in _admissible_upto(max_sum):
        ctx = root_context(nf.smallest_level_order(t))
        ctx = RootContext(ctx.order_N, ctx.precision_bits, ctx.precision_bits)
        try:
            ok = nf.check_nonvanishing(t, ctx).nonzero
        except PrecisionExhausted:
            ok = False
        yield f"{t} N={ctx.order_N}", ok


SUITES: dict[str, tuple[Callable, int]] = {
    "recursion": (_suite_recursion, 24),
    "trace": (_suite_trace, 16),
    "oracle": (_suite_oracle, 8),
    "theorem9": (_suite_theorem9, 16),
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        fn, default = SUITES[name]
        max_sum = default if args.max_sum is None else args.max_sum
        if max_sum < 0:
            raise UsageError("--max-sum must be nonnegative")
        passed = total = 0
        it = fn(max_sum)
        while True:
            t0 = time.perf_counter()
            try:
                case, ok = next(it)
            except StopIteration:
                break
            dt = time.perf_counter() - t0
            total += 1
            passed += ok
            print(f"{'PASS' if ok else 'FAIL'} {name} {case} {dt:.4f}s")
        failures += total - passed
        print(f"{name}: {passed}/{total} passed (max-sum {max_sum})")
    return EXIT_OK if failures == 0 else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spider-theta", description="Theta nets in the C2 spider.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theta", help="closed-form theta value")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--at-root", type=int, metavar="N", help="evaluate at q = exp(2 pi i / N)")
    g.add_argument("--q1", action="store_true", help="classical limit q -> 1")
    p.add_argument("--k", type=int, help="level; implies N = 4k + 12")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("table", help="one row per triple a <= b <= c with a+b+c <= S")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--level", type=int, help="level k")
    p.add_argument("--N", type=int, help="root order; must equal 4k + 12")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--max-sum", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force web reduction")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--web-file", help="JSON web dump")
    p.add_argument("--term-budget", type=int, default=10**6)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
