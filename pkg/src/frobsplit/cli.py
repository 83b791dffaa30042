"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 mathematical refusal (a JSON error
object is written to stderr).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from .beilinson import e1_page, page_report
from .bundle import FormalBundle
from .cohomology import CohomologyTable, bott_h, hset, hset_exact, table
from .errors import BundleParseError, Refusal
from .frobenius import m_threshold, pushforward_table, pushforward_window
from .oracles import DEFAULT_BUDGET, koszul_cech, thomsen_counts, thomsen_enumerate
from .splitting import check_dagger, decompose, decompose_pushforward, klyachko_bound


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a:b, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _read_arg(value: str) -> str:
    if value.lstrip().startswith(("{", "[")):
        return value
    if not os.path.exists(value):
        raise UsageError(f"no such file: {value}")
    with open(value) as fh:
        return fh.read()


def _bundle(args) -> FormalBundle:
    if args.bundle is None:
        raise UsageError("--bundle is required")
    E = FormalBundle.from_json(_read_arg(args.bundle))
    if args.n is not None and args.n != E.n:
        raise UsageError(f"--n {args.n} disagrees with bundle dimension {E.n}")
    return E


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def _fmt_tuple(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _emit_table(T: CohomologyTable, fmt: str) -> str:
    if fmt == "csv":
        return T.to_csv()
    if fmt == "json":
        return json.dumps(T.to_dict())
    width = max(len(str(v)) for r in T.rows for v in r)
    width = max(width, len(f"h{T.n}"))
    head = "twist " + " ".join(f"h{q}".rjust(width) for q in range(T.n + 1))
    body = [f"{t:>5} " + " ".join(str(v).rjust(width) for v in r) for t, r in T.items()]
    return "\n".join([head, *body]) + "\n"


def _hset_text(H, fmt: str) -> str:
    pts = sorted(H)
    if fmt == "json":
        return json.dumps([list(p) for p in pts])
    return "{" + ", ".join(f"({r},{s})" for r, s in pts) + "}"


def cmd_bott(args) -> str:
    _require(args, "n", "p", "k")
    h = bott_h(args.n, args.p, args.k)
    if args.format == "json":
        return json.dumps({"n": args.n, "p": args.p, "k": args.k, "h": list(h)})
    if args.format == "csv":
        T = CohomologyTable(args.n, args.k, args.k, (h,))
        return T.to_csv()
    return _fmt_tuple(h)


def cmd_cech(args) -> str:
    _require(args, "n", "p", "k")
    h = koszul_cech(args.n, args.p, args.k, bound_scale=args.bound_scale)
    if args.format == "json":
        return json.dumps({"n": args.n, "p": args.p, "k": args.k, "h": list(h)})
    return _fmt_tuple(h)


def cmd_table(args) -> str:
    E = _bundle(args)
    return _emit_table(table(E, args.window), args.format)


def cmd_hset(args) -> str:
    E = _bundle(args)
    H = hset(table(E, args.window)) if args.window else hset_exact(E)
    return _hset_text(H, args.format)


def cmd_frobenius(args) -> str:
    _require(args, "m")
    E = _bundle(args)
    return _emit_table(pushforward_table(E, args.m, args.window), args.format)


def cmd_mthreshold(args) -> str:
    E = _bundle(args)
    m0 = m_threshold(E)
    return json.dumps({"m_threshold": m0}) if args.format == "json" else str(m0)


def _raw_table(args) -> CohomologyTable:
    if args.window is None:
        raise UsageError("--window is mandatory with --table input")
    text = _read_arg(args.table)
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        lo, hi = data["window"]
        rows = tuple(tuple(data["rows"][str(t)]) for t in range(lo, hi + 1))
        T = CohomologyTable(data["n"], lo, hi, rows)
    else:
        T = CohomologyTable.from_csv(text)
    if args.n is not None and args.n != T.n:
        raise UsageError(f"--n {args.n} disagrees with table dimension {T.n}")
    return T.restrict(*args.window)


def _emit_decomposition(D, fmt: str) -> str:
    if fmt == "json":
        return D.to_json()
    if fmt == "csv":
        lines = ["kind,s,twist,mult"]
        lines += [f"omega,{s},{-r},{a}" for (r, s), a in D.sorted_middle()]
        lines += [f"line,0,{k},{b}" for k, b in D.sorted_lines()]
        return "\n".join(lines) + "\n"
    checks = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in D.to_dict()["checks"].items())
    return f"{D}\nrho = {D.rho}; checks: {checks}"


def cmd_decompose(args) -> str:
    if args.table is not None:
        T = _raw_table(args)
    else:
        T = table(_bundle(args), args.window)
    return _emit_decomposition(decompose(T), args.format)


def cmd_pushforward(args) -> str:
    _require(args, "m")
    E = _bundle(args)
    report = decompose_pushforward(E, args.m, args.window)
    if args.format in ("json", "csv"):
        return _emit_decomposition(report.decomposition, args.format)
    return (
        f"F_{args.m}* ({E}) = {report}\n"
        f"a = {_fmt_tuple(report.a)}  b = {_fmt_tuple(report.b)}\n"
        + _emit_decomposition(report.decomposition, "text")
    )


def cmd_dagger(args) -> str:
    if args.points is not None:
        H = {tuple(p) for p in json.loads(_read_arg(args.points))}
    else:
        E = _bundle(args)
        H = hset(table(E, args.window)) if args.window else hset_exact(E)
    bad = check_dagger(H)
    if args.format == "json":
        return json.dumps(
            {"pass": not bad, "violations": [[list(a), list(b)] for a, b in bad]}
        )
    if not bad:
        return "pass"
    return "\n".join(f"violation: ({a[0]},{a[1]}) -> ({b[0]},{b[1]})" for a, b in bad)


def cmd_thomsen(args) -> str:
    _require(args, "n", "m", "d")
    closed = thomsen_counts(args.n, args.m, args.d)
    if args.method in ("enumerate", "both"):
        enum = thomsen_enumerate(args.n, args.m, args.d, budget=args.budget)
        if args.method == "both" and enum.counts != closed.counts:
            raise RuntimeError(f"thomsen mismatch: {closed.counts} vs {enum.counts}")
        closed = enum
    if args.format == "json":
        return json.dumps(closed.to_dict())
    return closed.as_text()


def cmd_beilinson(args) -> str:
    E = _bundle(args)
    T = table(E, args.window)
    if args.format == "csv":
        return e1_page(T).to_csv()
    report = page_report(T, rank=E.rank())
    if args.format == "json":
        return json.dumps(report.to_dict())
    out = [e1_page(T).render(), ""]
    possible = [a for a in report.arrows if a.status == "possibly-nonzero"]
    out.append(f"possibly nonzero differentials: {len(possible)}")
    out += [f"  d_{a.page}: {a.source} -> {a.target}" for a in possible]
    out.append(f"diagonal ranks: {report.diagonal}")
    out.append(f"corner ranks (E00, E-n,n): {report.corners}")
    out += [f"undetermined: {u}" for u in report.undetermined]
    return "\n".join(out)


def cmd_klyachko(args) -> str:
    _require(args, "n", "rank")
    degrees = sorted(klyachko_bound(args.n, args.rank))
    if args.format == "json":
        return json.dumps(degrees)
    return "{" + ",".join(map(str, degrees)) + "}"


COMMANDS = {
    "bott": (cmd_bott, "h^q(P^n, Omega^p(k)) by Bott's formula"),
    "table": (cmd_table, "cohomology table of a formal bundle"),
    "hset": (cmd_hset, "twist/degree pairs with nonzero middle cohomology"),
    "frobenius": (cmd_frobenius, "cohomology table of F_m* E"),
    "mthreshold": (cmd_mthreshold, "regularity threshold m(E)"),
    "decompose": (cmd_decompose, "split a (dagger) cohomology table"),
    "pushforward": (cmd_pushforward, "decompose F_m* E into Omega^i and O(-j)"),
    "dagger": (cmd_dagger, "check condition (dagger)"),
    "thomsen": (cmd_thomsen, "line-bundle splitting of F_m* O(d)"),
    "cech": (cmd_cech, "h^q(P^n, Omega^p(k)) from the Koszul-Cech complex"),
    "beilinson": (cmd_beilinson, "E_1 page and dimension bookkeeping"),
    "klyachko": (cmd_klyachko, "degrees forced to vanish by rank"),
}


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--n", type=int)
    shared.add_argument("--m", type=int)
    shared.add_argument("--bundle", help="bundle JSON or a path to a JSON file")
    shared.add_argument("--window", type=_window, help="inclusive twist range a:b")
    shared.add_argument("--format", choices=("text", "json", "csv"), default="text")
    shared.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    parser = _Parser(prog="frobsplit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[shared], help=help_text)
        if name in ("bott", "cech"):
            p.add_argument("--p", type=int)
            p.add_argument("--k", type=int)
        if name == "cech":
            p.add_argument("--bound-scale", type=int, default=1)
        if name == "thomsen":
            p.add_argument("--d", type=int)
            p.add_argument("--method", choices=("counts", "enumerate", "both"), default="both")
        if name == "decompose":
            p.add_argument("--table", help="raw table (CSV or JSON, or a path)")
        if name == "dagger":
            p.add_argument("--points", help="JSON list of [r, s] pairs")
        if name == "klyachko":
            p.add_argument("--rank", type=int)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """``--window -4:4`` -> ``--window=-4:4`` so argparse does not see a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--window", "--k", "--d", "--m", "--n", "--p"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        out = handler(args)
    except Refusal as exc:
        stderr.write(exc.to_json() + "\n")
        return 2
    except (UsageError, BundleParseError, ValueError, KeyError, json.JSONDecodeError) as exc:
        stderr.write(f"frobsplit {args.command}: error: {exc}\n")
        return 1
    stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
