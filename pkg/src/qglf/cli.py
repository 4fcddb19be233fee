"""qglf: count factorizations of regular elliptic elements from the command line.

Exit status: 0 success, 1 verification mismatch, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from itertools import product

from qglf.coefficients import (
    a_two_explicit,
    b_multi,
    b_two,
    genus,
    genus0_count,
    growth_ratio,
    m_q,
    p_g_polynomial,
    reflection_count,
)
from qglf.genfun import a_table, expected_genus, expected_genus_from_table, fulman_series
from qglf.glnq import BudgetExceeded, is_prime
from qglf.oracle import (
    DEFAULT_BUDGET,
    brute_count_gl,
    brute_count_sn,
    default_threads,
    fixed_dim_census,
    genus_stats,
)
from qglf.qcalc import SYM
from qglf.report import Report

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

METHODS = ("closed", "charsum", "oracle")


class UsageError(ValueError):
    pass


def parse_q(text: str):
    if text == SYM:
        return SYM
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer or 'sym', got {text!r}")
    if q < 2:
        raise argparse.ArgumentTypeError("q must be at least 2")
    return q


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _methods(name: str) -> list[str]:
    return list(METHODS) if name == "all" else [name]


def _need_numeric_prime(q, what: str) -> int:
    if q == SYM or not is_prime(q):
        raise UsageError(f"{what} needs a prime integer --q, got {q}")
    return q


def _params(args, *names) -> dict:
    out = {}
    for n in names:
        v = getattr(args, n)
        out[n] = v if isinstance(v, (int, str, type(None))) else list(v)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_coeff(args) -> Report:
    kind, q = args.kind, args.q
    rep = Report("coeff", _params(args, "kind", "n", "q", "m", "rs", "t", "u", "p", "l", "g"))
    if kind == "m_q":
        if args.m is None or args.rs is None:
            raise UsageError("m_q needs --m and --rs")
        rep.add((), {"closed": m_q(args.m, args.rs, q)})
    elif kind == "b2":
        _require(args, "n", "t", "u")
        rep.add((), {"closed": b_two(args.n, args.t, args.u, q)})
    elif kind == "bk":
        _require(args, "n", "p")
        rep.add((), {"closed": b_multi(args.n, args.p, q)})
    elif kind == "t_q":
        _require(args, "n", "l")
        rep.add((), {"closed": reflection_count(args.n, args.l, q)})
    elif kind == "P_g":
        _require(args, "g")
        pg = p_g_polynomial(args.g)
        rep.dim_names = pg.variables
        for e, c in sorted(pg.terms.items()):
            rep.add(e, {"closed": c if q == SYM else c(q)})
    return rep


def _require(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {' '.join(missing)}")


def _tables(n: int, q, k: int, methods, args) -> dict:
    out = {}
    for m in methods:
        if m == "oracle":
            qq = _need_numeric_prime(q, "the oracle")
            out[m] = brute_count_gl(n, qq, k, budget=args.budget, threads=args.threads)
        else:
            out[m] = a_table(n, k, q, method=m)
    return out


def _table_report(command: str, tables: dict, rep: Report | None = None,
                  check: bool = False) -> Report:
    if rep is None:
        rep = Report(command, {})
    keys = sorted(set().union(*(t.entries for t in tables.values())))
    for dims in keys:
        rep.add(dims, {m: t[dims] for m, t in tables.items()}, check=check)
    return rep


def cmd_table(args) -> Report:
    tables = _tables(args.n, args.q, args.k, _methods(args.method), args)
    rep = Report("table", _params(args, "n", "q", "k", "method"))
    return _table_report("table", tables, rep)


def cmd_verify(args) -> Report:
    """Compare every available path, cell by cell, over a range of n."""
    rep = Report("verify", _params(args, "n", "n_max", "q", "k", "method"))
    ns = [args.n] if args.n_max is None else list(range(1, args.n_max + 1))
    methods = ["closed", "charsum"]
    if args.method is None:
        if args.q != SYM and is_prime(args.q):
            methods.append("oracle")
    elif args.method in ("oracle", "all"):
        _need_numeric_prime(args.q, "the oracle")
        methods.append("oracle")
    for n in ns:
        if n == 1 and args.q == 2:
            continue  # GL_1(F_2) has no element without fixed vectors
        tables = _tables(n, args.q, args.k, methods, args)
        if args.k == 2:
            tables["explicit"] = _explicit_table(n, args.q, tables["closed"])
        sub = _table_report("verify", tables, check=True)
        for e in sub.entries:
            e.dims = (n,) + e.dims
            rep.entries.append(e)
        rep.agreement = rep.agreement and sub.agreement
    rep.dim_names = ("n",) + tuple(f"r{i + 1}" for i in range(args.k))
    return rep


def _explicit_table(n: int, q, closed):
    """Two-factor cells from the genus-0 and P_g formulas where they apply."""
    from qglf.tables import CountTable

    entries = dict(closed.entries)
    for r, s in product(range(1, n), repeat=2):
        g = genus(n, [r, s])
        if g == 0:
            entries[(r, s)] = genus0_count(n, [r, s], q)
        elif g > 0:
            entries[(r, s)] = a_two_explicit(n, r, s, q)
    return CountTable(2, n, closed.q, entries)


def cmd_asympt(args) -> Report:
    q = _need_integer(args.q, "asympt")
    rep = Report("asympt", _params(args, "g", "q", "n_max"))
    rep.dim_names = ("n",)
    lo = 2 * args.g + 2
    for n in range(lo, args.n_max + 1):
        gr = growth_ratio(args.g, q, n)
        rep.add((n,), {"count": gr.count, "ratio_squared": gr.ratio_squared, "ratio": gr.ratio},
                primary="ratio_squared")
    rep.agreement = True
    return rep


def _need_integer(q, what: str) -> int:
    if q == SYM:
        raise UsageError(f"{what} needs an integer --q")
    return q


def cmd_expected_genus(args) -> Report:
    rep = Report("expected-genus", _params(args, "n", "q", "method"))
    paths = {}
    for m in _methods(args.method):
        if m == "closed":
            paths[m] = expected_genus(args.n, args.q)
        elif m == "charsum":
            paths[m] = expected_genus_from_table(a_table(args.n, 2, args.q, "charsum"), args.q)
        else:
            qq = _need_numeric_prime(args.q, "the oracle")
            paths[m] = genus_stats(args.n, qq, 2, budget=args.budget, threads=args.threads).mean()
    rep.add((), paths)
    return rep


def cmd_fulman(args) -> Report:
    rep = Report("fulman", _params(args, "n", "q", "method"))
    rep.dim_names = ("r",)
    series = {}
    for m in _methods(args.method):
        if m == "oracle":
            series[m] = fixed_dim_census(args.n, _need_numeric_prime(args.q, "the oracle"))
        elif m == "closed":
            series[m] = fulman_series(args.n, args.q)
    if not series:
        raise UsageError("fulman supports --method closed, oracle or all")
    for r in range(args.n + 1):
        rep.add((r,), {m: s[r] for m, s in series.items()})
    return rep


def cmd_oracle(args) -> Report:
    rep = Report("oracle", _params(args, "group", "n", "q", "k"))
    if args.group == "sn":
        table = brute_count_sn(args.n, args.k, budget=args.budget)
    else:
        q = _need_numeric_prime(args.q, "the oracle")
        table = brute_count_gl(args.n, q, args.k, budget=args.budget, threads=args.threads)
    for dims, v in table.items():
        rep.add(dims, {"oracle": v})
    return rep


COMMANDS = {
    "coeff": cmd_coeff,
    "table": cmd_table,
    "verify": cmd_verify,
    "asympt": cmd_asympt,
    "expected-genus": cmd_expected_genus,
    "fulman": cmd_fulman,
    "oracle": cmd_oracle,
}

DEFAULT_FORMAT = {"coeff": "text", "expected-genus": "text"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qglf",
        description="Exact factorization counts for regular elliptic elements of GL_n(F_q)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, methods=("closed", "charsum", "oracle", "all"), method_default="closed"):
        p.add_argument("--q", type=parse_q, default=SYM, help="field size (prime) or 'sym'")
        p.add_argument("--format", choices=("json", "csv", "text"), default=None)
        p.add_argument("--threads", type=int, default=default_threads(),
                       help="oracle worker processes (default: $QGLF_THREADS or 1)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="maximum number of enumerated tuples")
        if methods:
            p.add_argument("--method", choices=methods, default=method_default)

    p = sub.add_parser("coeff", help="a single closed-form coefficient")
    p.add_argument("--kind", required=True, choices=("m_q", "b2", "bk", "t_q", "P_g"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--rs", type=parse_ints, help="comma-separated dimensions")
    p.add_argument("--p", type=parse_ints, help="comma-separated falling-basis indices")
    p.add_argument("--t", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--l", type=int, help="number of reflections")
    p.add_argument("--g", type=int)
    common(p, methods=None)

    p = sub.add_parser("table", help="the full table a_{r_1..r_k}(q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    common(p)

    p = sub.add_parser("verify", help="compare all computation paths cell by cell",
                       description="Closed and charsum paths are always compared; the "
                                   "oracle joins for prime --q unless --method closed/charsum.")
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--k", type=int, default=2)
    common(p, method_default=None)

    p = sub.add_parser("asympt", help="growth ratios of genus-g counts")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n-max", type=int, dest="n_max", default=40)
    common(p, methods=None)

    p = sub.add_parser("expected-genus", help="mean genus of a two-factor factorization")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("fulman", help="census of GL_n(F_q) by fixed space dimension")
    p.add_argument("--n", type=int, required=True)
    common(p, methods=("closed", "oracle", "all"))

    p = sub.add_parser("oracle", help="raw brute-force counts")
    p.add_argument("--group", choices=("gl", "sn"), default="gl")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    common(p, methods=None)
    return ap


def _validate(args) -> None:
    for name in ("n", "k", "g", "m", "l", "t", "u", "n_max"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    if getattr(args, "n", None) == 0:
        raise UsageError("--n must be positive")
    if getattr(args, "k", None) is not None and args.k < 1:
        raise UsageError("--k must be positive")
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if args.command == "verify" and (args.n is None) == (args.n_max is None):
        raise UsageError("verify needs exactly one of --n and --n-max")
    if getattr(args, "n", None) == 1 and args.q == 2 and args.command != "coeff":
        raise UsageError("GL_1(F_2) has no regular elliptic element without fixed vectors")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _validate(args)
        rep = COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"qglf: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, ArithmeticError) as e:
        print(f"qglf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    fmt_name = args.format or DEFAULT_FORMAT.get(args.command, "json")
    sys.stdout.write(rep.render(fmt_name))
    return 0 if rep.agreement else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
