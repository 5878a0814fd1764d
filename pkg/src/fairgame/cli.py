"""Command-line interface.

Exit codes: 0 success, 1 check mismatch, 2 usage or parse error, 3 size cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from .applications.contagion import MAX_AGENTS, ContagionParams, pairwise_nash_networks
from .equilibrium import audit_fairness, build_game, exact_potential, solve
from .errors import FairGameError, LoadError, SchemeError, SizeCapError
from .io import resolve
from .justice import alpha_sweep
from .payschemes import DEFAULT_MAX_TERMS, CustomTable, parse_scheme
from .suite import FAIL, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3


def _money(v) -> str:
    return f"{float(v):.1f}"


def _emit(header, rows, out, stream):
    if out == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    rows = [[str(c) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[k]) for r in rows]) for k, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(), file=stream)
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=stream)


def _profile_label(e, x):
    return "(" + ",".join(e.actions[i][k] for i, k in enumerate(x)) + ")"


def _document(args):
    d = resolve(args.economy)
    if args.scheme:
        table = d.scheme.payoffs if isinstance(d.scheme, CustomTable) else None
        d.scheme = parse_scheme(args.scheme, table)
    return d


def cmd_solve(args, stream) -> int:
    d = _document(args)
    g = build_game(d.economy, d.scheme, d.costs, args.max_terms)
    rep = solve(g)
    e = d.economy
    if not rep.equilibria:
        print(f"{d.name or args.economy}: no pure equilibrium under {d.scheme}", file=stream)
        return EXIT_OK
    rows = []
    for k, x in enumerate(rep.equilibria):
        pot = _money(rep.potential_values[k]) if rep.potential_values else "-"
        rows.append([
            _profile_label(e, x),
            " ".join(_money(v) for v in g.payoff[x]),
            "yes" if rep.pareto_efficient[k] else "no",
            pot,
        ])
    _emit(["equilibrium", "payoffs", "pareto", "potential"], rows, args.out, stream)
    return EXIT_OK


def cmd_audit(args, stream) -> int:
    d = _document(args)
    table = d.scheme.table(d.economy, args.max_terms)
    a = audit_fairness(d.economy, table)
    rows = [[k, "ok" if v else "violated"] for k, v in a.summary().items()]
    rows.append(["max gap to Shapley", _money(a.max_gap)])
    _emit(["property", "verdict"], rows, args.out, stream)
    return EXIT_OK


def cmd_potential(args, stream) -> int:
    d = _document(args)
    g = build_game(d.economy, d.scheme, d.costs, args.max_terms)
    phi = exact_potential(g)
    e = d.economy
    rows = [[_profile_label(e, x), _money(e.surplus[x]), _money(phi[x])] for x in e.profiles()]
    _emit(["profile", "surplus", "potential"], rows, args.out, stream)
    return EXIT_OK


def _grid(text):
    try:
        a, b, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("grid needs a <= b and a positive step")
    n = int(np.floor((b - a) / step + 1e-9))
    return [round(a + k * step, 12) for k in range(n + 1)]


def cmd_alpha_sweep(args, stream) -> int:
    d = resolve(args.economy)
    e = d.economy
    rows = []
    for r in alpha_sweep(e, args.grid):
        eqs = " ".join(_profile_label(e, x) for x in r.equilibria)
        rows.append([f"{r.alpha:g}", eqs or "-", "yes" if r.any_efficient else "no",
                     _money(r.min_equilibrium_payoff) if r.equilibria else "-"])
    _emit(["alpha", "equilibria", "efficient", "min_payoff"], rows, args.out or "csv", stream)
    return EXIT_OK


def cmd_network(args, stream) -> int:
    if not 1 <= args.n <= MAX_AGENTS:
        print(f"error: --n must be between 1 and {MAX_AGENTS}", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    for lam in args.lam:
        stable = pairwise_nash_networks(args.n, ContagionParams(lam))
        classes = sorted({g.size for g in stable})
        rows.append([f"{lam:g}", "{" + ",".join(map(str, classes)) + "}", len(stable)])
    _emit(["lambda", "link_classes", "networks"], rows, args.out, stream)
    return EXIT_OK


def cmd_paper_suite(args, stream) -> int:
    rows = run_suite()
    _emit(["status", "check", "detail"], [[r.status, r.name, r.detail] for r in rows], args.out, stream)
    return EXIT_MISMATCH if any(r.status == FAIL for r in rows) else EXIT_OK


def _lambdas(text):
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad lambda list {text!r}") from None
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("lambda must be nonnegative")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fairgame", description="Fair pay schemes and equilibria of finite economies.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scheme=True):
        sp.add_argument("economy", help="economy document path or bundled name (e.g. table1)")
        if scheme:
            sp.add_argument("--scheme", help="shapley | egalitarian:<a> | shifted:<a> | table")
        sp.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
        sp.add_argument("--out", choices=("table", "csv"), default=None)

    sp = sub.add_parser("solve", help="list pure equilibria")
    common(sp)
    sp.set_defaults(func=cmd_solve)
    sp = sub.add_parser("audit", help="check the fairness axioms of the pay scheme")
    common(sp)
    sp.set_defaults(func=cmd_audit)
    sp = sub.add_parser("potential", help="tabulate the exact potential")
    common(sp)
    sp.set_defaults(func=cmd_potential)
    sp = sub.add_parser("alpha-sweep", help="solve the egalitarian family over a grid of alpha")
    common(sp, scheme=False)
    sp.add_argument("--grid", type=_grid, default=_grid("0:1:0.1"))
    sp.set_defaults(func=cmd_alpha_sweep)
    sp = sub.add_parser("network", help="pairwise-Nash networks under contagion")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--lambda", dest="lam", type=_lambdas, default=[1.0], help="comma-separated values")
    sp.add_argument("--out", choices=("table", "csv"), default=None)
    sp.set_defaults(func=cmd_network)
    sp = sub.add_parser("paper-suite", help="run every bundled worked example")
    sp.add_argument("--out", choices=("table", "csv"), default=None)
    sp.set_defaults(func=cmd_paper_suite)
    return p


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command != "alpha-sweep" and args.out is None:
        args.out = "table"
    try:
        return args.func(args, stream)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (LoadError, SchemeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FairGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def run(argv=None) -> str:
    """Run the CLI and return its standard output (for scripting and tests)."""
    buf = io.StringIO()
    main(argv, buf)
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
