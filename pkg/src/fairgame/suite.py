"""Regression runner over the bundled worked examples.

Each check returns a ``SuiteRow``. Status ``NOTE`` marks a documented
discrepancy between a printed reference table and the computed one; it is
reported but does not count as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .applications import contagion, exchange, teamwork
from .equilibrium import build_game, find_deviation_cycle, pareto_analysis, pure_nash
from .io import corpus_names, load_corpus
from .justice import optimal_reference
from .payschemes import Egalitarian, shapley_table

PASS, FAIL, NOTE = "PASS", "FAIL", "NOTE"

TABLE1_SHAPLEY = np.array([[(0, 0), (0, 5), (0, 5)], [(2, 0), (0.5, 3.5), (0.5, 3.5)]])
TABLE4_SHAPLEY = np.array([
    [(0, 0), (0, 0), (0, 12), (0, 6)],
    [(13, 0), (6.5, -6.5), (1.5, 0.5), (4, -3)],
    [(3, 0), (8, 5), (-1, 8), (-1, 2)],
])
TEAMWORK_SHAPLEY = np.array([
    [(0, 0), (0, 5), (0, 1), (0, 13)],
    [(2, 0), (2.5, 5.5), (5.5, 4.5), (-4.5, 6.5)],
    [(5, 0), (6.5, 6.5), (2.5, -1.5), (2.5, 10.5)],
    [(3, 0), (3.5, 5.5), (7.5, 5.5), (-4, 6)],
])
TEAMWORK_NET = np.array([
    [(0, 0), (0, 1), (0, -3), (0, 8)],
    [(-2, 0), (-1.5, 1.5), (1.5, 0.5), (-8.5, 1.5)],
    [(1, 0), (2.5, 2.5), (-1.5, -5.5), (-1.5, 5.5)],
    [(0, 0), (0.5, 1.5), (4.5, 1.5), (-7, 1)],
])
# printed "fair" publishing table; not the Shapley value of the stated f
PUBLISHING_PRINTED = np.array([
    [(0, 0), (0, 10), (0, 8), (0, 4)],
    [(10, 5), (10, 10), (7, 7), (4, 4)],
    [(8, 0), (7, 7), (5, 5), (4, 4)],
    [(4, 0), (4, 4), (4, 4), (3, 3)],
])
TAX_ES = (41758.5, 38686.5, 5746.0)
REGIMES = {1.0: (3,), 2.0: (1, 3), 2.7: (1,), 5.0: (0,)}


@dataclass
class SuiteRow:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


def _row(name, ok, detail=""):
    return SuiteRow(name, PASS if ok else FAIL, detail)


def _labels(e, x):
    return [e.actions[i][k] for i, k in enumerate(x)]


def check_document(name: str) -> list:
    d = load_corpus(name)
    e, exp = d.economy, d.expect
    g = build_game(e, d.scheme, d.costs)
    eqs = pure_nash(g)
    pareto = pareto_analysis(g)
    rows = []
    if "equilibria" in exp:
        got = sorted(_labels(e, x) for x in eqs)
        rows.append(_row(f"{name}: equilibria", got == sorted(exp["equilibria"]), f"{got}"))
    if "efficient" in exp:
        got = [pareto.is_efficient(x) for x in eqs]
        rows.append(_row(f"{name}: efficiency", got == list(exp["efficient"]), f"{got}"))
    if "equilibrium_payoffs" in exp:
        got = [g.payoff[x] for x in eqs]
        ok = len(got) == len(exp["equilibrium_payoffs"]) and all(
            np.allclose(a, b, atol=1e-6) for a, b in zip(got, exp["equilibrium_payoffs"])
        )
        rows.append(_row(f"{name}: equilibrium payoffs", ok, "; ".join(_money(p) for p in got)))
    if "dominated_by" in exp:
        got = [_labels(e, pareto.witness(x)) if pareto.witness(x) else None for x in eqs]
        rows.append(_row(f"{name}: dominating profile", got == exp["dominated_by"], f"{got}"))
    return rows


def _money(v):
    return "(" + ", ".join(f"{float(a):.1f}" for a in v) + ")"


def check_shapley_tables() -> list:
    rows = []
    for name, expected in (("table1", TABLE1_SHAPLEY), ("table4", TABLE4_SHAPLEY)):
        got = shapley_table(load_corpus(name).economy)
        rows.append(_row(f"{name}: Shapley table", np.allclose(got, expected, atol=1e-9, rtol=0)))
    got = shapley_table(teamwork.teamwork_economy())
    rows.append(_row("teamwork: Shapley bonus table", np.allclose(got, TEAMWORK_SHAPLEY, atol=1e-9, rtol=0)))
    net = teamwork.build_teamwork_economy().payoff
    rows.append(_row("teamwork: net payoffs", np.allclose(net, TEAMWORK_NET, atol=1e-9, rtol=0)))
    got = shapley_table(teamwork.publishing_economy())
    diff = np.argwhere(np.any(np.abs(got - PUBLISHING_PRINTED) > 1e-9, axis=-1))
    if len(diff):
        where = ", ".join(str(tuple(map(int, x))) for x in diff[:4])
        rows.append(SuiteRow("publishing: printed fair table", NOTE,
                             f"{len(diff)} entries differ from the Shapley value, e.g. {where}"))
    else:
        rows.append(_row("publishing: printed fair table", True))
    sym = np.allclose(got[..., 0], got[..., 1].T)
    rows.append(_row("publishing: Shapley table symmetric", sym))
    return rows


def check_tax() -> list:
    d = load_corpus("tax")
    g = build_game(d.economy, Egalitarian(0.8))
    x = tuple(d.economy.actions[i].index(a) for i, a in enumerate(("c", "b", "a")))
    got = g.payoff[x]
    ok = np.all(np.abs(got - np.array(TAX_ES)) <= 0.1)
    rows = [_row("tax: ES(0.8) at (c,b,a)", bool(ok), _money(got))]
    for alpha in (1.0, 0.8):
        eqs = pure_nash(build_game(d.economy, Egalitarian(alpha)))
        rows.append(_row(f"tax: unique equilibrium at alpha={alpha:g}", eqs == [x], f"{eqs}"))
    return rows


def check_cycles() -> list:
    d = load_corpus("table3")
    cyc = find_deviation_cycle(build_game(d.economy, d.scheme))
    ok = cyc is not None and abs(cyc.excess_sum - 10) <= 1e-9
    return [_row("table3: deviation cycle excess", ok, f"{None if cyc is None else cyc.excess_sum}")]


def check_reference() -> list:
    e = load_corpus("table4").economy
    rows = []
    for alpha in (0.0, 0.5, 1.0):
        _, cert = optimal_reference(e, alpha)
        rows.append(_row(f"table4: relocated reference certified at alpha={alpha:g}", cert.is_equilibrium,
                         f"o'={_labels(e, cert.reference)}"))
    return rows


def check_contagion() -> list:
    rows = []
    for lam, classes in REGIMES.items():
        got = contagion.lambda_regime_sweep([lam])[0][1]
        rows.append(_row(f"network: lambda={lam:g}", got == classes, f"{got}"))
    found = contagion.locate_regime_boundaries()
    for b in contagion.REGIME_BOUNDARIES:
        near = [m for m, _, _ in found if abs(m - b) <= 0.01]
        rows.append(_row(f"network: boundary {b:.4f}", bool(near), f"{near}"))
    return rows


def check_exchange() -> list:
    rows = []
    ex = exchange.build_exchange_economy(exchange.no_competitive_equilibrium_spec())
    r = exchange.exchange_equilibria(ex)
    got = [ex.bundles(x) for x in r.fair_outcome]
    want = [((1.0, 0.0), (2.0, 1.0)), ((1.0, 0.0), (1.0, 1.0))]
    zero = all(np.allclose(r.payoffs[x], 0) for x in r.fair_outcome)
    rows.append(_row("exchange: two fair equilibria without a competitive one",
                     sorted(got) == sorted(want) and zero, f"{got}"))
    ss = exchange.shapley_shubik_decision_economy()
    r = exchange.exchange_equilibria(ss)
    ok = r.constrained == [(2, 2)] and np.allclose(r.payoffs[(2, 2)], 2)
    rows.append(_row("exchange: decision-set outcome (c,c)", ok, f"{r.constrained}"))
    for label, spec, want in (
        ("homogeneous market", exchange.homogeneous_market_spec(), [((1.0,), (1.0,))]),
        ("heterogeneous market", exchange.heterogeneous_market_spec(), [((0.0,), (3.0,))]),
    ):
        ex = exchange.build_exchange_economy(spec)
        got = [ex.bundles(x) for x in exchange.exchange_equilibria(ex).fair_outcome]
        rows.append(_row(f"exchange: {label} outcome", got == want, f"{got}"))
    return rows


def run_suite() -> list:
    rows = []
    for name in corpus_names():
        rows += check_document(name)
    for check in (check_shapley_tables, check_tax, check_cycles, check_reference, check_contagion, check_exchange):
        rows += check()
    return rows
