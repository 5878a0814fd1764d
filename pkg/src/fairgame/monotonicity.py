"""Weak and strict monotonicity of the surplus, and the efficiency guarantees they give.

Monotonicity asks for an order on profiles that is complete along every
single-agent line and along which f increases. No decision procedure for that
existential condition is attempted. Two checkable sufficient criteria are used
instead, the same structures the efficiency argument relies on:

* weak: some maximizer of f plays, for every agent, an action that weakly
  dominates all others in f whatever the others do;
* strict: for every agent, any two actions compare the same way in f in every
  context, so each agent's actions are totally ordered and the product order is
  strictly f-increasing.

A negative verdict means "criterion not met", not "not monotonic".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .economy import EPS, Economy
from .equilibrium import build_game, pareto_analysis, pure_nash
from .payschemes import Shapley

WEAK_METHOD = "dominant-action maximizer (sufficient criterion)"
STRICT_METHOD = "uniform pairwise dominance per agent (sufficient criterion)"


@dataclass
class MonotonicityVerdict:
    weak: bool
    witness: tuple = None          # maximizer of f with dominant coordinates
    strict: bool = False
    orders: list = None            # per agent: action indices from lowest to highest f
    method: str = WEAK_METHOD


def _dominant(e: Economy, i: int, a: int, tol: float) -> bool:
    line = np.take(e.surplus, [a], axis=i)
    return bool(np.all(line >= e.surplus - tol))


def check_weak_monotonicity(e: Economy, tol: float = EPS) -> MonotonicityVerdict:
    """Look for a maximizer of f whose every coordinate is weakly dominant in f."""
    best = e.surplus.max()
    for x in np.argwhere(e.surplus >= best - tol):
        x = tuple(int(k) for k in x)
        if all(_dominant(e, i, x[i], tol) for i in range(e.n)):
            return MonotonicityVerdict(True, x, method=WEAK_METHOD)
    return MonotonicityVerdict(False, method=WEAK_METHOD)


def _uniform_order(e: Economy, i: int, tol: float):
    """Actions of agent i sorted by f if every pair compares uniformly, else None."""
    m = e.shape[i]
    lines = [np.take(e.surplus, [a], axis=i) for a in range(m)]
    below = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(a + 1, m):
            d = lines[b] - lines[a]
            if np.all(d > tol):
                below[a, b] = True
            elif np.all(d < -tol):
                below[b, a] = True
            else:
                return None
    # uniform pairwise comparison of real-valued lines is transitive
    return sorted(range(m), key=lambda a: int(below[:, a].sum()))


def check_strict_monotonicity(e: Economy, tol: float = EPS) -> MonotonicityVerdict:
    """Strict verdict with per-agent total orders (and the implied weak witness)."""
    orders = []
    for i in range(e.n):
        order = _uniform_order(e, i, tol)
        if order is None:
            weak = check_weak_monotonicity(e, tol)
            weak.method = f"{WEAK_METHOD}; strict: {STRICT_METHOD}"
            return weak
        orders.append(order)
    top = tuple(order[-1] for order in orders)
    return MonotonicityVerdict(
        True, top, strict=True, orders=orders, method=f"{WEAK_METHOD}; strict: {STRICT_METHOD}"
    )


@dataclass
class Theorem2Report:
    verdict: MonotonicityVerdict
    equilibria: list
    efficient_equilibria: list
    passed: bool
    failures: list = field(default_factory=list)


def verify_theorem2(e: Economy, tol: float = EPS) -> Theorem2Report:
    """Check the efficiency guarantees of monotone fair economies on ``e``.

    Weak verdict: the witness is an equilibrium of the Shapley game and some
    equilibrium is Pareto-efficient. Strict verdict: the equilibrium is unique
    and maximizes f.
    """
    verdict = check_strict_monotonicity(e, tol)
    g = build_game(e, Shapley())
    eqs = pure_nash(g, tol)
    pareto = pareto_analysis(g, tol)
    efficient = [x for x in eqs if pareto.is_efficient(x)]
    failures = []
    if verdict.weak:
        if verdict.witness not in eqs:
            failures.append(f"witness {verdict.witness} is not an equilibrium")
        if not efficient:
            failures.append("no Pareto-efficient equilibrium")
    if verdict.strict:
        if len(eqs) != 1:
            failures.append(f"expected a unique equilibrium, found {len(eqs)}")
        elif e.surplus[eqs[0]] < e.surplus.max() - tol:
            failures.append(f"equilibrium {eqs[0]} does not maximize f")
    return Theorem2Report(verdict, eqs, efficient, not failures, failures)
