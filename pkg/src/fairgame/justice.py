"""Taxation and redistribution: the egalitarian family and reference relocation.

``alpha`` is the share of surplus paid by marginal contribution; ``1 - alpha``
is taxed and split equally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .economy import EPS, Economy
from .equilibrium import build_game, pareto_analysis, pure_nash
from .payschemes import Egalitarian, ShiftedShapley, require_zero_reference


@dataclass
class AlphaSweepRow:
    alpha: float
    equilibria: list
    any_efficient: bool
    min_equilibrium_payoff: float


def alpha_sweep(e: Economy, grid, tol: float = EPS) -> list:
    """Solve the egalitarian game at each alpha in ``grid``."""
    grid = [float(a) for a in grid]
    if not grid:
        raise ValueError("alpha grid is empty")
    require_zero_reference(e, "the egalitarian scheme")
    rows = []
    for alpha in grid:
        g = build_game(e, Egalitarian(alpha))
        eqs = pure_nash(g, tol)
        pareto = pareto_analysis(g, tol)
        rows.append(AlphaSweepRow(
            alpha=alpha,
            equilibria=eqs,
            any_efficient=any(pareto.is_efficient(x) for x in eqs),
            min_equilibrium_payoff=min((float(g.payoff[x].min()) for x in eqs), default=float("nan")),
        ))
    return rows


def alpha_grid(resolution: float) -> list:
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    steps = int(np.floor(1.0 / resolution + 1e-9))
    grid = [round(k * resolution, 12) for k in range(steps + 1)]
    if grid[-1] < 1.0 - 1e-12:
        grid.append(1.0)
    return grid


def find_alpha0(e: Economy, resolution: float = 0.01, tol: float = EPS) -> float:
    """Largest grid alpha below which every grid alpha has an efficient equilibrium.

    Grid search only: the true threshold may sit anywhere before the next grid
    point (see ``alpha0_bracket``).
    """
    best = None
    for row in alpha_sweep(e, alpha_grid(resolution), tol):
        if not row.any_efficient:
            break
        best = row.alpha
    return best if best is not None else float("nan")


def alpha0_bracket(e: Economy, resolution: float = 0.01, tol: float = EPS) -> tuple:
    """``(alpha0, next grid point)``; the upper end is None when alpha0 = 1."""
    a0 = find_alpha0(e, resolution, tol)
    grid = alpha_grid(resolution)
    later = [a for a in grid if a > a0]
    return a0, (later[0] if later else None)


def check_nonnegativity(e: Economy, alpha, tol: float = EPS):
    """``(ok, witness)``: every equilibrium payoff of the alpha-game is >= -tol.

    ``witness`` is ``(profile, agent, payoff)`` for the first violation, else None.
    Refuses economies where f takes a negative value.
    """
    if np.any(e.surplus < -tol):
        bad = tuple(int(k) for k in np.argwhere(e.surplus < -tol)[0])
        raise ValueError(f"surplus is negative at {bad}: f = {e.surplus[bad]:g}")
    g = build_game(e, Egalitarian(alpha))
    for x in pure_nash(g, tol):
        for i, v in enumerate(g.payoff[x]):
            if v < -tol:
                return False, (x, i, float(v))
    return True, None


@dataclass
class ReferenceCertificate:
    reference: tuple
    alpha: float
    is_equilibrium: bool
    payoffs: np.ndarray
    max_deviation_gain: float      # best unilateral gain from o' (<= 0 when certified)
    bound_slack: float             # min over deviations of f(o')/n - deviator payoff


def optimal_reference(e: Economy, alpha, tol: float = EPS):
    """Move the reference to a maximizer of f and certify it as an equilibrium.

    The maximizer with the lowest mixed-radix index is used. The rebuilt economy
    is paid by the shifted egalitarian scheme; returns ``(economy, certificate)``.
    """
    best = float(e.surplus.max())
    if best <= 0:
        raise ValueError(f"max f = {best:g} <= 0: the shifted scheme needs a positive reference surplus")
    o_new = tuple(int(k) for k in np.unravel_index(int(np.argmax(e.surplus)), e.shape))
    moved = e.with_reference(o_new)
    scheme = ShiftedShapley(alpha)
    g = build_game(moved, scheme)
    at_o = g.payoff[o_new]
    gain = -np.inf
    slack = np.inf
    for i in range(e.n):
        for a in range(e.shape[i]):
            if a == o_new[i]:
                continue
            y = o_new[:i] + (a,) + o_new[i + 1:]
            v = float(g.payoff[y + (i,)])
            gain = max(gain, v - float(at_o[i]))
            slack = min(slack, best / e.n - v)
    if gain == -np.inf:
        gain, slack = 0.0, 0.0
    cert = ReferenceCertificate(o_new, scheme.alpha, bool(gain <= tol), np.array(at_o), gain, slack)
    return moved, cert
