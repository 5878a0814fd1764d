"""Exchange economies and markets with transferable payoff as free economies.

Each agent's action is a bundle from its finite consumption (or input) set, the
reference profile is the endowment, and the surplus is the net aggregate
utility ``F(x) = sum_j u_j(x_j) - u_j(w_j)``. In a market the per-agent
production functions play the role of the utilities.

Only allocations (profiles with ``sum_j x_j <= sum_j w_j`` good by good) may be
selected. Two equilibrium notions are reported:

* ``filtered``: Nash equilibria of the unconstrained game that happen to be
  allocations;
* ``constrained``: allocations where no agent gains by switching to another
  bundle that keeps the profile an allocation.

The fair outcome is the set of constrained equilibria with the largest surplus,
which in a fair economy is the largest exact potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..economy import EPS, Economy
from ..equilibrium import Game, build_game, pure_nash
from ..payschemes import Shapley

PURE_EXCHANGE = "pure-exchange"
TRANSFERABLE = "transferable-payoff"


def _bundle(b) -> tuple:
    return tuple(float(v) for v in np.atleast_1d(np.asarray(b, dtype=float)))


def _label(b: tuple) -> str:
    fmt = [f"{v:g}" for v in b]
    return fmt[0] if len(fmt) == 1 else "(" + ",".join(fmt) + ")"


@dataclass(frozen=True)
class ExchangeSpec:
    """Endowments, finite bundle sets and utilities (or production functions).

    Bundles may be scalars for single-good economies. ``utilities[i]`` is called
    with a tuple of floats.
    """

    endowments: Sequence
    consumption_sets: Sequence
    utilities: Sequence[Callable]
    mode: str = PURE_EXCHANGE
    agents: tuple = None

    def __post_init__(self):
        w = tuple(_bundle(b) for b in self.endowments)
        sets = tuple(tuple(_bundle(b) for b in xs) for xs in self.consumption_sets)
        if not (len(w) == len(sets) == len(self.utilities)):
            raise ValueError("endowments, consumption sets and utilities must have one entry per agent")
        goods = {len(b) for b in w} | {len(b) for xs in sets for b in xs}
        if len(goods) != 1:
            raise ValueError("every bundle must have the same number of goods")
        if any(v < 0 for b in w for v in b):
            raise ValueError("endowments must be nonnegative")
        if self.mode not in (PURE_EXCHANGE, TRANSFERABLE):
            raise ValueError(f"unknown mode {self.mode!r}")
        for i, (wi, xs) in enumerate(zip(w, sets)):
            if len(set(xs)) != len(xs):
                raise ValueError(f"agent {i} lists a bundle twice")
            if wi not in xs:
                raise ValueError(f"endowment {_label(wi)} of agent {i} is not in its consumption set")
        object.__setattr__(self, "endowments", w)
        object.__setattr__(self, "consumption_sets", sets)
        object.__setattr__(self, "utilities", tuple(self.utilities))

    @property
    def goods(self) -> int:
        return len(self.endowments[0])


@dataclass(frozen=True, eq=False)
class ExchangeEconomy:
    spec: ExchangeSpec
    economy: Economy
    feasible: np.ndarray        # bool mask over profiles: the allocations

    def bundles(self, x) -> tuple:
        return tuple(self.spec.consumption_sets[i][k] for i, k in enumerate(x))

    def is_feasible(self, x) -> bool:
        return bool(self.feasible[self.economy.check(x)])


def build_exchange_economy(spec: ExchangeSpec) -> ExchangeEconomy:
    """Free economy with bundles as actions and endowments as the reference."""
    sets = spec.consumption_sets
    ref = tuple(xs.index(w) for xs, w in zip(sets, spec.endowments))
    levels = [np.array([u(b) for b in xs]) - u(w) for u, xs, w in zip(spec.utilities, sets, spec.endowments)]
    shape = tuple(len(xs) for xs in sets)
    n = len(shape)
    surplus = np.zeros(shape)
    total = np.zeros(shape + (spec.goods,))
    for i in range(n):
        view = [1] * n
        view[i] = shape[i]
        surplus = surplus + levels[i].reshape(view)
        total = total + np.array(sets[i]).reshape(view + [spec.goods])
    supply = np.sum(spec.endowments, axis=0)
    feasible = np.all(total <= supply + EPS, axis=-1)
    feasible.setflags(write=False)
    actions = [[_label(b) for b in xs] for xs in sets]
    e = Economy(actions, surplus, ref, spec.agents)
    return ExchangeEconomy(spec, e, feasible)


def constrained_nash(g: Game, feasible: np.ndarray, tol: float = EPS) -> list:
    """Allocations where no agent gains by moving to another allocation."""
    ok = np.array(feasible, dtype=bool)
    stable = ok.copy()
    for i in range(g.n):
        u = np.where(ok, g.payoff[..., i], -np.inf)
        best = u.max(axis=i, keepdims=True)
        stable &= g.payoff[..., i] >= best - tol
    return [tuple(int(k) for k in x) for x in np.argwhere(stable)]


@dataclass
class ExchangeReport:
    filtered: list             # unconstrained Nash equilibria that are allocations
    constrained: list          # Nash equilibria of the allocation-constrained game
    fair_outcome: list         # constrained equilibria with maximal surplus
    payoffs: dict              # profile -> pay vector, for every reported profile


def exchange_equilibria(ex: ExchangeEconomy, scheme=None, tol: float = EPS) -> ExchangeReport:
    g = build_game(ex.economy, scheme or Shapley())
    filtered = [x for x in pure_nash(g, tol) if ex.feasible[x]]
    constrained = constrained_nash(g, ex.feasible, tol)
    fair = []
    if constrained:
        top = max(ex.economy.surplus[x] for x in constrained)
        fair = [x for x in constrained if ex.economy.surplus[x] >= top - tol]
    payoffs = {x: g.payoff[x].copy() for x in set(filtered) | set(constrained)}
    return ExchangeReport(filtered, constrained, fair, payoffs)


def build_decision_economy(spec: ExchangeSpec, decisions: Sequence, allocate: Callable) -> ExchangeEconomy:
    """Reduce an exchange economy to finite decision sets.

    ``allocate(decision_profile)`` returns one bundle per agent; every decision
    profile must map to an allocation. The reference is the all-first-decisions
    profile, which must map to the endowments.
    """
    decisions = [tuple(d) for d in decisions]
    shape = tuple(len(d) for d in decisions)
    n = len(shape)
    surplus = np.zeros(shape)
    supply = np.sum(spec.endowments, axis=0)
    base = sum(u(w) for u, w in zip(spec.utilities, spec.endowments))
    for x in np.ndindex(*shape):
        bundles = [_bundle(b) for b in allocate(tuple(decisions[i][k] for i, k in enumerate(x)))]
        if np.any(np.sum(bundles, axis=0) > supply + EPS):
            raise ValueError(f"decision profile {x} does not map to an allocation")
        if x == (0,) * n and tuple(bundles) != spec.endowments:
            raise ValueError("the reference decisions must keep the endowments")
        surplus[x] = sum(u(b) for u, b in zip(spec.utilities, bundles)) - base
    e = Economy(decisions, surplus, None, spec.agents)
    feasible = np.ones(shape, dtype=bool)
    feasible.setflags(write=False)
    return ExchangeEconomy(spec, e, feasible)


# worked examples


def grid_bundles(*maxima) -> list:
    return [tuple(float(v) for v in b) for b in np.ndindex(*(m + 1 for m in maxima))]


def no_competitive_equilibrium_spec() -> ExchangeSpec:
    """Two goods; agent A holds no good 2 and no price clears the market."""
    return ExchangeSpec(
        endowments=[(1, 0), (2, 1)],
        consumption_sets=[
            [(1, 0), (0, 0)],
            [(2, 1), (1, 1), (0, 1), (2, 0), (1, 0), (0, 0)],
        ],
        utilities=[lambda b: b[0] + b[1], lambda b: min(b)],
        agents=("A", "B"),
    )


def shapley_shubik_spec() -> ExchangeSpec:
    return ExchangeSpec(
        endowments=[(2, 0), (0, 2)],
        consumption_sets=[grid_bundles(2, 2), grid_bundles(2, 2)],
        utilities=[
            lambda b: b[0] + 3 * b[1] - b[1] ** 2 / 2,
            lambda b: b[1] + 3 * b[0] - b[0] ** 2 / 2,
        ],
        agents=("A", "B"),
    )


def shapley_shubik_decision_economy() -> ExchangeEconomy:
    """Decisions a, b, c: keep the endowment, sell one unit, sell both units."""
    sold = {"a": 0, "b": 1, "c": 2}

    def allocate(d):
        sa, sb = sold[d[0]], sold[d[1]]
        return (2 - sa, sb), (sa, 2 - sb)

    return build_decision_economy(shapley_shubik_spec(), [("a", "b", "c")] * 2, allocate)


def homogeneous_market_spec() -> ExchangeSpec:
    return ExchangeSpec(
        endowments=[1, 1],
        consumption_sets=[[0, 1, 2], [0, 1, 2]],
        utilities=[lambda b: np.sqrt(b[0])] * 2,
        mode=TRANSFERABLE,
    )


def heterogeneous_market_spec() -> ExchangeSpec:
    return ExchangeSpec(
        endowments=[1, 2],
        consumption_sets=[[0, 1, 2, 3], [0, 1, 2, 3]],
        utilities=[lambda b: b[0] ** 2 / 2, lambda b: b[0] ** 2],
        mode=TRANSFERABLE,
    )
