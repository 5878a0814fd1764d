"""Strategic-form games generated by economies, and their pure equilibria.

A game is a dense payoff array of shape ``actions + (n,)``. Games generated by
the Shapley, egalitarian or shifted schemes (optionally minus separable action
costs) are exact potential games, so they never contain a cycle of strictly
improving unilateral deviations and always have a pure Nash equilibrium.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .economy import EPS, Economy, active_set, is_unproductive, permute_surplus
from .errors import NoConvergence, ProfileError, SchemeError
from .payschemes import (
    DEFAULT_MAX_TERMS,
    CustomTable,
    Egalitarian,
    Shapley,
    ShiftedShapley,
    dividend_potential,
    shapley_table,
)


@dataclass(frozen=True, eq=False)
class Game:
    """Payoff array ``payoff[x + (i,)]`` plus the economy and scheme behind it."""

    economy: Economy
    payoff: np.ndarray
    scheme: object = None
    costs: tuple = None

    def __post_init__(self):
        p = np.array(self.payoff, dtype=float)
        if p.shape != self.economy.shape + (self.economy.n,):
            raise ValueError(f"payoff array has shape {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "payoff", p)

    @classmethod
    def from_payoffs(cls, payoffs, actions=None, agents=None):
        """Wrap a raw payoff array as a game with a tabulated (custom) scheme.

        The surrounding economy takes the payoff sums as surplus and the first
        action of each agent as reference.
        """
        payoffs = np.asarray(payoffs, dtype=float)
        shape = payoffs.shape[:-1]
        if actions is None:
            actions = [[str(k) for k in range(m)] for m in shape]
        e = Economy(actions, payoffs.sum(axis=-1), None, agents)
        return cls(e, payoffs, CustomTable(payoffs))

    @property
    def n(self):
        return self.economy.n

    @property
    def shape(self):
        return self.economy.shape

    def u(self, x) -> np.ndarray:
        return np.array(self.payoff[self.economy.check(x)])

    def cost_array(self) -> np.ndarray:
        """Total cost ``sum_i c_i(x_i)`` at every profile."""
        total = np.zeros(self.shape)
        for i, c in enumerate(self.costs or ()):
            view = [1] * self.n
            view[i] = self.shape[i]
            total = total + np.asarray(c).reshape(view)
        return total


def _cost_vectors(e: Economy, costs):
    if costs is None:
        return None
    if len(costs) != e.n:
        raise ValueError(f"costs given for {len(costs)} agents, economy has {e.n}")
    out = []
    for i, c in enumerate(costs):
        if isinstance(c, dict):
            unknown = set(c) - set(e.actions[i])
            if unknown:
                raise ValueError(f"costs name unknown actions {sorted(unknown)} of agent {e.agents[i]}")
            c = [c.get(a, 0.0) for a in e.actions[i]]
        c = np.array(c, dtype=float)
        if c.shape != (e.shape[i],):
            raise ValueError(f"agent {e.agents[i]} needs {e.shape[i]} costs, got {c.shape}")
        if np.any(c < 0):
            raise ValueError(f"agent {e.agents[i]} has a negative action cost")
        if c[e.reference[i]] != 0:
            raise ValueError(f"agent {e.agents[i]} has nonzero cost at its reference action")
        c.setflags(write=False)
        out.append(c)
    return tuple(out)


def build_game(e: Economy, scheme=None, costs=None, max_terms=DEFAULT_MAX_TERMS) -> Game:
    """Payoffs of ``scheme`` at every profile, minus each agent's action cost."""
    scheme = Shapley() if scheme is None else scheme
    costs = _cost_vectors(e, costs)
    payoff = np.array(scheme.table(e, max_terms), dtype=float)
    for i, c in enumerate(costs or ()):
        view = [1] * e.n
        view[i] = e.shape[i]
        payoff[..., i] -= c.reshape(view)
    return Game(e, payoff, scheme, costs)


def _gains(g: Game, i: int) -> np.ndarray:
    """Best unilateral gain of agent i at every profile."""
    u = g.payoff[..., i]
    return u.max(axis=i, keepdims=True) - u


def pure_nash(g: Game, tol: float = EPS) -> list:
    """Every profile where no agent gains more than ``tol`` by deviating alone."""
    ok = np.ones(g.shape, dtype=bool)
    for i in range(g.n):
        ok &= _gains(g, i) <= tol
    return [tuple(int(k) for k in x) for x in np.argwhere(ok)]


def is_nash(g: Game, x, tol: float = EPS) -> bool:
    x = g.economy.check(x)
    return all(_gains(g, i)[x] <= tol for i in range(g.n))


# Exact potential


def exact_potential(g: Game) -> np.ndarray:
    """Exact potential of a scheme-generated game.

    Shapley part: sum of ``c_y / |y|`` over the sub-profiles y of x; equal-split
    part: ``f(x)/n``; costs enter with a minus sign.
    """
    e, s = g.economy, g.scheme
    if isinstance(s, Shapley):
        alpha, base = 1.0, e
    elif isinstance(s, Egalitarian):
        alpha, base = s.alpha, e
    elif isinstance(s, ShiftedShapley):
        alpha, base = s.alpha, e.with_surplus(e.surplus - e.f(e.reference))
    else:
        raise SchemeError("exact potential is only defined for scheme-generated games")
    phi = (1 - alpha) * e.surplus / e.n - g.cost_array()
    if alpha:
        phi = phi + alpha * dividend_potential(base)
    return phi


def potential_residual(g: Game, phi: np.ndarray) -> float:
    """Largest violation of ``u_i(b, x_-i) - u_i(a, x_-i) = phi(b, x_-i) - phi(a, x_-i)``."""
    worst = 0.0
    for i in range(g.n):
        d = g.payoff[..., i] - phi
        d = d - np.take(d, [0], axis=i)
        worst = max(worst, float(np.abs(d).max()))
    return worst


def four_cycle_residual(g: Game) -> float:
    """Largest |excess sum| over all unilateral 4-cycles between two agents.

    A finite game is an exact potential game iff every such cycle sums to zero,
    so this is a cheap certificate that no improvement cycle exists.
    """
    worst = 0.0
    for i, j in combinations(range(g.n), 2):
        ui = np.moveaxis(g.payoff[..., i], (i, j), (0, 1))
        uj = np.moveaxis(g.payoff[..., j], (i, j), (0, 1))
        # axes: a, b, rest -> cycle (a,b) -> (a',b) -> (a',b') -> (a,b') -> (a,b)
        A = ui[:, None, :, None]   # u_i(a, b)
        Ap = ui[None, :, :, None]  # u_i(a', b)
        Bp = ui[None, :, None, :]  # u_i(a', b')
        C = ui[:, None, None, :]   # u_i(a, b')
        s_i = (Ap - A) + (C - Bp)
        A2 = uj[None, :, :, None]  # u_j(a', b)
        B2 = uj[None, :, None, :]  # u_j(a', b')
        C2 = uj[:, None, None, :]  # u_j(a, b')
        D2 = uj[:, None, :, None]  # u_j(a, b)
        s_j = (B2 - A2) + (D2 - C2)
        worst = max(worst, float(np.abs(s_i + s_j).max()))
    return worst


# Dynamics and cycles


def _best_response(g: Game, i: int, x: tuple, tol: float) -> int:
    line = list(x)
    vals = []
    for a in range(g.shape[i]):
        line[i] = a
        vals.append(g.payoff[tuple(line) + (i,)])
    best = max(vals)
    if vals[x[i]] >= best - tol:
        return x[i]
    return next(a for a, v in enumerate(vals) if v >= best - tol)


def best_response_dynamics(g: Game, start, order=None, tol: float = EPS, max_steps=None):
    """Let agents switch to strict best responses in turn until nobody moves.

    ``order`` is the agent rotation (default 0..n-1). A tied agent keeps its
    action; otherwise the lowest-index best response is taken. Raises
    NoConvergence after ``|X| * n * max|X_i|`` agent turns.
    """
    x = g.economy.check(start)
    order = list(range(g.n)) if order is None else list(order)
    cap = max_steps if max_steps is not None else g.economy.size * g.n * max(g.shape)
    trajectory = [x]
    quiet = 0
    steps = 0
    while quiet < len(order):
        for i in order:
            if quiet >= len(order):
                break
            if steps >= cap:
                raise NoConvergence(
                    f"best-response dynamics did not settle within {cap} turns", trajectory
                )
            steps += 1
            a = _best_response(g, i, x, tol)
            if a == x[i]:
                quiet += 1
                continue
            x = x[:i] + (a,) + x[i + 1:]
            trajectory.append(x)
            quiet = 1
    return x


@dataclass(frozen=True)
class DeviationCycle:
    profiles: tuple
    deviators: tuple
    excess_sum: float


def _deviator(x, y) -> int:
    diff = [k for k, (a, b) in enumerate(zip(x, y)) if a != b]
    if len(diff) != 1:
        raise ProfileError(f"{x} -> {y} is not a unilateral move")
    return diff[0]


def cycle_excess_sum(g: Game, cycle, deviators=None) -> float:
    """Sum of the deviators' payoff changes around a closed list of unilateral moves.

    ``cycle = (x1, ..., xk)`` closes back to x1; ``deviators[l]`` is the agent
    moving from ``x_l`` to ``x_{l+1}`` (inferred when omitted).
    """
    cycle = [g.economy.check(x) for x in cycle]
    if len(cycle) < 2:
        raise ProfileError("a cycle needs at least two profiles")
    steps = list(zip(cycle, cycle[1:] + cycle[:1]))
    inferred = [_deviator(x, y) for x, y in steps]
    if deviators is not None:
        deviators = [int(j) for j in deviators]
        if deviators != inferred:
            raise ProfileError(f"deviators {deviators} do not match the moves {inferred}")
    return float(sum(g.payoff[y + (j,)] - g.payoff[x + (j,)] for (x, y), j in zip(steps, inferred)))


def improvement_edges(g: Game, tol: float = EPS):
    """Edges ``(p, q, agent)`` of the strict-improvement digraph, by flat index."""
    e = g.economy
    flat = np.arange(e.size).reshape(e.shape)
    src, dst, who = [], [], []
    for i in range(g.n):
        u = g.payoff[..., i]
        for a in range(g.shape[i]):
            target = np.take(u, [a], axis=i)
            better = (target - u) > tol
            ids = np.take(flat, [a], axis=i)
            p = flat[better]
            q = np.broadcast_to(ids, e.shape)[better]
            src.append(p)
            dst.append(q)
            who.append(np.full(p.shape, i))
    return np.concatenate(src), np.concatenate(dst), np.concatenate(who)


def find_deviation_cycle(g: Game, max_len: int = 8, tol: float = EPS):
    """A shortest cycle of strictly improving deviations, if one has length <= max_len.

    Cycles only live inside strongly connected components of the improvement
    digraph, so components are found first and searched by BFS only when
    nontrivial. The cycle is rotated to start at its lowest-index profile.
    """
    e = g.economy
    src, dst, who = improvement_edges(g, tol)
    if src.size == 0:
        return None
    graph = csr_matrix((np.ones(src.size), (src, dst)), shape=(e.size, e.size))
    ncomp, labels = connected_components(graph, directed=True, connection="strong")
    sizes = np.bincount(labels, minlength=ncomp)
    if sizes.max() < 2:
        return None
    adj = {}
    for p, q, i in zip(src.tolist(), dst.tolist(), who.tolist()):
        if sizes[labels[p]] > 1 and labels[p] == labels[q]:
            adj.setdefault(p, []).append(q)
    best = None
    for s in sorted(adj):
        path = _shortest_return(adj, s, max_len if best is None else min(max_len, len(best) - 1))
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        return None
    profiles = tuple(e.profile(p) for p in best)
    deviators = tuple(_deviator(x, y) for x, y in zip(profiles, profiles[1:] + profiles[:1]))
    return DeviationCycle(profiles, deviators, cycle_excess_sum(g, profiles, deviators))


def _shortest_return(adj, s, max_len):
    """Shortest cycle through ``s`` using only nodes with index >= s."""
    parent = {s: None}
    depth = {s: 0}
    queue = deque([s])
    while queue:
        p = queue.popleft()
        if depth[p] >= max_len:
            continue
        for q in adj.get(p, ()):
            if q == s:
                path = [p]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if q > s and q not in parent:
                parent[q] = p
                depth[q] = depth[p] + 1
                queue.append(q)
    return None


# Efficiency and reports


@dataclass(frozen=True)
class ParetoReport:
    efficient: np.ndarray  # bool, shape of the profile space
    dominators: dict       # profile -> list of dominating profiles (dominated ones only)

    def is_efficient(self, x) -> bool:
        return bool(self.efficient[tuple(x)])

    def witness(self, x):
        """An efficient profile dominating ``x`` (lowest index), or None."""
        for y in self.dominators.get(tuple(x), ()):
            if self.efficient[y]:
                return y
        return None


def pareto_analysis(g: Game, tol: float = EPS) -> ParetoReport:
    """Flag each profile as Pareto-efficient or list the profiles dominating it."""
    e = g.economy
    flat = g.payoff.reshape(e.size, g.n)
    efficient = np.ones(e.size, dtype=bool)
    dominators = {}
    for p in range(e.size):
        weakly = np.all(flat >= flat[p] - tol, axis=1)
        strictly = np.any(flat > flat[p] + tol, axis=1)
        dom = np.nonzero(weakly & strictly)[0]
        if dom.size:
            efficient[p] = False
            dominators[e.profile(p)] = [e.profile(q) for q in dom]
    return ParetoReport(efficient.reshape(e.shape), dominators)


@dataclass
class EquilibriumReport:
    equilibria: list
    pareto_efficient: list
    pareto_dominators: list
    potential: np.ndarray = None
    potential_values: list = field(default_factory=list)


def solve(g: Game, tol: float = EPS) -> EquilibriumReport:
    """All pure equilibria with Pareto flags; ranked by potential when one exists.

    No refinement is implied by the ranking; it only orders the list.
    """
    eqs = pure_nash(g, tol)
    try:
        phi = exact_potential(g)
    except SchemeError:
        phi = None
    if phi is not None:
        eqs.sort(key=lambda x: (-round(float(phi[x]), 9), g.economy.index(x)))
    pareto = pareto_analysis(g, tol)
    return EquilibriumReport(
        equilibria=eqs,
        pareto_efficient=[pareto.is_efficient(x) for x in eqs],
        pareto_dominators=[pareto.witness(x) for x in eqs],
        potential=phi,
        potential_values=[float(phi[x]) for x in eqs] if phi is not None else [],
    )


# Fairness audit


@dataclass
class FairnessAudit:
    fair: bool
    max_gap: float                 # largest |table - Shapley|
    local_efficiency: bool
    efficiency_gaps: list          # (profile, sum of pay - f)
    unproductivity: bool
    unproductive_paid: list        # (agent, profile, pay)
    symmetry: bool
    symmetry_violations: list      # (profile, i, j)
    marginality: bool
    marginality_violations: list   # (agent, x, y): mc at x >= mc at y but pay lower

    def summary(self) -> dict:
        return {
            "fair": self.fair,
            "local efficiency": self.local_efficiency,
            "unproductivity": self.unproductivity,
            "anonymity (symmetry)": self.symmetry,
            "marginality": self.marginality,
        }


def _mc_vector(e: Economy, i: int, x: tuple, others: tuple) -> np.ndarray:
    """Marginal contributions of i at x over subsets of ``others`` (fixed order)."""
    out = []
    for k in range(len(others) + 1):
        for kept in combinations(others, k):
            xp = list(e.reference)
            for j in kept:
                xp[j] = x[j]
            base = e.surplus[tuple(xp)]
            xp[i] = x[i]
            out.append(e.surplus[tuple(xp)] - base)
    return np.array(out)


def audit_fairness(e: Economy, table, tol: float = EPS) -> FairnessAudit:
    """Compare a payoff table with the Shapley scheme and test each axiom.

    Symmetry: at every x, two active agents that can be swapped without changing
    f on the sub-profiles of x must be paid the same. Marginality is tested
    across pairs of profiles sharing the same set of other active agents: if
    agent i's marginal contributions at x dominate those at y, i must not be paid
    less at x.
    """
    payoffs = table.payoffs if isinstance(table, CustomTable) else np.asarray(table, dtype=float)
    if payoffs.shape != e.shape + (e.n,):
        raise SchemeError(f"payoff table has shape {payoffs.shape}")
    sh = shapley_table(e)
    gap = float(np.abs(payoffs - sh).max())

    eff = payoffs.sum(axis=-1) - e.surplus
    efficiency_gaps = [(tuple(map(int, x)), float(eff[tuple(x)])) for x in np.argwhere(np.abs(eff) > tol)]

    unproductive_paid = []
    for i in range(e.n):
        if is_unproductive(e, i, tol):
            for x in np.argwhere(np.abs(payoffs[..., i]) > tol):
                x = tuple(map(int, x))
                unproductive_paid.append((i, x, float(payoffs[x + (i,)])))

    symmetry_violations = []
    for x in e.profiles():
        members = sorted(active_set(e, x).members)
        if len(members) < 2:
            continue
        base = permute_surplus(e, x, list(range(e.n)))
        for i, j in combinations(members, 2):
            perm = list(range(e.n))
            perm[i], perm[j] = j, i
            swapped = permute_surplus(e, x, perm)
            if all(abs(swapped[y] - base[y]) <= tol for y in base):
                if abs(payoffs[x + (i,)] - payoffs[x + (j,)]) > tol:
                    symmetry_violations.append((x, i, j))

    marginality_violations = []
    for i in range(e.n):
        groups = {}
        for x in e.profiles():
            others = tuple(sorted(active_set(e, x).members - {i}))
            groups.setdefault(others, []).append(x)
        for others, xs in groups.items():
            mcs = {x: _mc_vector(e, i, x, others) for x in xs}
            for x in xs:
                for y in xs:
                    if x != y and np.all(mcs[x] >= mcs[y] - tol):
                        if payoffs[x + (i,)] < payoffs[y + (i,)] - tol:
                            marginality_violations.append((i, x, y))

    return FairnessAudit(
        fair=gap <= max(tol, 1e-9 * max(1.0, float(np.abs(sh).max()))),
        max_gap=gap,
        local_efficiency=not efficiency_gaps,
        efficiency_gaps=efficiency_gaps,
        unproductivity=not unproductive_paid,
        unproductive_paid=unproductive_paid,
        symmetry=not symmetry_violations,
        symmetry_violations=symmetry_violations,
        marginality=not marginality_violations,
        marginality_violations=marginality_violations,
    )


__all__ = [
    "Game",
    "build_game",
    "pure_nash",
    "is_nash",
    "exact_potential",
    "potential_residual",
    "four_cycle_residual",
    "best_response_dynamics",
    "DeviationCycle",
    "cycle_excess_sum",
    "find_deviation_cycle",
    "improvement_edges",
    "ParetoReport",
    "pareto_analysis",
    "EquilibriumReport",
    "solve",
    "FairnessAudit",
    "audit_fairness",
]
