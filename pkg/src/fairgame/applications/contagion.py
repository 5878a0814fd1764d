"""Network formation under contagion risk.

Agents are nodes ``0..n-1``. A network's surplus is its economic value minus a
pandemic cost proportional to collective contagion, and each agent is paid its
Shapley value over agent subsets, where a coalition S keeps only the links
inside S.

Stability is checked at the network level: no agent gains by cutting any subset
of its own links (the Nash condition of the link-announcement game), and no
missing link makes one endpoint strictly better off without making the other
strictly worse off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

import numpy as np

from ..economy import EPS

MAX_AGENTS = 8


@dataclass(frozen=True)
class Network:
    n: int
    links: frozenset = frozenset()

    def __post_init__(self):
        links = set()
        for link in self.links:
            i, j = sorted(int(k) for k in link)
            if i == j:
                raise ValueError(f"self-link at node {i}")
            if not (0 <= i and j < self.n):
                raise ValueError(f"link {link} outside nodes 0..{self.n - 1}")
            links.add((i, j))
        object.__setattr__(self, "links", frozenset(links))

    @classmethod
    def complete(cls, n):
        return cls(n, frozenset(combinations(range(n), 2)))

    @property
    def size(self) -> int:
        return len(self.links)

    def neighbors(self, i) -> set:
        return {j for link in self.links for j in link if i in link and j != i}

    def add(self, i, j) -> "Network":
        return Network(self.n, self.links | {tuple(sorted((i, j)))})

    def remove(self, i, j) -> "Network":
        return Network(self.n, self.links - {tuple(sorted((i, j)))})

    def restrict(self, nodes) -> "Network":
        """Keep only links with both ends in ``nodes`` (all nodes stay present)."""
        nodes = set(nodes)
        return Network(self.n, frozenset(l for l in self.links if l[0] in nodes and l[1] in nodes))

    def relabel(self, perm) -> "Network":
        return Network(self.n, frozenset((perm[i], perm[j]) for i, j in self.links))

    def components(self) -> list:
        """Connected components (isolated nodes included), via union-find."""
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in self.links:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for a in range(self.n):
            groups.setdefault(find(a), []).append(a)
        return sorted(groups.values())


def contagion_potential(g: Network) -> float:
    """Expected infected fraction from one random seed: ``sum(n_j^2) / n^2``."""
    return sum(len(c) ** 2 for c in g.components()) / g.n ** 2


def collective_contagion(g: Network) -> float:
    """Contagion beyond the exogenous ``1/n``."""
    return contagion_potential(g) - 1.0 / g.n


def sqrt_links(g: Network) -> float:
    return math.sqrt(g.size)


@dataclass(frozen=True)
class ContagionParams:
    lam: float
    value_fn: Callable = field(default=sqrt_links, compare=False)

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("pandemic severity must be nonnegative")


def network_surplus(g: Network, p: ContagionParams) -> float:
    return p.value_fn(g) - p.lam * collective_contagion(g)


@lru_cache(maxsize=None)
def _weights(n):
    return [math.factorial(s) * math.factorial(n - s - 1) / math.factorial(n) for s in range(n)]


def network_shapley(g: Network, p: ContagionParams, i: int) -> float:
    """Shapley value of node ``i``: weighted gain from reconnecting i into each S."""
    w = _weights(g.n)
    others = [j for j in range(g.n) if j != i]
    total = 0.0
    for s in range(g.n):
        for S in combinations(others, s):
            total += w[s] * (network_surplus(g.restrict(S + (i,)), p) - network_surplus(g.restrict(S), p))
    return total


def network_payoffs(g: Network, p: ContagionParams) -> np.ndarray:
    return np.array([network_shapley(g, p, i) for i in range(g.n)])


def all_networks(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Network(n, frozenset(pr for k, pr in enumerate(pairs) if mask >> k & 1))


def is_deletion_proof(g: Network, pay, tol: float = EPS) -> bool:
    """No agent strictly gains by cutting any nonempty subset of its links."""
    base = pay(g)
    for i in range(g.n):
        own = sorted(l for l in g.links if i in l)
        for k in range(1, len(own) + 1):
            for cut in combinations(own, k):
                h = Network(g.n, g.links - set(cut))
                if pay(h)[i] > base[i] + tol:
                    return False
    return True


def is_addition_proof(g: Network, pay, tol: float = EPS) -> bool:
    """For every missing link ij: i strictly gains only if j strictly loses (both ways)."""
    base = pay(g)
    for i, j in combinations(range(g.n), 2):
        if (i, j) in g.links:
            continue
        after = pay(g.add(i, j))
        for a, b in ((i, j), (j, i)):
            if after[a] > base[a] + tol and not after[b] < base[b] - tol:
                return False
    return True


def pairwise_nash_networks(n: int, p: ContagionParams, tol: float = EPS) -> list:
    """All pairwise-Nash networks on ``n`` nodes (exhaustive, n <= 8)."""
    if not 1 <= n <= MAX_AGENTS:
        raise ValueError(f"exhaustive network search supports 1..{MAX_AGENTS} agents, got {n}")
    cache = {}

    def pay(g):
        if g.links not in cache:
            cache[g.links] = network_payoffs(g, p)
        return cache[g.links]

    return [
        g for g in all_networks(n)
        if is_deletion_proof(g, pay, tol) and is_addition_proof(g, pay, tol)
    ]


# thresholds between the four regimes of the three-agent illustration
REGIME_BOUNDARIES = (1.8 * math.sqrt(2) - 0.9, 3 * math.sqrt(3) / 2, 4.5)


def lambda_regime_sweep(lambdas, n: int = 3, value_fn: Callable = sqrt_links) -> list:
    """``(lambda, sorted link counts of the stable networks)`` for each lambda."""
    rows = []
    for lam in lambdas:
        stable = pairwise_nash_networks(n, ContagionParams(float(lam), value_fn))
        rows.append((float(lam), tuple(sorted({g.size for g in stable}))))
    return rows


def locate_regime_boundaries(lo: float = 0.0, hi: float = 6.0, step: float = 0.005, n: int = 3) -> list:
    """Midpoints between consecutive sweep points where the stable classes change."""
    grid = np.arange(lo, hi + step / 2, step)
    rows = lambda_regime_sweep(grid, n)
    out = []
    for (l0, c0), (l1, c1) in zip(rows, rows[1:]):
        if c0 != c1:
            out.append(((l0 + l1) / 2, c0, c1))
    return out
