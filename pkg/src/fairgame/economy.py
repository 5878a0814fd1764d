"""Finite free economies, profiles and the sub-profile lattice.

An economy is a finite set of agents, a finite ordered action list per agent, a
reference ("inaction") profile and a surplus value for every action profile.
Profiles are tuples of action indices; labels only matter at the I/O boundary.

The surplus is stored as a dense ``numpy`` array whose axes are the agents, so
that ``surplus[x]`` is the surplus at profile ``x`` and the flat (C-order)
position of a profile is its mixed-radix index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .errors import ProfileError

#: Absolute tolerance used for every equality and tie test in the package.
EPS = 1e-9

Profile = tuple


@dataclass(frozen=True)
class Economy:
    """A finite economy ``(agents, actions, reference, surplus)``.

    ``actions[i]`` lists agent ``i``'s action labels in a fixed order and
    ``reference[i]`` indexes agent ``i``'s reference action. ``surplus`` must have
    shape ``tuple(len(a) for a in actions)``.
    """

    actions: tuple
    surplus: np.ndarray
    reference: tuple = None
    agents: tuple = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        actions = tuple(tuple(str(a) for a in acts) for acts in self.actions)
        if not actions:
            raise ValueError("an economy needs at least one agent")
        for i, acts in enumerate(actions):
            if not acts:
                raise ValueError(f"agent {i} has no actions")
            if len(set(acts)) != len(acts):
                raise ValueError(f"agent {i} has duplicate action labels")
        shape = tuple(len(a) for a in actions)
        surplus = np.array(self.surplus, dtype=float)
        if surplus.shape != shape:
            raise ValueError(f"surplus has shape {surplus.shape}, expected {shape}")
        if not np.all(np.isfinite(surplus)):
            raise ValueError("surplus must be finite everywhere")
        surplus.setflags(write=False)
        reference = (0,) * len(shape) if self.reference is None else tuple(
            int(r) for r in self.reference
        )
        if len(reference) != len(shape):
            raise ValueError("reference profile has the wrong length")
        for i, (r, m) in enumerate(zip(reference, shape)):
            if not 0 <= r < m:
                raise ValueError(f"reference action {r} invalid for agent {i}")
        agents = (
            tuple(str(k + 1) for k in range(len(shape)))
            if self.agents is None
            else tuple(str(a) for a in self.agents)
        )
        if len(agents) != len(shape) or len(set(agents)) != len(agents):
            raise ValueError("agent names must be unique, one per action list")
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "surplus", surplus)
        object.__setattr__(self, "reference", reference)
        object.__setattr__(self, "agents", agents)

    # construction helpers

    @classmethod
    def from_function(cls, actions, fn: Callable, reference=None, agents=None):
        """Tabulate ``fn(labels)`` over every profile; ``fn`` receives action labels."""
        actions = tuple(tuple(a) for a in actions)
        shape = tuple(len(a) for a in actions)
        table = np.empty(shape)
        for x in np.ndindex(*shape):
            table[x] = fn(tuple(actions[i][k] for i, k in enumerate(x)))
        if reference is not None:
            reference = [
                r if isinstance(r, (int, np.integer)) else actions[i].index(r)
                for i, r in enumerate(reference)
            ]
        return cls(actions, table, reference, agents)

    def with_surplus(self, surplus) -> "Economy":
        return Economy(self.actions, surplus, self.reference, self.agents)

    def with_reference(self, reference) -> "Economy":
        return Economy(self.actions, self.surplus, tuple(reference), self.agents)

    # basic geometry

    @property
    def n(self) -> int:
        return len(self.actions)

    @property
    def shape(self) -> tuple:
        return self.surplus.shape

    @property
    def size(self) -> int:
        return int(self.surplus.size)

    def f(self, x) -> float:
        return float(self.surplus[self.check(x)])

    def check(self, x) -> Profile:
        """Return ``x`` as a tuple of ints, raising ProfileError if it does not fit."""
        try:
            x = tuple(int(k) for k in x)
        except (TypeError, ValueError) as exc:
            raise ProfileError(f"not a profile: {x!r}") from exc
        if len(x) != self.n:
            raise ProfileError(f"profile has {len(x)} coordinates, economy has {self.n} agents")
        for i, (k, m) in enumerate(zip(x, self.shape)):
            if not 0 <= k < m:
                raise ProfileError(f"action index {k} invalid for agent {self.agents[i]}")
        return x

    def profiles(self) -> Iterator[Profile]:
        """All profiles in mixed-radix order (agent 0 most significant)."""
        return np.ndindex(*self.shape)

    def index(self, x) -> int:
        return int(np.ravel_multi_index(self.check(x), self.shape))

    def profile(self, index: int) -> Profile:
        return tuple(int(k) for k in np.unravel_index(index, self.shape))

    def labels(self, x) -> tuple:
        return tuple(self.actions[i][k] for i, k in enumerate(self.check(x)))

    def parse(self, labels) -> Profile:
        """Turn a sequence (or agent-name mapping) of action labels into a profile."""
        if isinstance(labels, dict):
            labels = [labels[a] for a in self.agents]
        if len(labels) != self.n:
            raise ProfileError(f"expected {self.n} action labels, got {len(labels)}")
        out = []
        for i, lab in enumerate(labels):
            try:
                out.append(self.actions[i].index(str(lab)))
            except ValueError:
                raise ProfileError(
                    f"unknown action {lab!r} for agent {self.agents[i]}"
                ) from None
        return tuple(out)

    def active_masks(self) -> list:
        """Boolean arrays ``A[j]`` (broadcastable to ``shape``): agent j active at x."""
        if "masks" not in self._cache:
            masks = []
            for j, (m, o) in enumerate(zip(self.shape, self.reference)):
                view = [1] * self.n
                view[j] = m
                masks.append((np.arange(m) != o).reshape(view))
            self._cache["masks"] = masks
        return self._cache["masks"]

    def activity(self) -> np.ndarray:
        """Integer array of ``|x|`` at every profile."""
        if "activity" not in self._cache:
            total = np.zeros(self.shape, dtype=int)
            for mask in self.active_masks():
                total = total + mask
            self._cache["activity"] = total
        return self._cache["activity"]


class ActiveSet(NamedTuple):
    members: frozenset
    size: int


def active_set(e: Economy, x) -> ActiveSet:
    """Agents whose action in ``x`` differs from their reference action."""
    x = e.check(x)
    members = frozenset(i for i in range(e.n) if x[i] != e.reference[i])
    return ActiveSet(members, len(members))


def _replace(x, agents, values) -> Profile:
    y = list(x)
    for j in agents:
        y[j] = values[j]
    return tuple(y)


def sub_profiles(e: Economy, x) -> list:
    """All sub-profiles of ``x``: reset any subset of active agents to reference.

    Ordered by the subset of agents kept active, smallest subsets first, so the
    reference profile comes first and ``x`` last.
    """
    x = e.check(x)
    active = sorted(active_set(e, x).members)
    out = []
    for k in range(len(active) + 1):
        for kept in combinations(active, k):
            dropped = [j for j in active if j not in kept]
            out.append(_replace(x, dropped, e.reference))
    return out


def sub_profiles_excluding(e: Economy, i: int, x) -> list:
    """Sub-profiles of ``x`` in which agent ``i`` plays its reference action."""
    _check_agent(e, i)
    return [y for y in sub_profiles(e, x) if y[i] == e.reference[i]]


def is_sub_profile(e: Economy, y, x) -> bool:
    """``y`` is a sub-profile of ``x``: each coordinate equals x's or the reference."""
    y, x = e.check(y), e.check(x)
    return all(yj == xj or yj == oj for yj, xj, oj in zip(y, x, e.reference))


def marginal_contribution(e: Economy, i: int, xp, x) -> float:
    """``f(xp_{-i}, x_i) - f(xp)`` for ``xp`` a sub-profile of ``x`` with i at reference."""
    _check_agent(e, i)
    xp, x = e.check(xp), e.check(x)
    if xp[i] != e.reference[i] or not is_sub_profile(e, xp, x):
        raise ProfileError(f"{xp} is not a sub-profile of {x} with agent {i} at reference")
    with_i = xp[:i] + (x[i],) + xp[i + 1:]
    return float(e.surplus[with_i] - e.surplus[xp])


def is_unproductive(e: Economy, i: int, tol: float = EPS) -> bool:
    """True iff agent ``i`` has zero marginal contribution at every (x', x) pair.

    The pairs ``(x', x_i)`` range over all profiles with i at reference and all of
    i's actions, so this is the same as f not depending on i's coordinate.
    """
    _check_agent(e, i)
    ref = np.take(e.surplus, [e.reference[i]], axis=i)
    return bool(np.all(np.abs(e.surplus - ref) <= tol))


def permute_surplus(e: Economy, x, perm) -> dict:
    """Relabel the active agents of ``x`` by ``perm`` and return ``y -> f(perm^x(y))``.

    ``perm`` maps agent k to ``perm[k]`` (sequence or dict) and must fix every
    agent that is inactive in ``x``. The result is keyed by the sub-profiles of x.
    """
    x = e.check(x)
    perm = _as_permutation(e, perm)
    active = active_set(e, x).members
    for k in range(e.n):
        if k not in active and perm[k] != k:
            raise ProfileError(f"permutation moves agent {k}, which is inactive in {x}")
    out = {}
    for y in sub_profiles(e, x):
        image = list(e.reference)
        for k in range(e.n):
            j = perm[k]
            image[j] = x[j] if y[k] != e.reference[k] else e.reference[j]
        out[y] = float(e.surplus[tuple(image)])
    return out


def _as_permutation(e: Economy, perm) -> list:
    if isinstance(perm, dict):
        perm = [perm.get(k, k) for k in range(e.n)]
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(e.n)):
        raise ProfileError(f"{perm} is not a permutation of the agents")
    return perm


def _check_agent(e: Economy, i: int):
    if not 0 <= i < e.n:
        raise ProfileError(f"agent index {i} out of range for {e.n} agents")

