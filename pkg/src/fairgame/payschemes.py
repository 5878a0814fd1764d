"""Pay schemes that split the surplus of a profile among the agents.

The generalized Shapley scheme pays agent i at profile x a weighted average of
its marginal contributions over the sub-profiles of x where i is at reference,
with weight ``s! (k - s - 1)! / k!`` for a sub-profile with s active agents when
x has k. It is computed here in two independent ways:

* directly from marginal contributions (``shapley_pay`` per profile and the
  vectorized ``shapley_table``), and
* from the dividends ``c_y`` of the surplus on the sub-profile lattice, each
  dividend split equally among the agents active in ``y``
  (``shapley_via_dividends``).

The egalitarian scheme mixes Shapley with an equal split, and the shifted scheme
handles economies whose reference surplus is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .economy import EPS, Economy, active_set, marginal_contribution, sub_profiles, sub_profiles_excluding
from .errors import SchemeError, SizeCapError

#: Default budget for the number of marginal-contribution terms in a full game.
DEFAULT_MAX_TERMS = 10**8


@lru_cache(maxsize=None)
def shapley_weights(n: int) -> np.ndarray:
    """``W[s, k] = s! (k-s-1)! / k!`` for ``0 <= s < k <= n`` (zero elsewhere).

    Exact factorials up to n = 20, log-gamma beyond that to avoid overflow.
    """
    w = np.zeros((n + 1, n + 1))
    for k in range(1, n + 1):
        for s in range(k):
            if n <= 20:
                w[s, k] = math.factorial(s) * math.factorial(k - s - 1) / math.factorial(k)
            else:
                w[s, k] = math.exp(math.lgamma(s + 1) + math.lgamma(k - s) - math.lgamma(k + 1))
    w.setflags(write=False)
    return w


def require_zero_reference(e: Economy, what="this scheme"):
    f_o = float(e.surplus[e.reference])
    if abs(f_o) > EPS:
        raise SchemeError(f"{what} needs f(o) = 0, got f(o) = {f_o:g}")


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise SchemeError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def term_count(e: Economy) -> int:
    """Number of marginal-contribution terms needed to tabulate the Shapley game.

    Sum over profiles of ``|x| * 2**(|x|-1)``. Counted through the generating
    polynomial of profile activity so it never enumerates the profile space.
    """
    counts = [1]  # counts[k] = number of profiles with k active agents
    for m in e.shape:
        nxt = [0] * (len(counts) + 1)
        for k, c in enumerate(counts):
            nxt[k] += c
            nxt[k + 1] += c * (m - 1)
        counts = nxt
    return sum(k * 2 ** (k - 1) * c for k, c in enumerate(counts) if k)


def check_size(e: Economy, max_terms: int | None = DEFAULT_MAX_TERMS):
    if max_terms is None:
        return
    terms = term_count(e)
    if terms > max_terms:
        raise SizeCapError(terms, max_terms)


# Shapley, directly from marginal contributions


def shapley_pay(e: Economy, x) -> np.ndarray:
    """Generalized Shapley payoff vector at profile ``x``."""
    require_zero_reference(e, "the Shapley scheme")
    x = e.check(x)
    k = active_set(e, x).size
    w = shapley_weights(e.n)
    out = np.zeros(e.n)
    for i in active_set(e, x).members:
        for xp in sub_profiles_excluding(e, i, x):
            s = active_set(e, xp).size
            out[i] += w[s, k] * marginal_contribution(e, i, xp, x)
    return out


def shapley_table(e: Economy, max_terms: int | None = DEFAULT_MAX_TERMS) -> np.ndarray:
    """Shapley payoffs at every profile, shape ``e.shape + (n,)``.

    Vectorized over profiles: for agent i and each set S of other agents, the
    sub-profile keeping S active contributes wherever every agent in S (and i) is
    active in x, with a weight that depends on ``|x|``.
    """
    require_zero_reference(e, "the Shapley scheme")
    check_size(e, max_terms)
    n, f = e.n, e.surplus
    masks = e.active_masks()
    k = e.activity()
    w = shapley_weights(n)
    grids = np.ogrid[tuple(slice(0, m) for m in e.shape)]
    ref = [np.full([1] * n, o) for o in e.reference]
    out = np.zeros(e.shape + (n,))
    for i in range(n):
        others = [j for j in range(n) if j != i]
        total = np.zeros(e.shape)
        for size in range(n):
            for S in combinations(others, size):
                idx = [grids[j] if j in S else ref[j] for j in range(n)]
                base = f[tuple(idx)]
                idx[i] = grids[i]
                mc = f[tuple(idx)] - base
                valid = masks[i]
                for j in S:
                    valid = valid & masks[j]
                total = total + np.where(valid, w[size, k] * mc, 0.0)
        out[..., i] = total
    return out


# Dividends on the sub-profile lattice


@dataclass(frozen=True)
class DividendTable:
    """Dividends ``c_x(f)`` for every profile (``c_o`` is stored and equals f(o) = 0)."""

    economy: Economy
    coeffs: np.ndarray

    def __getitem__(self, x) -> float:
        return float(self.coeffs[self.economy.check(x)])

    def items(self):
        """``(profile, c_x)`` pairs for every profile other than the reference."""
        for x in self.economy.profiles():
            if x != self.economy.reference:
                yield x, float(self.coeffs[x])

    def reconstruct(self) -> np.ndarray:
        """``sum_x c_x f_x`` with unit basis functions ``f_x(z) = [x sub-profile of z]``."""
        return _zeta(self.economy, self.coeffs)


def dividend(e: Economy, x) -> float:
    """Signed inclusion-exclusion of f over the sub-profiles of ``x``."""
    x = e.check(x)
    k = active_set(e, x).size
    return float(sum(
        (-1) ** (k - active_set(e, y).size) * e.surplus[y] for y in sub_profiles(e, x)
    ))


def dividends(e: Economy) -> DividendTable:
    """Dividends at every profile, via a per-agent difference along each axis."""
    require_zero_reference(e, "the dividend decomposition")
    c = np.array(e.surplus, dtype=float)
    for j, o in enumerate(e.reference):
        c = c - np.where(e.active_masks()[j], np.take(c, [o], axis=j), 0.0)
    c.setflags(write=False)
    return DividendTable(e, c)


def basis_function(e: Economy, x, scaled: bool = False) -> np.ndarray:
    """Indicator of the profiles having ``x`` as a sub-profile.

    With ``scaled=True`` the indicator is multiplied by ``|x|``; coefficients in
    that basis are ``c_x / |x|``.
    """
    x = e.check(x)
    out = np.ones(e.shape, dtype=float)
    for j, (xj, oj) in enumerate(zip(x, e.reference)):
        if xj != oj:
            view = [1] * e.n
            view[j] = e.shape[j]
            out = out * (np.arange(e.shape[j]) == xj).reshape(view)
    if scaled:
        out = out * active_set(e, x).size
    return out


def _zeta(e: Economy, h: np.ndarray) -> np.ndarray:
    """``g(x) = sum of h(y) over sub-profiles y of x`` (inverse of the dividend transform)."""
    g = np.array(h, dtype=float)
    for j, o in enumerate(e.reference):
        g = g + np.where(e.active_masks()[j], np.take(g, [o], axis=j), 0.0)
    return g


def shapley_via_dividends(e: Economy, x, table: DividendTable | None = None) -> np.ndarray:
    """Shapley payoff at ``x`` as equal shares of dividends of active sub-profiles."""
    table = dividends(e) if table is None else table
    out = np.zeros(e.n)
    for y in sub_profiles(e, x):
        members = active_set(e, y).members
        for i in members:
            out[i] += table[y] / len(members)
    return out


def shapley_table_via_dividends(e: Economy) -> np.ndarray:
    c = dividends(e).coeffs
    k = e.activity()
    share = np.where(k > 0, c / np.maximum(k, 1), 0.0)
    out = np.zeros(e.shape + (e.n,))
    for i, mask in enumerate(e.active_masks()):
        out[..., i] = _zeta(e, np.where(mask, share, 0.0))
    return out


def dividend_potential(e: Economy) -> np.ndarray:
    """``sum over non-reference sub-profiles y of x of c_y / |y|`` at every profile."""
    c = dividends(e).coeffs
    k = e.activity()
    return _zeta(e, np.where(k > 0, c / np.maximum(k, 1), 0.0))


# Egalitarian, shifted and tabulated schemes


def egalitarian_pay(e: Economy, x, alpha) -> np.ndarray:
    """``alpha * Shapley + (1 - alpha) * f(x)/n``; ``1 - alpha`` is the tax rate."""
    alpha = _check_alpha(alpha)
    return alpha * shapley_pay(e, x) + (1 - alpha) * e.f(x) / e.n


def _shifted(e: Economy) -> Economy:
    f_o = float(e.surplus[e.reference])
    if f_o <= 0:
        raise SchemeError(f"the shifted scheme needs f(o) > 0, got f(o) = {f_o:g}")
    return e.with_surplus(e.surplus - f_o)


def shifted_pay(e: Economy, x, alpha=1.0) -> np.ndarray:
    """Shapley of ``f - f(o)`` plus ``f(o)/n``, mixed with the equal split of f(x)."""
    alpha = _check_alpha(alpha)
    base = shapley_pay(_shifted(e), x) + e.f(e.reference) / e.n
    return alpha * base + (1 - alpha) * e.f(x) / e.n


def custom_pay(e: Economy, table, x) -> np.ndarray:
    table = table.payoffs if isinstance(table, CustomTable) else np.asarray(table)
    return np.array(table[e.check(x)], dtype=float)


@dataclass(frozen=True)
class Shapley:
    alpha = 1.0

    def pay(self, e, x):
        return shapley_pay(e, x)

    def table(self, e, max_terms=DEFAULT_MAX_TERMS):
        return shapley_table(e, max_terms)

    def __str__(self):
        return "shapley"


@dataclass(frozen=True)
class Egalitarian:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    def pay(self, e, x):
        return egalitarian_pay(e, x, self.alpha)

    def table(self, e, max_terms=DEFAULT_MAX_TERMS):
        equal = np.repeat((e.surplus / e.n)[..., None], e.n, axis=-1)
        if self.alpha == 0.0:
            require_zero_reference(e, "the egalitarian scheme")
            return equal
        return self.alpha * shapley_table(e, max_terms) + (1 - self.alpha) * equal

    def __str__(self):
        return f"egalitarian:{self.alpha:g}"


@dataclass(frozen=True)
class ShiftedShapley:
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    def pay(self, e, x):
        return shifted_pay(e, x, self.alpha)

    def table(self, e, max_terms=DEFAULT_MAX_TERMS):
        base = shapley_table(_shifted(e), max_terms) + e.f(e.reference) / e.n
        equal = np.repeat((e.surplus / e.n)[..., None], e.n, axis=-1)
        return self.alpha * base + (1 - self.alpha) * equal

    def __str__(self):
        return f"shifted:{self.alpha:g}"


@dataclass(frozen=True, eq=False)
class CustomTable:
    """An arbitrary payoff vector per profile, shape ``e.shape + (n,)``."""

    payoffs: np.ndarray
    alpha = None

    def __post_init__(self):
        p = np.array(self.payoffs, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "payoffs", p)

    def _fits(self, e):
        if self.payoffs.shape != e.shape + (e.n,):
            raise SchemeError(
                f"payoff table has shape {self.payoffs.shape}, expected {e.shape + (e.n,)}"
            )

    def pay(self, e, x):
        self._fits(e)
        return custom_pay(e, self, x)

    def table(self, e, max_terms=None):
        self._fits(e)
        return np.array(self.payoffs)

    def __str__(self):
        return "table"


def parse_scheme(text: str, table=None):
    """Parse ``shapley``, ``egalitarian:<a>``, ``shifted:<a>`` or ``table``."""
    name, _, arg = text.strip().partition(":")
    name = name.lower()
    try:
        if name == "shapley" and not arg:
            return Shapley()
        if name == "egalitarian":
            return Egalitarian(float(arg))
        if name == "shifted":
            return ShiftedShapley(float(arg) if arg else 1.0)
    except ValueError as exc:
        raise SchemeError(f"bad scheme {text!r}: {exc}") from None
    if name == "table" and not arg:
        if table is None:
            raise SchemeError("scheme 'table' needs a payoff table")
        return CustomTable(table)
    raise SchemeError(f"unknown scheme {text!r}")
