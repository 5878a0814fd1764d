"""Bonus redistribution in a team and reward bias in academic publishing."""

from __future__ import annotations

import numpy as np

from ..economy import Economy
from ..equilibrium import Game, build_game
from ..payschemes import CustomTable, Shapley

TEAMWORK_BONUS = np.array([
    [0, 5, 1, 13],
    [2, 8, 10, 2],
    [5, 13, 1, 13],
    [3, 9, 13, 2],
], dtype=float)
TEAMWORK_COSTS = ([0, 4, 4, 3], [0, 4, 4, 5])

PUBLISHING_SURPLUS = np.array([
    [0, 10, 8, 4],
    [10, 20, 14, 8],
    [8, 14, 10, 8],
    [4, 8, 8, 6],
], dtype=float)

# pay under the biased rule, indexed [x1, x2, agent]
PUBLISHING_PHI = np.array([
    [(0, 0), (0, 10), (0, 8), (0, 4)],
    [(5, 5), (5, 15), (4, 10), (2, 6)],
    [(3, 5), (6, 8), (1, 9), (3, 5)],
    [(3, 1), (4, 4), (4, 4), (2, 4)],
], dtype=float)


def teamwork_economy(bonus=TEAMWORK_BONUS) -> Economy:
    bonus = np.asarray(bonus, dtype=float)
    actions = [[f"{p}{k + 1}" for k in range(m)] for p, m in zip("bd", bonus.shape)]
    return Economy(actions, bonus, agents=("B", "D"))


def build_teamwork_economy(bonus=TEAMWORK_BONUS, costs=TEAMWORK_COSTS) -> Game:
    """Shapley split of the team bonus, net of each worker's effort cost."""
    return build_game(teamwork_economy(bonus), Shapley(), costs)


def publishing_economy() -> Economy:
    actions = [[str(k) for k in range(4)]] * 2
    return Economy(actions, PUBLISHING_SURPLUS, agents=("1", "2"))


def build_publishing_economies():
    """``(biased game, fair game)`` on the same knowledge economy."""
    e = publishing_economy()
    return build_game(e, CustomTable(PUBLISHING_PHI)), build_game(e, Shapley())
