import numpy as np
import pytest
from hypothesis import given, settings

from conftest import economies, economy_batch
from fairgame import (
    CustomTable,
    Economy,
    Egalitarian,
    Game,
    NoConvergence,
    ProfileError,
    SchemeError,
    Shapley,
    ShiftedShapley,
    audit_fairness,
    best_response_dynamics,
    build_game,
    cycle_excess_sum,
    exact_potential,
    find_deviation_cycle,
    four_cycle_residual,
    is_nash,
    pareto_analysis,
    potential_residual,
    pure_nash,
    solve,
)

TABLE2 = np.array([[(0, 0), (2, 3), (3, 2)], [(1, 1), (3, 1), (2, 2)]], float)
CYCLE = np.array([[(0, 4), (3, 0)], [(1, 0), (0, 2)]], float)
PD = np.array([[(0, 0), (-2, 1)], [(1, -2), (-1, -1)]], float)


def test_fair_example(table1):
    g = build_game(table1)
    assert pure_nash(g) == [(1, 1), (1, 2)]
    assert is_nash(g, (1, 1)) and not is_nash(g, (0, 0))
    phi = exact_potential(g)
    assert phi[1, 1] == pytest.approx(5.5)
    assert potential_residual(g, phi) < 1e-12


def test_unfair_example(table1):
    g = build_game(table1, CustomTable(TABLE2))
    assert pure_nash(g) == []
    with pytest.raises(SchemeError):
        exact_potential(g)
    assert four_cycle_residual(g) > 0


def test_cycle_of_deviations():
    g = Game.from_payoffs(CYCLE, [["c", "d"], ["a", "b"]])
    cyc = find_deviation_cycle(g)
    assert cyc.profiles == ((0, 0), (1, 0), (1, 1), (0, 1))
    assert cyc.deviators == (0, 1, 0, 1)
    assert cyc.excess_sum == pytest.approx(10)
    with pytest.raises(NoConvergence) as info:
        best_response_dynamics(g, (0, 0))
    assert len(info.value.trajectory) > 4


def test_cycle_excess_validation():
    g = Game.from_payoffs(CYCLE)
    with pytest.raises(ProfileError):
        cycle_excess_sum(g, [(0, 0), (1, 1)])
    with pytest.raises(ProfileError):
        cycle_excess_sum(g, [(0, 0), (1, 0), (1, 1), (0, 1)], deviators=[1, 1, 0, 1])


def test_table4_dominated(table4):
    rep = solve(build_game(table4))
    assert rep.equilibria == [(1, 2)]
    assert rep.pareto_efficient == [False]
    assert rep.pareto_dominators == [(2, 1)]


def test_prisoners_dilemma():
    g = Game.from_payoffs(PD, [["C", "D"], ["C", "D"]])
    assert pure_nash(g) == [(1, 1)]
    assert not pareto_analysis(g).is_efficient((1, 1))


def test_costs_enter_payoffs(table1):
    g = build_game(table1, costs=[[0, 1], [0, 0.5, 2]])
    np.testing.assert_allclose(g.payoff[1, 1], (-0.5, 3.0))
    phi = exact_potential(g)
    assert potential_residual(g, phi) < 1e-12


@pytest.mark.parametrize(
    "costs, match",
    [([[0, 1]], "economy has 2"), ([[1, 0], [0, 0, 0]], "reference"), ([[0, -1], [0, 0, 0]], "negative"),
     ([[0, 1], [0, 0]], "needs 3"), ([{"zz": 1}, {}], "unknown")],
)
def test_cost_validation(table1, costs, match):
    with pytest.raises(ValueError, match=match):
        build_game(table1, costs=costs)


@given(economies(max_agents=3, max_actions=3))
@settings(max_examples=60, deadline=None)
def test_exact_potential_all_schemes(e):
    schemes = [Shapley(), Egalitarian(0.0), Egalitarian(0.6)]
    if e.surplus.max() > 0:
        schemes.append(ShiftedShapley(0.7))
        e_shift = e.with_reference(np.unravel_index(int(np.argmax(e.surplus)), e.shape))
    for s in schemes:
        econ = e_shift if isinstance(s, ShiftedShapley) else e
        g = build_game(econ, s)
        assert potential_residual(g, exact_potential(g)) < 1e-8
        assert four_cycle_residual(g) < 1e-8
        eqs = pure_nash(g)
        assert eqs
        assert find_deviation_cycle(g) is None


@pytest.mark.parametrize("seed", range(5))
def test_best_response_converges_to_equilibrium(seed):
    for e in economy_batch(seed, 20):
        g = build_game(e)
        for start in list(e.profiles())[:5]:
            assert best_response_dynamics(g, start) in pure_nash(g)


def test_best_response_order(table1):
    g = build_game(table1)
    assert best_response_dynamics(g, (0, 0), order=[1, 0]) == (1, 1)


def test_pareto_witness_is_efficient(table4):
    p = pareto_analysis(build_game(table4))
    for x, dom in p.dominators.items():
        w = p.witness(x)
        assert w is None or p.is_efficient(w)
        assert dom


def test_audit_fair_and_unfair(table1):
    fair = audit_fairness(table1, Shapley().table(table1))
    assert fair.fair and all(fair.summary().values())
    unfair = audit_fairness(table1, TABLE2)
    assert not unfair.fair
    assert not unfair.marginality
    assert unfair.local_efficiency


def test_audit_flags_each_axiom():
    e = Economy([["a", "b"], ["c", "d"]], [[0, 2], [2, 4]])
    favoritism = np.array([[(0, 0), (0, 2)], [(2, 0), (3, 1)]], float)
    a = audit_fairness(e, favoritism)
    assert not a.symmetry and a.local_efficiency
    leaky = Shapley().table(e) * 0.5
    assert not audit_fairness(e, leaky).local_efficiency
    dummy = Economy([["a", "b"], ["c", "d"]], [[0, 0], [2, 2]])
    shared = np.array([[(0, 0), (0, 0)], [(1, 1), (1, 1)]], float)
    assert not audit_fairness(dummy, shared).unproductivity


def test_audit_egalitarian_breaks_unproductivity():
    e = Economy([["a", "b"], ["c", "d"]], [[0, 0], [2, 2]])
    a = audit_fairness(e, Egalitarian(0.5).table(e))
    assert a.symmetry is True
    assert not a.unproductivity
