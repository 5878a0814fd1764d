"""Worked applications: teams, contagion networks, publishing and exchange."""

from .contagion import (
    REGIME_BOUNDARIES,
    ContagionParams,
    Network,
    collective_contagion,
    contagion_potential,
    lambda_regime_sweep,
    locate_regime_boundaries,
    network_payoffs,
    network_shapley,
    network_surplus,
    pairwise_nash_networks,
)
from .exchange import (
    ExchangeEconomy,
    ExchangeReport,
    ExchangeSpec,
    build_decision_economy,
    build_exchange_economy,
    constrained_nash,
    exchange_equilibria,
    heterogeneous_market_spec,
    homogeneous_market_spec,
    no_competitive_equilibrium_spec,
    shapley_shubik_decision_economy,
    shapley_shubik_spec,
)
from .teamwork import (
    build_publishing_economies,
    build_teamwork_economy,
    publishing_economy,
    teamwork_economy,
)
