"""Exchange economies where fair equilibria exist without competitive prices."""

from fairgame.applications import (
    build_exchange_economy,
    exchange_equilibria,
    heterogeneous_market_spec,
    homogeneous_market_spec,
    no_competitive_equilibrium_spec,
    shapley_shubik_decision_economy,
)

for name, ex in (
    ("no competitive equilibrium", build_exchange_economy(no_competitive_equilibrium_spec())),
    ("homogeneous market", build_exchange_economy(homogeneous_market_spec())),
    ("heterogeneous market", build_exchange_economy(heterogeneous_market_spec())),
    ("sell 0, 1 or 2 units", shapley_shubik_decision_economy()),
):
    r = exchange_equilibria(ex)
    print(name)
    for x in r.fair_outcome:
        print("  bundles", ex.bundles(x), "payoffs", r.payoffs[x].round(3))
