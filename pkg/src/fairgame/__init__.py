"""Fair pay schemes and pure-strategy equilibria of finite free economies."""

from .economy import (
    EPS,
    ActiveSet,
    Economy,
    active_set,
    is_sub_profile,
    is_unproductive,
    marginal_contribution,
    permute_surplus,
    sub_profiles,
    sub_profiles_excluding,
)
from .equilibrium import (
    DeviationCycle,
    EquilibriumReport,
    FairnessAudit,
    Game,
    ParetoReport,
    audit_fairness,
    best_response_dynamics,
    build_game,
    cycle_excess_sum,
    exact_potential,
    find_deviation_cycle,
    four_cycle_residual,
    improvement_edges,
    is_nash,
    pareto_analysis,
    potential_residual,
    pure_nash,
    solve,
)
from .errors import FairGameError, LoadError, NoConvergence, ProfileError, SchemeError, SizeCapError
from .io import EconomyDocument, load_corpus, load_economy, save_economy
from .justice import alpha0_bracket, alpha_sweep, check_nonnegativity, find_alpha0, optimal_reference
from .monotonicity import check_strict_monotonicity, check_weak_monotonicity, verify_theorem2
from .payschemes import (
    CustomTable,
    DividendTable,
    Egalitarian,
    Shapley,
    ShiftedShapley,
    basis_function,
    dividend,
    dividend_potential,
    dividends,
    egalitarian_pay,
    parse_scheme,
    shapley_pay,
    shapley_table,
    shapley_table_via_dividends,
    shapley_via_dividends,
    shifted_pay,
)

__version__ = "0.1.0"
