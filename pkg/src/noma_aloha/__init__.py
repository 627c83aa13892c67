"""Solver and simulator for the two-power-level random-access game."""

from .equilibrium import (
    EquilibriumCheck,
    NESolution,
    PureNEList,
    Regime,
    mixed_ne,
    pure_nash_equilibria,
    solve_full_transmit_root,
    verify_epsilon_ne,
    w_star,
)
from .game import (
    STRATEGY_ORDER,
    Bimatrix,
    GameConfig,
    MixedStrategy,
    Strategy,
    bimatrix,
    expected_payoff,
    expected_throughput,
    payoff,
    reward,
)
from .simulate import (
    PayoffCheck,
    SimConfig,
    SimReport,
    empirical_payoff_check,
    simulate,
)
from .social import (
    SocialOptimum,
    average_payoff,
    average_payoff_gradient,
    coordinate_ascent_optimum,
    maximize_average_payoff,
)

__version__ = "0.1.0"

__all__ = [
    "Bimatrix",
    "EquilibriumCheck",
    "GameConfig",
    "MixedStrategy",
    "NESolution",
    "PayoffCheck",
    "PureNEList",
    "Regime",
    "STRATEGY_ORDER",
    "SimConfig",
    "SimReport",
    "SocialOptimum",
    "Strategy",
    "average_payoff",
    "average_payoff_gradient",
    "bimatrix",
    "coordinate_ascent_optimum",
    "empirical_payoff_check",
    "expected_payoff",
    "expected_throughput",
    "maximize_average_payoff",
    "mixed_ne",
    "payoff",
    "pure_nash_equilibria",
    "reward",
    "simulate",
    "solve_full_transmit_root",
    "verify_epsilon_ne",
    "w_star",
]
