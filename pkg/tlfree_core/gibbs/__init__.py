"""Perturbative Gibbs laws: potentials, Schwinger-Dyson solving and the tangle oracle."""
from .potential import Coupling, Potential, cabled, free_potential, quadratic_potential, quartic_potential, symmetrize
from .series import FormalSeries, Order, format_order, orders_upto
from .solver import GibbsTrace, sd_residual, solve_sd
from .tangles import connected_cumulant_check, connected_tangles, oracle_trace, tangle_oracle

__all__ = [
    "Coupling",
    "Potential",
    "cabled",
    "free_potential",
    "quadratic_potential",
    "quartic_potential",
    "symmetrize",
    "FormalSeries",
    "Order",
    "format_order",
    "orders_upto",
    "GibbsTrace",
    "sd_residual",
    "solve_sd",
    "connected_cumulant_check",
    "connected_tangles",
    "oracle_trace",
    "tangle_oracle",
]
