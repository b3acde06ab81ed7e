"""Simulation and numerical-analysis toolkit for a two-gang graffiti lattice model."""

__version__ = "0.1.0"

from .lattice import (
    ConfigurationError,
    CouplingParams,
    Lattice,
    Observables,
    SpinConfig,
    agent_field,
    graffiti_field,
    measure,
    total_energy,
    write_snapshot,
)
from .sampler import (
    ChainSpec,
    ChainStats,
    eta_block_update,
    g_block_update,
    run_chain,
    sweep,
)
from .enumeration import compare_to_oracle, exact_eta_marginal
from .meanfield import (
    MFParams,
    MFSolution,
    TransitionReport,
    alpha_of_ambient,
    mf_residuals,
    minimize_phi,
    phase_diagram,
    phi_full,
    phi_reduced,
    transition,
    tricritical_scan,
)
from .bounds import (
    BoundReport,
    SparseReport,
    bound_report,
    classify_regime,
    constrained_logz_per_site,
    epsilon0,
    incoherent_bond_bounds,
    peierls_bound,
    piy_epsilon,
    sparse_report,
)
from .abm import AbmConfig, AbmState, abm_init, abm_run, abm_step, segregation_index

__all__ = [
    "ConfigurationError",
    "CouplingParams",
    "Lattice",
    "Observables",
    "SpinConfig",
    "agent_field",
    "graffiti_field",
    "measure",
    "total_energy",
    "write_snapshot",
    "ChainSpec",
    "ChainStats",
    "eta_block_update",
    "g_block_update",
    "run_chain",
    "sweep",
    "compare_to_oracle",
    "exact_eta_marginal",
    "MFParams",
    "MFSolution",
    "TransitionReport",
    "alpha_of_ambient",
    "mf_residuals",
    "minimize_phi",
    "phase_diagram",
    "phi_full",
    "phi_reduced",
    "transition",
    "tricritical_scan",
    "BoundReport",
    "SparseReport",
    "bound_report",
    "classify_regime",
    "constrained_logz_per_site",
    "epsilon0",
    "incoherent_bond_bounds",
    "peierls_bound",
    "piy_epsilon",
    "sparse_report",
    "AbmConfig",
    "AbmState",
    "abm_init",
    "abm_run",
    "abm_step",
    "segregation_index",
]
