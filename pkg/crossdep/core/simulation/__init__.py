"""
Simulation designs and the Monte Carlo harness for crossdep.
"""

__all__ = [
    "AlternativeKind",
    "ArmaSpec",
    "ErrorFactorModel",
    "ErrorProcess",
    "McConfig",
    "McReport",
    "MethodSummary",
    "ReplicationResult",
    "SweepPoint",
    "TableRow",
    "apply_psi_sqrt",
    "apply_sma",
    "build_error_model",
    "filter_errors",
    "gen_coefficients",
    "gen_density_psi",
    "gen_null_errors",
    "gen_regressors",
    "gen_sparse_psi",
    "generate_panel",
    "impulse_response_matrix",
    "ks_distance",
    "oracle_sigma2_sn",
    "psd_sqrt",
    "repair_psd",
    "run_density_sweep",
    "run_monte_carlo",
    "run_table_grid",
    "sigma_oracle",
    "simulate_ar_regressors",
    "simulate_replication",
    "sma_matrix",
    "table_cell_config",
    "true_scaling_ratio",
]

from .dgp import (
    apply_psi_sqrt,
    apply_sma,
    build_error_model,
    filter_errors,
    gen_coefficients,
    gen_density_psi,
    gen_null_errors,
    gen_regressors,
    gen_sparse_psi,
    generate_panel,
    impulse_response_matrix,
    psd_sqrt,
    repair_psd,
    simulate_ar_regressors,
    sma_matrix,
)
from .models import (
    AlternativeKind,
    ArmaSpec,
    ErrorFactorModel,
    ErrorProcess,
    McConfig,
    McReport,
    MethodSummary,
    ReplicationResult,
    SweepPoint,
    TableRow,
)
from .oracles import ks_distance, oracle_sigma2_sn, sigma_oracle, true_scaling_ratio
from .runner import (
    run_density_sweep,
    run_monte_carlo,
    run_table_grid,
    simulate_replication,
    table_cell_config,
)
