"""Simulation and calibration engine for seamless dose-finding platform trials.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its functions directly.
"""

from ._core import (
    assess_safety,
    assess_safety_combo,
    build_skeleton,
    cox_log_partial_likelihood,
    efficacy_posterior,
    optimize_boundaries,
    parse_config,
    run_cell,
    run_matrix,
    run_trial,
    safe_dose_set,
    select_next_dose,
    stage_decision,
    translate_boundaries,
    version,
)

__version__ = version()

__all__ = [
    "assess_safety",
    "assess_safety_combo",
    "build_skeleton",
    "cox_log_partial_likelihood",
    "efficacy_posterior",
    "optimize_boundaries",
    "parse_config",
    "run_cell",
    "run_matrix",
    "run_trial",
    "safe_dose_set",
    "select_next_dose",
    "stage_decision",
    "translate_boundaries",
    "version",
    "__version__",
]
