"""Optimal weighted least-squares sampling with sequential sample recycling."""

from seqwls._core import (
    Basis,
    BracketError,
    CostLedger,
    HaarNode,
    IterationCapError,
    LedgerEntry,
    RngStream,
    SampleSet,
    SingularWeightError,
    WlsFit,
    algorithm1_step,
    algorithm2_step,
    algorithm3_step,
    assemble_gramian,
    best_approx_error,
    budget,
    chernoff_tail,
    condition_number,
    cost_tail_bound,
    eps_schedule,
    grow_random_tree,
    haar_eval,
    harmonic_cost_sum,
    hermite_cdf,
    hermite_eval,
    l2_error,
    matrix_chernoff_bound,
    multi_step,
    n_eps,
    n_uniform,
    projection_coefficients,
    sample_mu,
    sample_sigma,
    simulate_quantiles,
    solve_spd,
    spectral_deviation,
    verify_bounds,
    wls_fit,
)

__all__ = [
    "Basis",
    "BracketError",
    "CostLedger",
    "HaarNode",
    "IterationCapError",
    "LedgerEntry",
    "RngStream",
    "SampleSet",
    "SingularWeightError",
    "WlsFit",
    "algorithm1_step",
    "algorithm2_step",
    "algorithm3_step",
    "assemble_gramian",
    "best_approx_error",
    "budget",
    "chernoff_tail",
    "condition_number",
    "cost_tail_bound",
    "eps_schedule",
    "grow_random_tree",
    "haar_eval",
    "harmonic_cost_sum",
    "hermite_cdf",
    "hermite_eval",
    "l2_error",
    "matrix_chernoff_bound",
    "multi_step",
    "n_eps",
    "n_uniform",
    "projection_coefficients",
    "sample_mu",
    "sample_sigma",
    "simulate_quantiles",
    "solve_spd",
    "spectral_deviation",
    "verify_bounds",
    "wls_fit",
]

__version__ = "0.1.0"
