# SPDX-License-Identifier: Apache-2.0
"""Downlink opportunistic interference alignment simulator."""

from ._core import (
    DomainError,
    __version__,
    alignment_metric,
    avg_params,
    cdf_alpha,
    cdf_beta_gain,
    cdf_gamma,
    effective_gain,
    expected_selected_metric,
    figure,
    hybrid_metric,
    load_curve,
    pdf_alpha,
    rank1_gen_eig,
    simulate,
    simulate_csv,
    solve_threshold,
    sum_rate,
    table1,
    trial_tables,
)

__all__ = [
    "DomainError",
    "__version__",
    "alignment_metric",
    "avg_params",
    "cdf_alpha",
    "cdf_beta_gain",
    "cdf_gamma",
    "effective_gain",
    "expected_selected_metric",
    "figure",
    "hybrid_metric",
    "load_curve",
    "pdf_alpha",
    "rank1_gen_eig",
    "simulate",
    "simulate_csv",
    "solve_threshold",
    "sum_rate",
    "table1",
    "trial_tables",
]
