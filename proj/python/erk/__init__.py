"""Achievable rates of the two-tap input-erasure Gaussian channel.

Everything lives in the compiled extension; this package just re-exports it.
"""

from erk._core import (
    ChannelParams,
    CellularParams,
    DegenerateChainError,
    DerivedQuantities,
    ErasurePattern,
    ErasureProcess,
    FirFilter,
    HighSnrCharacterization,
    McConfig,
    RateKind,
    RateResult,
    Scheme,
    SchemeComparison,
    SeriesConfig,
    __version__,
    block_split_logdet,
    build_channel_matrix,
    compare_schemes,
    dense_cap,
    derive,
    derive_from_ab,
    erasure_free_upper_bound,
    exact_finite_rate,
    high_snr_triple,
    high_snr_two_tap,
    icfs_rate,
    log_block_det,
    logdet_input_erasure,
    logdet_output_erasure,
    markov_two_tap_rate,
    mc_trial_value,
    mcp_rate,
    monte_carlo_rate,
    one_tap_rate,
    run_length_pmf,
    sample_pattern,
    scp_icfs_crossover,
    scp_rate,
    scp_rate_expectation_oracle,
    tridiag_logdet_prefix,
    tridiag_logdet_recursive,
    two_tap_rate_iid,
    user_activity_throughput_mc,
    user_activity_throughputs,
)

__all__ = [
    "ChannelParams",
    "CellularParams",
    "DegenerateChainError",
    "DerivedQuantities",
    "ErasurePattern",
    "ErasureProcess",
    "FirFilter",
    "HighSnrCharacterization",
    "McConfig",
    "RateKind",
    "RateResult",
    "Scheme",
    "SchemeComparison",
    "SeriesConfig",
    "__version__",
    "block_split_logdet",
    "build_channel_matrix",
    "compare_schemes",
    "dense_cap",
    "derive",
    "derive_from_ab",
    "erasure_free_upper_bound",
    "exact_finite_rate",
    "high_snr_triple",
    "high_snr_two_tap",
    "icfs_rate",
    "log_block_det",
    "logdet_input_erasure",
    "logdet_output_erasure",
    "markov_two_tap_rate",
    "mc_trial_value",
    "mcp_rate",
    "monte_carlo_rate",
    "one_tap_rate",
    "run_length_pmf",
    "sample_pattern",
    "scp_icfs_crossover",
    "scp_rate",
    "scp_rate_expectation_oracle",
    "tridiag_logdet_prefix",
    "tridiag_logdet_recursive",
    "two_tap_rate_iid",
    "user_activity_throughput_mc",
    "user_activity_throughputs",
]
