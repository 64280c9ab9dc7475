"""Simulator and secrecy-capacity calculator for measurement-device-
independent quantum secure direct communication protocols."""

from .channels import (
    ErrorRates,
    PauliDistribution,
    bell_diagonal_from_pauli_dist,
    convolve,
    depolarize,
    depolarizing_pauli_dist,
    error_rates_from_deltas,
)
from .curves import AnalyticPoint, analytic_point, zero_crossing
from .infotheory import (
    CapacityResult,
    ErrorVector,
    binary_entropy,
    capacity_dl04_non_mdi,
    capacity_mdi_dl04,
    capacity_mdi_ts,
    capacity_two_step_non_mdi,
    eve_info_mdi_ts,
    shannon_entropy,
)
from .protocol import (
    AttackModel,
    NoisePlacement,
    Protocol,
    ProtocolConfig,
    RoundRecord,
    TranscriptStats,
    estimate_stats,
    round_records,
    run,
    run_mdi_dl04,
    run_mdi_ts,
    swap_correction,
)
from .quantum import (
    BellDiagonal,
    BellLabel,
    DensityMatrix,
    PauliLabel,
    PureState,
    apply_pauli,
    bell_measure,
    bell_state,
    holevo_bound,
    partial_trace,
    pauli_twirl,
    product_decompose,
    purify_bell_diagonal,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticPoint",
    "AttackModel",
    "BellDiagonal",
    "BellLabel",
    "CapacityResult",
    "DensityMatrix",
    "ErrorRates",
    "ErrorVector",
    "NoisePlacement",
    "PauliDistribution",
    "PauliLabel",
    "Protocol",
    "ProtocolConfig",
    "PureState",
    "RoundRecord",
    "TranscriptStats",
    "analytic_point",
    "apply_pauli",
    "bell_diagonal_from_pauli_dist",
    "bell_measure",
    "bell_state",
    "binary_entropy",
    "capacity_dl04_non_mdi",
    "capacity_mdi_dl04",
    "capacity_mdi_ts",
    "capacity_two_step_non_mdi",
    "convolve",
    "depolarize",
    "depolarizing_pauli_dist",
    "error_rates_from_deltas",
    "estimate_stats",
    "eve_info_mdi_ts",
    "holevo_bound",
    "partial_trace",
    "pauli_twirl",
    "product_decompose",
    "purify_bell_diagonal",
    "round_records",
    "run",
    "run_mdi_dl04",
    "run_mdi_ts",
    "shannon_entropy",
    "swap_correction",
    "von_neumann_entropy",
    "zero_crossing",
]
