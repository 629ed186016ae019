"""Constructive-interference one-bit precoding for PSK massive MIMO downlink.

Thin wrapper over the C++ core: model construction, the negative-l1 penalty
homotopy solvers (NL1P / ANL1P), exhaustive and zero-forcing baselines, and
the Monte Carlo BER harness.
"""

from ._core import (
    BerRecord,
    CiModel,
    OuterRecord,
    SolveReport,
    __version__,
    boundary_vectors,
    brute_force,
    build_model,
    ci_objective,
    gray_bits,
    mean_abs,
    partition_instance,
    project_simplex,
    psk_point,
    quantize_onebit,
    rayleigh_channel,
    restore_transmit_signal,
    run_sweep,
    solve,
    spectral_norm,
    transmit_decode,
    zf_quantized,
    zf_unquantized,
)

__all__ = [
    "BerRecord",
    "CiModel",
    "OuterRecord",
    "SolveReport",
    "__version__",
    "boundary_vectors",
    "brute_force",
    "build_model",
    "ci_objective",
    "gray_bits",
    "mean_abs",
    "partition_instance",
    "project_simplex",
    "psk_point",
    "quantize_onebit",
    "rayleigh_channel",
    "restore_transmit_signal",
    "run_sweep",
    "solve",
    "spectral_norm",
    "transmit_decode",
    "zf_quantized",
    "zf_unquantized",
]
