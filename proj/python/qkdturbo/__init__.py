"""BB84 intercept-resend simulation with turbo-code key reconciliation."""

from ._core import (
    AttackParams,
    Basis,
    ConfigError,
    DecoderVariant,
    IoError,
    PolarizedState,
    ProtocolError,
    QberEstimate,
    ReconciliationReport,
    Rng,
    SiftedPair,
    SweepConfig,
    SweepResult,
    SweepRow,
    SweepSummary,
    TurboCodeword,
    TurboConfig,
    TurboDecodeResult,
    bsc_llr,
    emit_csv,
    estimate_qber,
    intercept_resend,
    make_turbo_config,
    measure,
    measure_ber,
    prepare_states,
    reconcile,
    run_bb84_session,
    run_sweep,
    sift,
    theoretical_ber,
    turbo_decode,
    turbo_encode,
)

__version__ = "0.1.0"

__all__ = [
    "AttackParams",
    "Basis",
    "ConfigError",
    "DecoderVariant",
    "IoError",
    "PolarizedState",
    "ProtocolError",
    "QberEstimate",
    "ReconciliationReport",
    "Rng",
    "SiftedPair",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "SweepSummary",
    "TurboCodeword",
    "TurboConfig",
    "TurboDecodeResult",
    "bsc_llr",
    "emit_csv",
    "estimate_qber",
    "intercept_resend",
    "make_turbo_config",
    "measure",
    "measure_ber",
    "prepare_states",
    "reconcile",
    "run_bb84_session",
    "run_sweep",
    "sift",
    "theoretical_ber",
    "turbo_decode",
    "turbo_encode",
]
