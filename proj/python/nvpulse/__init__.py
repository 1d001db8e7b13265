from ._core import (
    ConfigError,
    SolverError,
    __version__,
    config_hash,
    misalignment,
    qft_fidelity,
    qft_pulse_count,
    synthesize,
    transition_frequencies,
)

__all__ = [
    "ConfigError",
    "SolverError",
    "__version__",
    "config_hash",
    "misalignment",
    "qft_fidelity",
    "qft_pulse_count",
    "synthesize",
    "transition_frequencies",
]
