"""Factor checking with truncated Gauss sums, and why it needs N/l first."""

from .core import (
    CheckerConfig,
    Classification,
    SumResult,
    check_factor_exact,
    classify,
    cosine_sum,
    default_M,
    gauss_sum,
)
from .echo import build_phase_program, run_echo_sequence
from .exact import InvalidDivisorError, TrialFactor, parse_natural, parse_trial, reduced_phase

__all__ = [
    "CheckerConfig",
    "Classification",
    "SumResult",
    "TrialFactor",
    "InvalidDivisorError",
    "check_factor_exact",
    "classify",
    "cosine_sum",
    "default_M",
    "gauss_sum",
    "build_phase_program",
    "run_echo_sequence",
    "parse_natural",
    "parse_trial",
    "reduced_phase",
]
