"""Truncated Gauss sums, cosine sums and factor classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import isqrt

from .exact import TrialFactor, reduced_phase

__all__ = [
    "DEFAULT_THRESHOLD",
    "Classification",
    "CheckerConfig",
    "SumResult",
    "ConfigError",
    "gauss_sum",
    "cosine_sum",
    "classify",
    "check_factor_exact",
    "default_M",
    "phase_residues",
]

TWO_PI = 2.0 * math.pi
DEFAULT_THRESHOLD = 1.0 / math.sqrt(2.0)


class ConfigError(ValueError):
    pass


class Classification(str, enum.Enum):
    FACTOR = "factor"
    NONFACTOR = "nonfactor"
    # N/ell is an integer but ell is not: a ghost, not a divisor.
    FACTOR_BY_RATIO = "factor-by-ratio"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CheckerConfig:
    threshold: float = DEFAULT_THRESHOLD
    damping_rate: float = 0.0
    default_M_policy: str = "fourth-root"

    def __post_init__(self):
        t = self.threshold
        if not (isinstance(t, (int, float)) and 0.0 < t < 1.0):
            raise ConfigError(f"threshold must lie strictly between 0 and 1, got {t!r}")
        d = self.damping_rate
        if not (isinstance(d, (int, float)) and math.isfinite(d) and d >= 0.0):
            raise ConfigError(f"damping rate must be finite and >= 0, got {d!r}")
        if self.default_M_policy not in ("explicit", "fourth-root"):
            raise ConfigError(f"unknown M policy {self.default_M_policy!r}")

    def resolve_M(self, N: int, M: int | None) -> int:
        if M is not None:
            return M
        if self.default_M_policy == "explicit":
            raise ConfigError("M must be given explicitly under the 'explicit' policy")
        return default_M(N)


@dataclass(frozen=True)
class SumResult:
    real_part: float
    imag_part: float
    magnitude: float
    kind: str  # "gauss" or "cosine"
    M: int
    classification: Classification
    threshold: float = DEFAULT_THRESHOLD


def classify(result_magnitude: float, config: CheckerConfig | None = None) -> Classification:
    """Factor iff the magnitude reaches the threshold (inclusive)."""
    threshold = (config or CheckerConfig()).threshold
    if result_magnitude >= threshold:
        return Classification.FACTOR
    return Classification.NONFACTOR


def phase_residues(N: int, ell: TrialFactor, M: int) -> tuple[list[int], int]:
    """Integer residues ``r_m`` with ``frac(m^2 N / ell) = r_m / p`` for m = 0..M.

    Uses ``(m+1)^2 = m^2 + 2m + 1`` so every step stays below ``3p``.
    """
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    p = ell.numerator
    c = (N % p) * (ell.denominator % p) % p
    out = [0] * (M + 1)
    r = 0
    step = c  # (2m + 1) * c mod p
    two_c = 2 * c % p
    for m in range(1, M + 1):
        r += step
        if r >= p:
            r -= p
        out[m] = r
        step += two_c
        if step >= p:
            step -= p
    return out, p


def gauss_sum(N: int, ell, M: int, config: CheckerConfig | None = None) -> SumResult:
    """``(1/(M+1)) sum_m exp(-2 pi i m^2 N / ell)`` from exact phases."""
    config = config or CheckerConfig()
    ell = TrialFactor.of(ell)
    residues, p = phase_residues(N, ell, M)
    if not any(residues):
        re_, im_, mag = 1.0, 0.0, 1.0
    else:
        cs = ss = 0.0
        scale = TWO_PI / p
        for r in residues:
            a = scale * r
            cs += math.cos(a)
            ss -= math.sin(a)
        re_, im_ = cs / (M + 1), ss / (M + 1)
        mag = math.hypot(re_, im_)
    return SumResult(re_, im_, mag, "gauss", M, classify(mag, config), config.threshold)


def cosine_sum(N: int, ell, M: int, config: CheckerConfig | None = None) -> SumResult:
    """``(1/(M+1)) sum_m exp(-gamma m) cos(2 pi m^2 N / ell)``.

    ``gamma`` is ``config.damping_rate``; with no damping and ``ell | N``
    the result is exactly 1.
    """
    config = config or CheckerConfig()
    ell = TrialFactor.of(ell)
    residues, p = phase_residues(N, ell, M)
    gamma = config.damping_rate
    if gamma == 0.0 and not any(residues):
        value = 1.0
    else:
        total = 0.0
        scale = TWO_PI / p
        for m, r in enumerate(residues):
            c = 1.0 if r == 0 else math.cos(scale * r)
            total += (math.exp(-gamma * m) if gamma else 1.0) * c
        value = total / (M + 1)
    mag = abs(value)
    return SumResult(value, 0.0, mag, "cosine", M, classify(mag, config), config.threshold)


def check_factor_exact(N: int, ell) -> Classification:
    """Decide divisibility directly from ``frac(N / ell)``.

    A non-integer trial whose ratio is an integer (e.g. ``N/k``) reports
    ``FACTOR_BY_RATIO``: the sums cannot tell it from a true factor.
    """
    ell = TrialFactor.of(ell)
    if reduced_phase(1, N, ell) != 0:
        return Classification.NONFACTOR
    return Classification.FACTOR if ell.is_integer else Classification.FACTOR_BY_RATIO


def default_M(N: int) -> int:
    """``ceil(N ** (1/4))`` in integer arithmetic."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    # floor(sqrt(floor(sqrt(N)))) == floor(N^(1/4)) exactly
    r = isqrt(isqrt(N))
    return r if r ** 4 == N else r + 1
