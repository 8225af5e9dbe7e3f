"""Experiments: fixed-point precision of N/ell, integer sweeps, ghost peaks."""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CheckerConfig,
    Classification,
    SumResult,
    classify,
    cosine_sum,
    gauss_sum,
)
from .exact import TrialFactor

__all__ = [
    "ScanError",
    "QuantizedRatio",
    "PrecisionRecord",
    "PrecisionReport",
    "ScanPoint",
    "ScanResult",
    "quantize_ratio",
    "quantized_cosine_sum",
    "precision_sweep",
    "integer_sweep",
    "ghost_scan",
]

TWO_PI = 2.0 * math.pi


class ScanError(ValueError):
    """Empty sweep range or scan window."""


def _warn_if_degenerate(M: int) -> None:
    if M == 0:
        warnings.warn("M = 0: every trial classifies as a factor", RuntimeWarning, stacklevel=3)


@dataclass(frozen=True)
class QuantizedRatio:
    """``N/ell`` as an exact integer part plus a ``frac_bits``-bit fraction.

    If the fraction rounds up to 1 the carry goes into the integer part, so
    ``frac_fixed`` always lies in ``[0, 2**frac_bits)``.
    """

    integer_parity: int
    frac_bits: int
    frac_fixed: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.frac_fixed, 1 << self.frac_bits)


def quantize_ratio(N: int, ell, b: int) -> QuantizedRatio:
    ell = TrialFactor.of(ell)
    if b < 0:
        raise ValueError(f"bit count must be >= 0, got {b}")
    whole, rem = divmod(N * ell.denominator, ell.numerator)
    fixed, r = divmod(rem << b, ell.numerator)
    twice = 2 * r
    if twice > ell.numerator or (twice == ell.numerator and fixed & 1):
        fixed += 1  # round half to even
    if fixed == 1 << b:
        whole += 1
        fixed = 0
    return QuantizedRatio(whole & 1, b, fixed)


def quantized_cosine_sum(q: QuantizedRatio, M: int, config: CheckerConfig | None = None) -> SumResult:
    """Cosine sum with every phase built from the quantized ratio.

    The integer part drops out of ``frac(m^2 r)``, so only the dyadic
    fraction matters; all reduction is exact modulo ``2**frac_bits``.
    """
    config = config or CheckerConfig()
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    mod = 1 << q.frac_bits
    gamma = config.damping_rate
    total = 0.0
    any_phase = False
    for m in range(M + 1):
        r = (m * m * q.frac_fixed) & (mod - 1)
        if r:
            any_phase = True
            c = math.cos(TWO_PI * r / mod)
        else:
            c = 1.0
        total += (math.exp(-gamma * m) if gamma else 1.0) * c
    value = 1.0 if not any_phase and not gamma else total / (M + 1)
    mag = abs(value)
    return SumResult(value, 0.0, mag, "cosine", M, classify(mag, config), config.threshold)


@dataclass(frozen=True)
class PrecisionRecord:
    b: int
    frac_fixed: int
    magnitude: float
    classification: Classification


@dataclass(frozen=True)
class PrecisionReport:
    N: int
    ell: TrialFactor
    M: int
    exact_magnitude: float
    exact_classification: Classification
    records: tuple[PrecisionRecord, ...]
    flip_bit: int | None


def precision_sweep(N: int, ell, M: int, b_max: int,
                    config: CheckerConfig | None = None) -> PrecisionReport:
    """Quantized classification for b = 0..b_max against the exact one.

    ``flip_bit`` is the smallest b from which every tested width agrees
    with the exact classification, or None if the last width disagrees.
    """
    config = config or CheckerConfig()
    ell = TrialFactor.of(ell)
    if b_max < 1:
        raise ValueError(f"b_max must be >= 1, got {b_max}")
    _warn_if_degenerate(M)
    exact = cosine_sum(N, ell, M, config)
    records = []
    for b in range(b_max + 1):
        q = quantize_ratio(N, ell, b)
        res = quantized_cosine_sum(q, M, config)
        records.append(PrecisionRecord(b, q.frac_fixed, res.magnitude, res.classification))
    flip = None
    for rec in reversed(records):
        if rec.classification != exact.classification:
            break
        flip = rec.b
    return PrecisionReport(N, ell, M, exact.magnitude, exact.classification, tuple(records), flip)


@dataclass(frozen=True)
class ScanPoint:
    trial: TrialFactor
    magnitude: float
    classification: Classification
    is_integer_trial: bool
    signed_value: float


@dataclass(frozen=True)
class ScanResult:
    N: int
    M: int
    kind: str
    threshold: float
    points: tuple[ScanPoint, ...]

    @property
    def peaks(self) -> tuple[ScanPoint, ...]:
        return tuple(p for p in self.points if p.magnitude >= self.threshold)


def _evaluate(args) -> ScanPoint:
    N, trial, M, config, kind = args
    fn = gauss_sum if kind == "gauss" else cosine_sum
    res = fn(N, trial, M, config)
    return ScanPoint(trial, res.magnitude, res.classification, trial.is_integer, res.real_part)


def _evaluate_all(N, trials, M, config, kind, workers):
    jobs = [(N, t, M, config, kind) for t in trials]
    if workers and workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_evaluate, jobs, chunksize=chunk))
    else:
        points = [_evaluate(j) for j in jobs]
    points.sort(key=lambda pt: pt.trial.value)
    return tuple(points)


def integer_sweep(N: int, ell_min: int, ell_max: int, M: int,
                  config: CheckerConfig | None = None, workers: int = 1) -> ScanResult:
    """Cosine sum at every integer trial in ``[ell_min, ell_max]``.

    This is the quantity the echo train measures; peaks should sit on the
    divisors of N when M is adequate and ``ell_max <= sqrt(N)``.
    """
    config = config or CheckerConfig()
    if ell_min < 2 or ell_max < ell_min:
        raise ScanError(f"empty trial range [{ell_min}, {ell_max}]")
    _warn_if_degenerate(M)
    trials = [TrialFactor(l) for l in range(ell_min, ell_max + 1)]
    return ScanResult(N, M, "cosine", config.threshold,
                      _evaluate_all(N, trials, M, config, "cosine", workers))


def _window_rationals(lo: Fraction, hi: Fraction, denominator_limit: int) -> set[Fraction]:
    out = set()
    for q in range(1, denominator_limit + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            out.add(Fraction(p, q))
    return out


def ghost_scan(N: int, center, radius, denominator_limit: int, M: int,
               config: CheckerConfig | None = None, workers: int = 1) -> ScanResult:
    """Gauss-sum magnitudes over a window of rational trial values.

    The window holds every ``N/k`` (k integer) within ``radius`` of
    ``center``, plus every rational with denominator up to
    ``denominator_limit`` as background. Each ``N/k`` has magnitude exactly
    1 whether or not it is an integer.
    """
    config = config or CheckerConfig()
    center = Fraction(center.value if isinstance(center, TrialFactor) else center)
    radius = Fraction(radius)
    if radius <= 0:
        raise ScanError(f"radius must be positive, got {radius}")
    if denominator_limit < 1:
        raise ScanError(f"denominator limit must be >= 1, got {denominator_limit}")
    if N < 1:
        raise ScanError("N must be >= 1")
    _warn_if_degenerate(M)
    lo = max(center - radius, Fraction(2))
    hi = center + radius
    values = set()
    if lo <= hi:
        # N/k in [lo, hi]  <=>  N/hi <= k <= N/lo
        for k in range(max(1, math.ceil(N / hi)), math.floor(N / lo) + 1):
            values.add(Fraction(N, k))
        values |= _window_rationals(lo, hi, denominator_limit)
    if not values:
        raise ScanError(f"empty scan window [{center - radius}, {center + radius}]")
    trials = [TrialFactor.of(v) for v in values]
    return ScanResult(N, M, "gauss", config.threshold,
                      _evaluate_all(N, trials, M, config, "gauss", workers))
