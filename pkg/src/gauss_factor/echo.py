"""Spin-echo realization of the cosine sum.

A train of 180-degree pulses with phases

    phi_0 = 0,   phi_k = (-1)^k (2k - 1) pi N / ell   (k >= 1)

acts on the transverse phase by reflection, ``theta -> 2 phi - theta``.
Unrolling the recursion from ``theta_0 = 0`` gives

    theta_k = 2 phi_k - theta_{k-1}
            = (-1)^k 2 pi N/ell * [(2k-1) + (2k-3) + ... + 1]
            = (-1)^k 2 pi k^2 N / ell,

because the odd numbers up to ``2k - 1`` sum to ``k^2`` and the signs of
consecutive terms alternate with the reflection. Since cos is even, the
k-th echo samples ``cos(2 pi k^2 N / ell)``, the k-th term of the cosine
sum. All phases here are held as exact fractions of a full turn.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import TrialFactor

__all__ = [
    "PulsePhase",
    "PhaseProgram",
    "EchoRecord",
    "EchoTrace",
    "build_phase_program",
    "run_echo_sequence",
    "accumulated_phase_closed_form",
    "accumulated_turns_closed_form",
    "turns_to_radians",
    "TRACE_COLUMNS",
]

TWO_PI = 2.0 * math.pi
_BELOW_TWO_PI = math.nextafter(TWO_PI, 0.0)

TRACE_COLUMNS = ("k", "pulse_phase", "accumulated_phase", "signal", "weight")


def turns_to_radians(turns: Fraction) -> float:
    """Map an exact phase in turns, ``[0, 1)``, to radians in ``[0, 2 pi)``."""
    a = TWO_PI * (turns.numerator / turns.denominator)
    return a if a < TWO_PI else _BELOW_TWO_PI


@dataclass(frozen=True)
class PulsePhase:
    """``phi_k = sign * odd_multiplier * pi * N / ell``, reduced to ``turns``."""

    k: int
    sign: int
    odd_multiplier: int
    turns: Fraction  # phi_k / (2 pi) mod 1

    @property
    def radians(self) -> float:
        return turns_to_radians(self.turns)


@dataclass(frozen=True)
class PhaseProgram:
    N: int
    ell: TrialFactor
    M: int
    entries: tuple[PulsePhase, ...]


def _pulse_turns(k: int, N: int, ell: TrialFactor) -> tuple[int, int, Fraction]:
    if k == 0:
        return 0, 0, Fraction(0)
    p, q = ell.numerator, ell.denominator
    two_p = 2 * p
    sign = -1 if k & 1 else 1
    mult = 2 * k - 1
    # phi_k / pi = sign * mult * N q / p; reduce the coefficient mod 2p
    c = (mult % two_p) * (N % two_p) % two_p * (q % two_p) % two_p
    if sign < 0:
        c = (two_p - c) % two_p
    return sign, mult, Fraction(c, two_p)


def build_phase_program(N: int, ell, M: int) -> PhaseProgram:
    ell = TrialFactor.of(ell)
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    entries = []
    for k in range(M + 1):
        sign, mult, turns = _pulse_turns(k, N, ell)
        entries.append(PulsePhase(k, sign, mult, turns))
    return PhaseProgram(N, ell, M, tuple(entries))


@dataclass(frozen=True)
class EchoRecord:
    k: int
    pulse_phase: float
    accumulated_phase: float
    signal: float
    weight: float
    accumulated_turns: Fraction


@dataclass(frozen=True)
class EchoTrace:
    records: tuple[EchoRecord, ...]
    mean_signal: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TRACE_COLUMNS)
        for r in self.records:
            w.writerow([r.k, f"{r.pulse_phase:.17g}", f"{r.accumulated_phase:.17g}",
                        f"{r.signal:.17g}", f"{r.weight:.17g}"])
        return buf.getvalue()


def run_echo_sequence(program: PhaseProgram, damping_rate: float = 0.0) -> EchoTrace:
    """Apply the pulse train and sample the echo after each pulse.

    The mean is ``(1/(M+1)) sum_k w_k cos(theta_k)`` with
    ``w_k = exp(-damping_rate * k)``; the k = 0 point is the undisturbed
    free-induction sample.
    """
    if damping_rate < 0 or not math.isfinite(damping_rate):
        raise ValueError(f"damping rate must be finite and >= 0, got {damping_rate}")
    theta = Fraction(0)
    records = []
    total = 0.0
    for entry in program.entries:
        if entry.k > 0:
            theta = (2 * entry.turns - theta) % 1
        signal = 1.0 if theta == 0 else math.cos(TWO_PI * theta.numerator / theta.denominator)
        weight = math.exp(-damping_rate * entry.k) if damping_rate else 1.0
        total += weight * signal
        records.append(EchoRecord(entry.k, entry.radians, turns_to_radians(theta),
                                  signal, weight, theta))
    return EchoTrace(tuple(records), total / len(records))


def accumulated_phase_closed_form(k: int, N: int, ell) -> float:
    """``(-1)^k 2 pi k^2 N / ell`` reduced into ``[0, 2 pi)``."""
    return turns_to_radians(accumulated_turns_closed_form(k, N, ell))


def accumulated_turns_closed_form(k: int, N: int, ell) -> Fraction:
    ell = TrialFactor.of(ell)
    p = ell.numerator
    r = (k * k % p) * (N % p) % p * (ell.denominator % p) % p
    if k & 1:
        r = (p - r) % p
    return Fraction(r, p)
