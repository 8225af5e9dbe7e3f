"""Exact integer and rational arithmetic for phase bookkeeping.

Naturals are plain Python ints (unbounded). Trial factors are reduced
rationals ``p/q`` with value at least 2. Phases are kept as fractions of a
full turn in ``[0, 1)`` so nothing is rounded until a final float
conversion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "InvalidDivisorError",
    "TrialFactor",
    "parse_natural",
    "format_natural",
    "parse_trial",
    "reduced_phase",
    "phase_residue",
    "ratio_integer_part_parity",
]

_NATURAL_RE = re.compile(r"0|[1-9][0-9]*")

# A PhaseFraction is a Fraction in [0, 1), always in lowest terms.
PhaseFraction = Fraction


class InvalidDivisorError(ValueError):
    """Raised for trial divisors that are zero, negative or below 2."""


def parse_natural(text: str) -> int:
    """Parse a plain decimal non-negative integer.

    Signs, whitespace, exponents and leading zeros are all rejected.
    """
    if not isinstance(text, str) or not _NATURAL_RE.fullmatch(text):
        raise ValueError(f"not a natural number: {text!r}")
    return int(text)


def format_natural(n: int) -> str:
    if n < 0:
        raise ValueError(f"not a natural number: {n}")
    return str(n)


@dataclass(frozen=True, order=False)
class TrialFactor:
    """A trial divisor ``numerator/denominator`` in lowest terms, value >= 2."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if isinstance(p, bool) or isinstance(q, bool) or not isinstance(p, int) or not isinstance(q, int):
            raise TypeError("trial factor parts must be integers")
        if p <= 0:
            raise InvalidDivisorError(f"invalid divisor: numerator {p} must be >= 1")
        if q <= 0:
            raise InvalidDivisorError(f"invalid divisor: denominator {q} must be >= 1")
        g = gcd(p, q)
        if g != 1:
            object.__setattr__(self, "numerator", p // g)
            object.__setattr__(self, "denominator", q // g)
        if self.numerator < 2 * self.denominator:
            raise InvalidDivisorError(f"invalid divisor: {self} is below 2")

    @classmethod
    def of(cls, value) -> "TrialFactor":
        """Coerce an int, Fraction or TrialFactor."""
        if isinstance(value, TrialFactor):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        raise TypeError(f"cannot use {value!r} as a trial factor")

    @property
    def is_integer(self) -> bool:
        return self.denominator == 1

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __lt__(self, other: "TrialFactor") -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


def parse_trial(text: str) -> TrialFactor:
    """Parse ``"p"`` or ``"p/q"`` with both parts plain naturals."""
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    parts = text.split("/")
    if len(parts) > 2:
        raise ValueError(f"not a rational literal: {text!r}")
    p = parse_natural(parts[0])
    q = parse_natural(parts[1]) if len(parts) == 2 else 1
    return TrialFactor(p, q)


def phase_residue(m: int, n_mod: int, p: int) -> int:
    """``(m^2 * n_mod) mod p`` with ``m`` reduced first."""
    mm = m % p
    return (mm * mm % p) * n_mod % p


def reduced_phase(m: int, N: int, ell) -> Fraction:
    """Fractional part of ``m^2 N / ell`` as an exact reduced fraction.

    For ``ell = p/q`` this is ``(m^2 N q mod p) / p``. N and q are reduced
    modulo p before multiplying, so the cost does not grow with ``m``.
    """
    ell = TrialFactor.of(ell)
    if m < 0 or N < 0:
        raise ValueError("m and N must be natural numbers")
    p = ell.numerator
    n_mod = (N % p) * (ell.denominator % p) % p
    return Fraction(phase_residue(m, n_mod, p), p)


def ratio_integer_part_parity(N: int, ell) -> int:
    """Parity (0 even, 1 odd) of ``floor(N / ell)``."""
    ell = TrialFactor.of(ell)
    if N < 0:
        raise ValueError("N must be a natural number")
    return (N * ell.denominator // ell.numerator) & 1
