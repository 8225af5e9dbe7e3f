import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from gauss_factor.core import CheckerConfig, cosine_sum
from gauss_factor.echo import (
    TRACE_COLUMNS,
    accumulated_phase_closed_form,
    accumulated_turns_closed_form,
    build_phase_program,
    run_echo_sequence,
)
from gauss_factor.report import parse_csv


def high_precision_pulse(k, N, ell):
    # phi_k mod 2 pi, evaluated unreduced with 80 digits
    mp.dps = 80
    phi = (-1) ** k * (2 * k - 1) * mp.pi * mpf(N) / ell
    return float(phi % (2 * mp.pi))


def test_pulse_examples():
    prog = build_phase_program(157573, 17, 3)
    assert prog.entries[0].turns == 0
    # phi_1 = -9269 pi, 9269 odd -> pi
    assert prog.entries[1].turns == Fraction(1, 2)
    assert prog.entries[1].radians == math.pi
    phi2 = build_phase_program(15, 4, 2).entries[2]
    # 3 * 15 / 4 pi = 11.25 pi == 1.25 pi (mod 2 pi)
    assert phi2.turns == Fraction(5, 8)
    assert phi2.radians == pytest.approx(high_precision_pulse(2, 15, 4), abs=1e-12)
    assert (phi2.sign, phi2.odd_multiplier) == (1, 3)


@given(st.integers(2, 10**24), st.integers(2, 10**5), st.integers(0, 30))
def test_pulses_match_high_precision(N, ell, k):
    e = build_phase_program(N, ell, k).entries[k]
    ref = 0.0 if k == 0 else high_precision_pulse(k, N, ell)
    d = abs(e.radians - ref)
    assert min(d, 2 * math.pi - d) < 1e-9


@pytest.mark.parametrize("M", [0, 1, 5, 40])
def test_program_shape(M):
    prog = build_phase_program(1234567, 89, M)
    assert len(prog.entries) == M + 1
    assert prog.entries[0].turns == 0 and prog.entries[0].radians == 0.0


def test_factor_trace_all_ones():
    trace = run_echo_sequence(build_phase_program(157573, 17, 25))
    assert all(r.signal == 1.0 for r in trace.records)
    assert trace.mean_signal == 1.0


def test_small_case_and_nonfactor():
    assert run_echo_sequence(build_phase_program(15, 4, 1)).mean_signal == pytest.approx(0.5, abs=1e-15)
    t = run_echo_sequence(build_phase_program(157573, 18, 10))
    assert abs(t.mean_signal - cosine_sum(157573, 18, 10).real_part) < 1e-9


def test_closed_form_examples():
    assert accumulated_phase_closed_form(0, 157573, 17) == 0.0
    assert accumulated_phase_closed_form(3, 157573, 17) == 0.0
    assert accumulated_phase_closed_form(1, 15, 4) == pytest.approx(math.pi / 2, abs=1e-15)
    rec = run_echo_sequence(build_phase_program(15, 4, 1)).records[1]
    assert rec.accumulated_phase == pytest.approx(math.pi / 2, abs=1e-15)


def test_degenerate_M0():
    trace = run_echo_sequence(build_phase_program(101, 7, 0), 0.3)
    assert len(trace.records) == 1
    assert trace.records[0].signal == 1.0 and trace.mean_signal == 1.0


@settings(max_examples=200)
@given(st.integers(2, 10**6), st.integers(2, 10**4), st.integers(0, 200))
def test_recursion_matches_closed_form(N, ell, M):
    trace = run_echo_sequence(build_phase_program(N, ell, M))
    for r in trace.records:
        assert r.accumulated_turns == accumulated_turns_closed_form(r.k, N, ell)
        d = abs(r.accumulated_phase - accumulated_phase_closed_form(r.k, N, ell))
        assert min(d, 2 * math.pi - d) < 1e-9
        # cos is even: the (-1)^k sign never reaches the signal
        plus = math.cos(2 * math.pi * ((r.k * r.k * N) % ell) / ell)
        assert abs(r.signal - plus) < 1e-12


@settings(max_examples=200)
@given(st.integers(2, 10**6), st.integers(2, 10**4), st.integers(0, 200),
       st.sampled_from([0.0, 0.05, 0.2]))
def test_echo_equals_cosine_sum(N, ell, M, gamma):
    trace = run_echo_sequence(build_phase_program(N, ell, M), gamma)
    ref = cosine_sum(N, ell, M, CheckerConfig(damping_rate=gamma))
    assert abs(trace.mean_signal - ref.real_part) < 1e-9
    weighted = sum(r.weight * r.signal for r in trace.records) / (M + 1)
    assert abs(trace.mean_signal - weighted) < 1e-12
    assert len(trace.records) == M + 1
    for r in trace.records:
        assert 0 <= r.pulse_phase < 2 * math.pi and 0 <= r.accumulated_phase < 2 * math.pi
        assert -1 <= r.signal <= 1


def test_trace_csv():
    trace = run_echo_sequence(build_phase_program(157573, 18, 6), 0.05)
    header, rows = parse_csv(trace.to_csv())
    assert header == TRACE_COLUMNS
    assert len(rows) == 7
    for row, rec in zip(rows, trace.records):
        assert row["k"] == rec.k
        assert row["signal"] == rec.signal and row["weight"] == rec.weight
        assert row["accumulated_phase"] == rec.accumulated_phase


def test_negative_damping_rejected():
    with pytest.raises(ValueError):
        run_echo_sequence(build_phase_program(15, 4, 2), -1.0)
