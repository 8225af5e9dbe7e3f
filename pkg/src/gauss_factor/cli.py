"""Command-line entry point: ``gauss-factor <command> [options]``.

Exit status: 0 success, 2 validation error, 3 computation error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
import warnings
from fractions import Fraction

from . import analysis, core, echo
from .core import CheckerConfig, ConfigError
from .exact import InvalidDivisorError, TrialFactor, parse_natural, parse_trial
from .report import Report, to_csv, to_json

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3

BIG_N = 1062885837863046188098307


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _common(p: argparse.ArgumentParser, *, trial=False) -> None:
    p.add_argument("--n", required=True, help="number to test, decimal")
    if trial:
        p.add_argument("--l", required=True, help='trial factor, "p" or "p/q"')
    p.add_argument("--m", help="truncation parameter M (default: ceil(N^(1/4)))")
    p.add_argument("--threshold", default=str(core.DEFAULT_THRESHOLD))
    p.add_argument("--damping", default="0")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", help="write report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gauss-factor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("check", help="evaluate both sums for one trial factor"), trial=True)

    p = sub.add_parser("sweep", help="cosine sum over an integer trial range")
    _common(p)
    p.add_argument("--l-min", required=True)
    p.add_argument("--l-max", required=True)
    p.add_argument("--workers", type=int, default=1)

    _common(sub.add_parser("echo", help="simulate the pulse train and echo signal"), trial=True)

    p = sub.add_parser("precision", help="classification vs fixed-point width of N/l")
    _common(p, trial=True)
    p.add_argument("--bits-max", default="64")

    p = sub.add_parser("ghost", help="scan rational trials around a center")
    _common(p)
    p.add_argument("--center", required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--denominator-limit", default="200")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("selftest", help="run built-in acceptance vectors")
    p.add_argument("--threshold", default=str(core.DEFAULT_THRESHOLD))
    p.add_argument("--out", help="write the vector log here as well")
    return parser


def _natural(token: str, what: str, minimum: int = 0) -> int:
    try:
        value = parse_natural(token)
    except ValueError:
        raise ValidationError(f"invalid {what}: {token!r}") from None
    if value < minimum:
        raise ValidationError(f"invalid {what}: {token!r} (must be >= {minimum})")
    return value


def _real(token: str, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ValidationError(f"invalid {what}: {token!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"invalid {what}: {token!r}")
    return value


def _rational(token: str, what: str) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"invalid {what}: {token!r}") from None
    return value


def _trial(token: str) -> TrialFactor:
    try:
        return parse_trial(token)
    except InvalidDivisorError as exc:
        raise ValidationError(f"invalid divisor {token!r}: {exc}") from None
    except ValueError:
        raise ValidationError(f"invalid divisor {token!r}: not a rational literal") from None


def _config(args) -> CheckerConfig:
    threshold = _real(args.threshold, "threshold")
    damping = _real(getattr(args, "damping", "0"), "damping rate")
    try:
        return CheckerConfig(threshold=threshold, damping_rate=damping)
    except ConfigError as exc:
        raise ValidationError(str(exc)) from None


def _check_out(path: str | None) -> None:
    if path is None:
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise ValidationError(f"output directory does not exist: {parent}")


def _resolve_M(args, N: int, stderr) -> tuple[int, str]:
    if args.m is None:
        return core.default_M(N), "default"
    M = _natural(args.m, "M")
    if M == 0:
        print("warning: M = 0, every trial will classify as a factor", file=stderr)
    return M, "explicit"


def _base_params(M, m_source, config):
    return {"M": M, "m_source": m_source, "threshold": config.threshold,
            "damping": config.damping_rate}


def _cmd_check(args, N, M, params, config):
    ell = _trial(args.l)
    params["l"] = ell
    g = core.gauss_sum(N, ell, M, config)
    c = core.cosine_sum(N, ell, M, config)
    exact = core.check_factor_exact(N, ell)
    row = {"trial": ell, "M": M, "real": g.real_part, "imag": g.imag_part,
           "magnitude": g.magnitude, "classification": g.classification,
           "cosine": c.real_part, "cosine_classification": c.classification, "exact": exact}
    summary = {"magnitude": g.magnitude, "classification": g.classification, "exact": exact}
    return tuple(row), [row], summary


def _cmd_sweep(args, N, M, params, config):
    lo = _natural(args.l_min, "l-min", 2)
    hi = _natural(args.l_max, "l-max", 2)
    if hi < lo:
        raise ValidationError(f"empty trial range: l-min {lo} > l-max {hi}")
    params.update(l_min=lo, l_max=hi)
    res = analysis.integer_sweep(N, lo, hi, M, config, workers=args.workers)
    rows = [{"trial": p.trial, "M": M, "value": p.signed_value, "magnitude": p.magnitude,
             "classification": p.classification, "is_integer_trial": p.is_integer_trial}
            for p in res.points]
    summary = {"peaks": [p.trial for p in res.peaks]}
    return tuple(rows[0]), rows, summary


def _cmd_echo(args, N, M, params, config):
    ell = _trial(args.l)
    params["l"] = ell
    trace = echo.run_echo_sequence(echo.build_phase_program(N, ell, M), config.damping_rate)
    rows = [{c: getattr(r, c) for c in echo.TRACE_COLUMNS} for r in trace.records]
    c = core.cosine_sum(N, ell, M, config)
    summary = {"mean_signal": trace.mean_signal, "cosine_sum": c.real_part,
               "classification": core.classify(abs(trace.mean_signal), config)}
    return echo.TRACE_COLUMNS, rows, summary


def _cmd_precision(args, N, M, params, config):
    ell = _trial(args.l)
    b_max = _natural(args.bits_max, "bits-max", 1)
    params.update(l=ell, bits_max=b_max)
    rep = analysis.precision_sweep(N, ell, M, b_max, config)
    rows = [{"b": r.b, "frac_fixed": r.frac_fixed, "magnitude": r.magnitude,
             "classification": r.classification} for r in rep.records]
    summary = {"flip_bit": rep.flip_bit, "exact_magnitude": rep.exact_magnitude,
               "exact_classification": rep.exact_classification}
    return tuple(rows[0]), rows, summary


def _cmd_ghost(args, N, M, params, config):
    center = _rational(args.center, "center")
    radius = _rational(args.radius, "radius")
    if radius <= 0:
        raise ValidationError(f"invalid radius: {args.radius!r} (must be > 0)")
    limit = _natural(args.denominator_limit, "denominator-limit", 1)
    params.update(center=center, radius=radius, denominator_limit=limit)
    res = analysis.ghost_scan(N, center, radius, limit, M, config, workers=args.workers)
    rows = [{"trial": p.trial, "trial_value": float(p.trial), "M": M,
             "magnitude": p.magnitude, "classification": p.classification,
             "is_integer_trial": p.is_integer_trial} for p in res.points]
    summary = {"peaks": [p.trial for p in res.peaks],
               "ghost_peaks": [p.trial for p in res.peaks if not p.is_integer_trial]}
    return tuple(rows[0]), rows, summary


_COMMANDS = {
    "check": _cmd_check,
    "sweep": _cmd_sweep,
    "echo": _cmd_echo,
    "precision": _cmd_precision,
    "ghost": _cmd_ghost,
}


def _emit(text: str, path: str | None, stdout) -> None:
    if path is None:
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def selftest(threshold: float = core.DEFAULT_THRESHOLD, stdout=None) -> int:
    """Run the built-in vectors; print one line each. Returns the exit status."""
    stdout = stdout or sys.stdout
    config = CheckerConfig(threshold=threshold)
    N = 157573

    def ghost_ok():
        res = analysis.ghost_scan(N, 17, Fraction(1, 100), 1, 10, config)
        pt = {p.trial: p for p in res.points}.get(TrialFactor(N, 9268))
        return pt is not None and pt.magnitude == 1.0 and not pt.is_integer_trial

    def echo_ok():
        cases = [(N, 18, 10, 0.0), (15, 4, 1, 0.0), (N, 17, 10, 0.1), (999983, 9973, 200, 0.05)]
        for n, l, m, g in cases:
            trace = echo.run_echo_sequence(echo.build_phase_program(n, l, m), g)
            ref = core.cosine_sum(n, l, m, CheckerConfig(threshold=threshold, damping_rate=g))
            if abs(trace.mean_signal - ref.real_part) > 1e-9:
                return False
        return True

    def big_n_ok():
        t0 = time.perf_counter()
        core.cosine_sum(BIG_N, 999_983, 1000, config)
        return time.perf_counter() - t0 < 1.0

    def precision_ok():
        rep = analysis.precision_sweep(N, 18, 10, 64, config)
        return (rep.flip_bit is not None and rep.flip_bit >= 1
                and rep.records[0].classification == core.Classification.FACTOR)

    vectors = [
        ("factor 17 of 157573", lambda: core.gauss_sum(N, 17, 20, config).magnitude == 1.0),
        ("nonfactor 18 of 157573",
         lambda: core.gauss_sum(N, 18, 20, config).classification == core.Classification.NONFACTOR),
        ("integer sweep 2..40 peaks", lambda: [int(p.trial.numerator) for p in
                                               analysis.integer_sweep(N, 2, 40, 20, config).peaks]
         == [13, 17, 23, 31]),
        ("ghost peak 157573/9268", ghost_ok),
        ("echo/sum equivalence", echo_ok),
        ("precision flip bit for 18", precision_ok),
        ("24-digit N timing", big_n_ok),
    ]
    failures = 0
    for name, fn in vectors:
        try:
            ok = bool(fn())
        except Exception as exc:  # a crashing vector is a failing vector
            ok = False
            name = f"{name} ({exc})"
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=stdout)
    return EXIT_OK if failures == 0 else EXIT_COMPUTATION


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _check_out(args.out)
        if args.command == "selftest":
            config = _config(args)
            if args.out is None:
                return selftest(config.threshold, stdout)
            with open(args.out, "w", encoding="utf-8") as fh:
                return selftest(config.threshold, fh)
        N = _natural(args.n, "N", 2)
        config = _config(args)
        M, m_source = _resolve_M(args, N, stderr)
        params = _base_params(M, m_source, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            columns, rows, summary = _COMMANDS[args.command](args, N, M, params, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except (ArithmeticError, ValueError, MemoryError) as exc:
        print(f"error: computation failed: {exc}", file=stderr)
        return EXIT_COMPUTATION

    report = Report(args.command, N, params, columns, rows, summary)
    text = to_json(report) if args.format == "json" else to_csv(report)
    _emit(text, args.out, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
