"""Command-line interface for the sweep datasets and the verification suite.

Range arguments use ``min:max:steps``; value lists are comma-separated.  A
flat ``key = value`` config file can supply any option, with explicit flags
taking precedence.  Exit codes: 0 success, 1 domain or convergence error
(with a message naming the offending parameter), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .quadrature import (ConvergenceError, cubic_weight_band_error,
                         lorentzian_band_integral, rho_bb_integral)
from .sweeps import (SweepRange, grid_fidelity, oracle_check, sweep_delta,
                     sweep_epsilon, sweep_time, write_result)

_DEFAULTS = {
    "sweep-epsilon": {"delta": "0,2,4,8", "eps": "0.01:10:1000",
                      "out": "fig1.csv", "format": "csv"},
    "sweep-delta": {"eps": "0.2,0.5,5,9", "delta": "-10:10:1001",
                    "out": "fig2.csv", "format": "csv"},
    "sweep-time": {"range": "0:5:500", "out": "fig3.csv", "format": "csv"},
    "fidelity-grid": {"eps": "0.05:10:100", "delta": "-10:10:101",
                      "out": "fig4.csv", "format": "csv"},
    "oracle-check": {"modes": "200000", "span": "1000", "eps": "0.05:10:20",
                     "delta": "-10:10:20", "out": "oracle_check.csv",
                     "format": "csv"},
    "verify": {"tol": "1e-8"},
}


def parse_range(text: str) -> SweepRange:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be min:max:steps, got {text!r}")
    try:
        return SweepRange(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad range {text!r}: {exc}") from exc


def parse_float_list(text: str) -> list[float]:
    try:
        values = [float(item) for item in str(text).split(",") if item.strip()]
    except ValueError as exc:
        raise ValueError(f"bad value list {text!r}: {exc}") from exc
    if not values:
        raise ValueError(f"empty value list {text!r}")
    return values


def load_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; blank lines and '#' comments are ignored."""
    config: dict[str, str] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', "
                                 f"got {raw.strip()!r}")
            key, value = line.split("=", 1)
            config[key.strip()] = value.strip()
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wwentangle",
        description="Datasets and checks for entanglement in free-space "
                    "spontaneous emission.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="output file path")
        p.add_argument("--format", choices=("csv", "json"),
                       help="output format (default csv)")

    p = sub.add_parser("sweep-epsilon",
                       help="entanglement vs band half-width (fig1 dataset)")
    p.add_argument("--delta", help="comma list of detunings (default 0,2,4,8)")
    p.add_argument("--eps", help="eps range min:max:steps (default 0.01:10:1000)")
    add_common(p)

    p = sub.add_parser("sweep-delta",
                       help="entanglement vs detuning (fig2 dataset)")
    p.add_argument("--eps", help="comma list of band half-widths "
                                 "(default 0.2,0.5,5,9)")
    p.add_argument("--delta", help="delta range min:max:steps "
                                   "(default -10:10:1001)")
    add_common(p)

    p = sub.add_parser("sweep-time",
                       help="decay dynamics over scaled time (fig3 dataset)")
    p.add_argument("--range", help="gamma_t range min:max:steps (default 0:5:500)")
    add_common(p)

    p = sub.add_parser("fidelity-grid",
                       help="vacuum fidelity over the (eps, delta) plane "
                            "(fig4 dataset)")
    p.add_argument("--eps", help="eps range min:max:steps (default 0.05:10:100)")
    p.add_argument("--delta", help="delta range min:max:steps "
                                   "(default -10:10:101)")
    add_common(p)

    p = sub.add_parser("oracle-check",
                       help="closed form vs discrete brute-force comparison")
    p.add_argument("--modes", help="number of discrete modes (default 200000)")
    p.add_argument("--span", help="detuning half-window in Gamma units "
                                  "(default 1000)")
    p.add_argument("--eps", help="eps range min:max:steps (default 0.05:10:20)")
    p.add_argument("--delta", help="delta range min:max:steps "
                                   "(default -10:10:20)")
    add_common(p)

    p = sub.add_parser("verify", help="run the quadrature identity suite")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--tol", help="quadrature tolerance (default 1e-8)")

    return parser


def _resolve(args: argparse.Namespace, key: str) -> str:
    """Explicit flag > config file > built-in default."""
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return str(value)
    if getattr(args, "config", None):
        config = load_config(args.config)
        if key in config:
            return config[key]
    return _DEFAULTS[args.command][key]


def _run_verify(tol: float) -> int:
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        status = "ok" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"verify: {name} ... {status}{suffix}")
        if not ok:
            failures += 1

    def antiderivative(a: float, b: float) -> float:
        lo = -math.pi if a == -math.inf else 2.0 * math.atan(2.0 * a)
        hi = math.pi if b == math.inf else 2.0 * math.atan(2.0 * b)
        return hi - lo

    full = lorentzian_band_integral(-math.inf, math.inf, tol)
    check("full-line Lorentzian mass = 2*pi",
          abs(full.value - 2.0 * math.pi) <= tol,
          f"value {full.value:.12g}")

    sym = lorentzian_band_integral(-0.5, 0.5, tol)
    check("resonant band (-1/2, 1/2) mass = pi",
          abs(sym.value - math.pi) <= tol, f"value {sym.value:.12g}")

    rng = np.random.default_rng(1905)
    worst = 0.0
    for _ in range(10):
        a, b = sorted(rng.uniform(-20.0, 20.0, size=2))
        if b - a < 1e-3:
            b = a + 1e-3
        got = lorentzian_band_integral(a, b, tol)
        worst = max(worst, abs(got.value - antiderivative(a, b)))
    check("random bands match the arctan antiderivative", worst <= tol,
          f"worst deviation {worst:.3g}")

    left = lorentzian_band_integral(-1.0, 0.3, tol)
    right = lorentzian_band_integral(0.3, 4.0, tol)
    whole = lorentzian_band_integral(-1.0, 4.0, tol)
    check("band additivity", abs(left.value + right.value - whole.value) <= 3.0 * tol)

    worst = 0.0
    for tau in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
        got = rho_bb_integral(tau, tol)
        worst = max(worst, abs(got.value + math.exp(-tau) - 1.0))
    check("ground population + excited population = 1", worst <= tol,
          f"worst deviation {worst:.3g}")

    optical = cubic_weight_band_error(0.5, 0.0, 1e6, 1e8, 1e-9)
    check("cubic frequency weight negligible at optical scales",
          optical < 1e-6, f"relative shift {optical:.3g}")
    coarse = cubic_weight_band_error(0.5, 0.0, 1e4, 1e6, 1e-9)
    check("cubic weight shift decreases with the frequency scale",
          optical < coarse)

    if failures:
        print(f"verify: FAILED {failures} check(s)")
        return 1
    print("verify: all checks passed")
    return 0


_VALUE_OPTIONS = frozenset({"--delta", "--eps", "--range", "--out", "--format",
                            "--config", "--modes", "--span", "--tol"})


def _fold_option_values(argv) -> list[str]:
    """Join ``--opt value`` into ``--opt=value`` so values may start with '-'.

    Ranges like ``-1:5:100`` and lists like ``-10,-5,0`` would otherwise be
    mistaken for option names by argparse.
    """
    folded = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_OPTIONS and i + 1 < len(argv):
            folded.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            folded.append(token)
            i += 1
    return folded


def run_cli(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fold_option_values(list(argv)))
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0

    try:
        if args.command == "sweep-epsilon":
            result = sweep_epsilon(parse_float_list(_resolve(args, "delta")),
                                   parse_range(_resolve(args, "eps")))
        elif args.command == "sweep-delta":
            result = sweep_delta(parse_float_list(_resolve(args, "eps")),
                                 parse_range(_resolve(args, "delta")))
        elif args.command == "sweep-time":
            result = sweep_time(parse_range(_resolve(args, "range")))
        elif args.command == "fidelity-grid":
            result = grid_fidelity(parse_range(_resolve(args, "eps")),
                                   parse_range(_resolve(args, "delta")))
        elif args.command == "oracle-check":
            result = oracle_check(int(_resolve(args, "modes")),
                                  float(_resolve(args, "span")),
                                  parse_range(_resolve(args, "eps")).values(),
                                  parse_range(_resolve(args, "delta")).values())
        elif args.command == "verify":
            return _run_verify(float(_resolve(args, "tol")))
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command!r}")
            return 2
        write_result(result, _resolve(args, "out"), _resolve(args, "format"))
    except (ValueError, ConvergenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
