"""Command-line interface: ``nsiep construct | check | verify``.

Exit codes: 0 success, 1 input/parse/I-O error, 2 spectrum not realizable by
the construction, 3 weak condition fails (``check``), 4 verification failed,
5 construction stopped for a numerical reason (reducible result, no
convergence).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import io
from .composer import construct
from .errors import NiepError, NotRealizable
from .spectrum import Spectrum, check_conditions, make_spectrum, random_realizable
from .stochastic import construct_stochastic, normalize_spectrum
from .verify import verify_matrix

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_REALIZABLE = 2
EXIT_WEAK_FAILS = 3
EXIT_VERIFY_FAILED = 4
EXIT_NUMERICAL = 5

DEFAULT_TOL = 1e-8
TOL_ENV = "NSIEP_TOL"


@dataclass
class CliConfig:
    subcommand: str
    mode: str = "symmetric"
    spectrum: str | None = None
    random_n: int | None = None
    seed: int = 0
    matrix_path: str | None = None
    out_path: str | None = None
    format: str = "csv"
    tol: float = DEFAULT_TOL
    verify: bool = False


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"nsiep: {msg}", file=sys.stderr)


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number")


def load_spectrum(cfg: CliConfig) -> Spectrum:
    if (cfg.spectrum is None) == (cfg.random_n is None):
        raise InputError("give exactly one of --spectrum or --random")
    if cfg.random_n is not None:
        if cfg.random_n < 1:
            raise InputError("--random needs a positive size")
        return random_realizable(cfg.random_n, np.random.default_rng(cfg.seed))
    return make_spectrum(io.read_spectrum(cfg.spectrum))


def _report_text(d: dict) -> str:
    width = max(len(k) for k in d)
    lines = []
    for key, val in d.items():
        if isinstance(val, bool) or val is None:
            val = json.dumps(val)
        elif isinstance(val, list):
            val = json.dumps(val)
        lines.append(f"{key:<{width}}  {val}")
    return "\n".join(lines) + "\n"


def _render(d: dict, fmt: str) -> str:
    return json.dumps(d, indent=2) + "\n" if fmt == "json" else _report_text(d)


def run_construct(cfg: CliConfig) -> int:
    s = load_spectrum(cfg)
    target = s
    if cfg.mode == "stochastic":
        result = construct_stochastic(s)
        M = result.S
        target = normalize_spectrum(s)
        _err(f"stochastic: scale {result.scale!r}, power iterations {result.iterations}")
    else:
        M, _ = construct(s, cfg.mode)

    payload = io.format_matrix(M, cfg.format)
    if cfg.out_path:
        io.write_atomic(cfg.out_path, payload)
    else:
        sys.stdout.write(payload)

    if cfg.verify:
        report = verify_matrix(M, target, tol=cfg.tol, stochastic=cfg.mode == "stochastic")
        text = _render(report.to_dict(), cfg.format)
        (sys.stdout if cfg.out_path else sys.stderr).write(text)
        if not report.ok:
            _err("verification failed")
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def run_check(cfg: CliConfig) -> int:
    s = load_spectrum(cfg)
    report = check_conditions(s)
    d = {"n": s.n, "values": list(s.values), **report.to_dict()}
    sys.stdout.write(_render(d, cfg.format))
    return EXIT_OK if report.weak_ok else EXIT_WEAK_FAILS


def run_verify(cfg: CliConfig) -> int:
    if not cfg.matrix_path:
        raise InputError("verify needs --matrix")
    M = io.read_matrix(cfg.matrix_path)
    s = load_spectrum(cfg)
    stochastic = cfg.mode == "stochastic"
    if stochastic:
        s = normalize_spectrum(s)
    report = verify_matrix(M, s, tol=cfg.tol, stochastic=stochastic)
    sys.stdout.write(_render(report.to_dict(), cfg.format))
    ok = report.spectrum_match and report.nonnegative
    if stochastic:
        ok = ok and bool(report.stochastic_rows_ok)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spectrum", help="inline list ('2 0.5 -1' or '2,0.5,-1') or @file")
    common.add_argument("--random", dest="random_n", type=int, metavar="N",
                        help="use a random realizable spectrum of size N instead")
    common.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")
    common.add_argument("--mode", choices=("symmetric", "general", "stochastic"), default="symmetric")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="matrix format; reports are JSON with 'json', aligned text otherwise")
    common.add_argument("--tol", type=float, default=None,
                        help=f"spectrum tolerance (default ${TOL_ENV} or {DEFAULT_TOL})")

    parser = argparse.ArgumentParser(prog="nsiep", description="Nonnegative matrices with prescribed real eigenvalues.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("construct", parents=[common], help="build a matrix")
    p.add_argument("--out", dest="out_path", help="output file (default stdout)")
    p.add_argument("--verify", action="store_true", help="certify the result and report")
    sub.add_parser("check", parents=[common], help="evaluate realizability conditions")
    p = sub.add_parser("verify", parents=[common], help="certify a matrix against a spectrum")
    p.add_argument("--matrix", dest="matrix_path", required=True, help="CSV or JSON matrix file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = args.tol if args.tol is not None else _default_tol()
        if not tol > 0:
            raise InputError("tolerance must be positive")
        cfg = CliConfig(
            subcommand=args.subcommand,
            mode=args.mode,
            spectrum=args.spectrum,
            random_n=args.random_n,
            seed=args.seed,
            matrix_path=getattr(args, "matrix_path", None),
            out_path=getattr(args, "out_path", None),
            format=args.format,
            tol=tol,
            verify=getattr(args, "verify", False),
        )
        runner = {"construct": run_construct, "check": run_check, "verify": run_verify}[cfg.subcommand]
        return runner(cfg)
    except NotRealizable as exc:
        _err(f"not realizable: {exc}")
        return EXIT_NOT_REALIZABLE
    except (InputError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except NiepError as exc:
        if isinstance(exc, ValueError):
            _err(str(exc))
            return EXIT_INPUT
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
