"""Command-line front end.

Exit codes: 0 success, 2 resonant forcing, 3 nonexistence certified,
4 undecided, 64 unreadable input or bad usage, 65 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .counterexample import (CounterexampleBundle, build_counterexample, explore_omega2,
                             symmetry_and_open_question_report)
from .errors import CertificationError, PreconditionError, ResonanceError
from .oscillator import Frequency, kernel_distance, particular_solution, residual_sup, voc_oracle
from .positivity import nonexistence_search, positive_solution, positivity_margin
from .trig import HarmonicSeries

EXIT_OK = 0
EXIT_RESONANT = 2
EXIT_NONEXISTENCE = 3
EXIT_UNDECIDED = 4
EXIT_PARSE = 64
EXIT_PRECONDITION = 65

COMMANDS = ("solve", "certify", "margin", "counterexample", "explore", "report")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    omega: float = 1.0
    input_path: Path | None = None
    output_path: Path | None = None
    grid_m: int | None = None
    tolerance: float | None = None
    seed: int | None = None
    epsilon: float | None = None
    trials: int = 100
    degree: int = 8

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.grid_m is not None and self.grid_m < 1024:
            raise UsageError("--grid must be at least 1024")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("--tol must be positive")

    def grid(self, fallback: int) -> int:
        if self.grid_m is not None:
            return self.grid_m
        env = os.environ.get("RP_GRID_M")
        if env:
            value = int(env)
            if value < 1024:
                raise UsageError("RP_GRID_M must be at least 1024")
            return value
        return fallback


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_epsilon(text: str):
    if text == "default":
        return "default"
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="forcedosc", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS, help="what to run")
    parser.add_argument("--omega", type=float, default=1.0, help="frequency (default 1)")
    parser.add_argument("--input", type=Path, help="JSON harmonic series, or a bundle for report")
    parser.add_argument("--output", type=Path, help="write JSON here instead of stdout")
    parser.add_argument("--grid", type=int, help="grid size, at least 1024 (env RP_GRID_M)")
    parser.add_argument("--tol", type=float, help="resonance tolerance")
    parser.add_argument("--epsilon", type=_parse_epsilon, help="mollifier width or 'default'")
    parser.add_argument("--seed", type=int, help="seed for explore")
    parser.add_argument("--trials", type=int, default=100, help="explore sample count")
    parser.add_argument("--degree", type=int, default=8, help="explore degree, at most 16")
    return parser


def _write_text(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(payload: dict, cfg: RunConfig) -> None:
    _write_text(json.dumps(payload, indent=2) + "\n", cfg.output_path)


def _read_json(cfg: RunConfig):
    try:
        if cfg.input_path is None:
            return json.load(sys.stdin)
        with open(cfg.input_path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read input: {exc}") from exc


def _read_series(cfg: RunConfig) -> HarmonicSeries:
    try:
        return HarmonicSeries.from_dict(_read_json(cfg))
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"not a harmonic series: {exc}") from exc


def _integer_omega(cfg: RunConfig) -> int:
    w = Frequency(cfg.omega)
    if not w.is_integer:
        raise PreconditionError(f"--omega must be an integer here, got {cfg.omega}")
    return w.n


def cmd_solve(cfg: RunConfig) -> int:
    h = _read_series(cfg)
    w = Frequency(cfg.omega)
    try:
        u = particular_solution(h, w, cfg.tolerance)
    except ResonanceError as exc:
        _emit({"omega": w.omega, "resonance": exc.report.to_dict()}, cfg)
        return EXIT_RESONANT
    payload = {"omega": w.omega, "solution": u.to_dict(), "residual": residual_sup(u, h, w)}
    if w.is_integer and w.n == 1:
        grid = voc_oracle(h, m=cfg.grid(4096))
        payload["voc_distance"] = kernel_distance(grid, u, w)
    _emit(payload, cfg)
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    h = _read_series(cfg)
    n = _integer_omega(cfg)
    m = cfg.grid(4096)
    if n == 1:
        try:
            result = positive_solution(h, 1, m, cfg.tolerance)
        except ResonanceError as exc:
            _emit({"omega": n, "resonance": exc.report.to_dict()}, cfg)
            return EXIT_RESONANT
        except CertificationError as exc:
            _emit({"omega": n, "undecided": str(exc)}, cfg)
            return EXIT_UNDECIDED
        _emit({"omega": n, "positive_solution": result.to_dict()}, cfg)
        return EXIT_OK
    try:
        u_p = particular_solution(h, n, cfg.tolerance)
    except ResonanceError as exc:
        _emit({"omega": n, "resonance": exc.report.to_dict()}, cfg)
        return EXIT_RESONANT
    report = positivity_margin(u_p, n, m)
    nonex = nonexistence_search(u_p, n)
    payload = {"omega": n, "margin": report.to_dict(),
               "nonexistence": None if nonex is None else nonex.to_dict()}
    _emit(payload, cfg)
    if report.certified_positive:
        return EXIT_OK
    if nonex is not None:
        return EXIT_NONEXISTENCE
    return EXIT_UNDECIDED


def cmd_margin(cfg: RunConfig) -> int:
    h = _read_series(cfg)
    w = Frequency(cfg.omega)
    try:
        u_p = particular_solution(h, w, cfg.tolerance)
    except ResonanceError as exc:
        _emit({"omega": w.omega, "resonance": exc.report.to_dict()}, cfg)
        return EXIT_RESONANT
    _emit(positivity_margin(u_p, w, cfg.grid(4096)).to_dict(), cfg)
    return EXIT_OK


def _bundle_for(cfg: RunConfig) -> CounterexampleBundle:
    n = _integer_omega(cfg)
    if n < 3:
        raise PreconditionError("the construction needs omega >= 3")
    eps = cfg.epsilon
    if eps == "default":
        return build_counterexample(n, np.pi / (4 * n), cfg.grid(8192))
    return build_counterexample(n, eps, cfg.grid(8192))


def cmd_counterexample(cfg: RunConfig) -> int:
    try:
        bundle = _bundle_for(cfg)
    except CertificationError as exc:
        _emit({"omega": cfg.omega, "failed": str(exc)}, cfg)
        return EXIT_UNDECIDED
    _emit(bundle.to_dict(), cfg)
    if cfg.output_path is not None:
        grid = bundle.u_star
        if isinstance(grid, HarmonicSeries):
            from .trig import synthesize

            grid = synthesize(grid, bundle.grid_m)
        csv_path = Path(cfg.output_path).with_suffix(".csv")
        fd, tmp = tempfile.mkstemp(dir=csv_path.parent, prefix=f".{csv_path.name}.")
        os.close(fd)
        grid.to_csv(tmp)
        os.replace(tmp, csv_path)
    return EXIT_OK


def cmd_explore(cfg: RunConfig) -> int:
    seed = 0 if cfg.seed is None else cfg.seed
    if cfg.degree > 16 or cfg.degree < 0 or cfg.trials < 0:
        raise PreconditionError("need 0 <= --degree <= 16 and --trials >= 0")
    report = explore_omega2(seed, cfg.trials, cfg.degree, cfg.grid(1024))
    _emit(report, cfg)
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    if cfg.input_path is not None:
        try:
            bundle = CounterexampleBundle.from_dict(_read_json(cfg))
        except (UsageError, CertificationError):
            raise
        except Exception as exc:
            raise UsageError(f"not a counterexample bundle: {exc}") from exc
    else:
        bundle = _bundle_for(cfg)
    _emit(symmetry_and_open_question_report(bundle), cfg)
    return EXIT_OK


HANDLERS = {
    "solve": cmd_solve,
    "certify": cmd_certify,
    "margin": cmd_margin,
    "counterexample": cmd_counterexample,
    "explore": cmd_explore,
    "report": cmd_report,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        eps = args.epsilon
        if isinstance(eps, float) and not math.isfinite(eps):
            raise UsageError("--epsilon must be finite")
        cfg = RunConfig(args.command, args.omega, args.input, args.output, args.grid,
                        args.tol, args.seed, eps, args.trials, args.degree)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"forcedosc: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ValueError) as exc:
        print(f"forcedosc: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
