"""Command-line entry point.

Subcommands map one-to-one onto the things the package can reproduce:

    run             one ensemble -> centre-of-mass series table
    sweep-phi       drift velocity versus drive phase
    sweep-b         drift velocity versus 2-omega amplitude (A = 1 - B)
    oracle-mixing   deterministic displacement scaling tables
    check-symmetry  analytic symmetry predicates versus grid sampling

Exit codes: 0 success, 2 invalid configuration or usage, 3 runtime
failure.  Errors print a single machine-parsable line on stderr and any
partially written output files are removed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .analysis import b_sweep, format_curve, format_sweep_table, phase_sweep
from .configio import config_lines, load_sim_params
from .drive import inertial_force, shift_symmetry_holds, time_reversal_symmetry_holds
from .ensemble import run_ensemble, write_cm_table
from .oracle import mixing_displacement, sample_symmetry
from .params import DriveParams, InvalidParams, SimParams, vibrational_frequency

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RUNTIME = 3


def _parse_grid(spec: str) -> np.ndarray:
    """Parse 'start:stop:count' into an inclusive linear grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InvalidParams(f"grid must be start:stop:count, got {spec!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidParams(f"grid must be start:stop:count, got {spec!r}") from None
    if count < 2:
        raise InvalidParams(f"grid needs at least 2 points, got {count}")
    return np.linspace(start, stop, count)


def _parse_overrides(pairs: list[str]) -> dict[str, str]:
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise InvalidParams(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def _load_params(args) -> SimParams:
    if not os.path.exists(args.config):
        raise InvalidParams(f"config file not found: {args.config}")
    overrides = _parse_overrides(args.set or [])
    params = load_sim_params(args.config, overrides)
    if args.seed is not None:
        params = replace(params, seed=args.seed)
    return params


class _OutputTracker:
    """Collects written paths so failures leave no partial artifacts."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.paths: list[str] = []
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name: str) -> str:
        p = os.path.join(self.out_dir, name)
        self.paths.append(p)
        return p

    def cleanup(self) -> None:
        for p in self.paths:
            try:
                os.unlink(p)
            except OSError:
                pass


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run: parameters, seed, outputs."""

    version: str
    seed: int
    params: list[str]
    duration_s: float
    outputs: list[str]
    extra: dict = field(default_factory=dict)

    def write(self, path: str) -> None:
        payload = {
            "version": self.version,
            "seed": self.seed,
            "params": self.params,
            "duration_s": self.duration_s,
            "outputs": self.outputs,
        }
        payload.update(self.extra)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _write_manifest(tracker: _OutputTracker, params: SimParams, started: float, extra: dict) -> None:
    manifest = RunManifest(
        version=__version__,
        seed=params.seed,
        params=config_lines(params),
        duration_s=round(time.time() - started, 3),
        outputs=[os.path.basename(p) for p in tracker.paths],
        extra=extra,
    )
    manifest.write(tracker.path("manifest.json"))


def _header(params: SimParams, title: str) -> list[str]:
    return [f"latticedrift {__version__} {title}", *config_lines(params)]


def cmd_run(args) -> int:
    started = time.time()
    params = _load_params(args)
    tracker = _OutputTracker(args.out)
    try:
        result = run_ensemble(params, workers=args.workers, keep_trajectories=False)
        write_cm_table(result, tracker.path("cm_series.csv"), _header(params, "cm series"))
        _write_manifest(tracker, params, started, {"command": "run"})
    except BaseException:
        tracker.cleanup()
        raise
    return EXIT_OK


def _run_sweep(args, kind: str) -> int:
    started = time.time()
    params = _load_params(args)
    grid = _parse_grid(args.grid)
    if kind == "phi":
        sweep = phase_sweep(params, grid, workers=args.workers)
    else:
        sweep = b_sweep(params, grid, workers=args.workers)
    tracker = _OutputTracker(args.out)
    try:
        table = format_sweep_table(sweep, _header(params, f"{kind} sweep"))
        with open(tracker.path(f"sweep_{kind}.csv"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(table)
        with open(tracker.path(f"sweep_{kind}_curve.dat"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_curve(sweep))
        _write_manifest(
            tracker, params, started,
            {"command": f"sweep-{kind}", "grid": args.grid, "sigma_v": sweep.sigma_v},
        )
    except BaseException:
        tracker.cleanup()
        raise
    print(f"sigma_v = {sweep.sigma_v:.9g}")
    return EXIT_OK


def cmd_sweep_phi(args) -> int:
    return _run_sweep(args, "phi")


def cmd_sweep_b(args) -> int:
    grid = _parse_grid(args.grid)
    if np.any((grid < 0) | (grid > 1)):
        raise InvalidParams("b_amp grid must stay within [0, 1]")
    return _run_sweep(args, "b")


def cmd_oracle_mixing(args) -> int:
    u0 = args.u0
    omega = args.omega if args.omega is not None else 0.7 * vibrational_frequency(u0)
    amps = np.logspace(math.log10(args.amp_lo), math.log10(args.amp_hi), args.points)
    tracker = _OutputTracker(args.out)

    def displacement(a: float, b: float) -> float:
        d = DriveParams(alpha0=args.alpha0, a_amp=a, b_amp=b, omega=omega, phi=args.phi)
        return mixing_displacement(u0, args.gamma_damp, d).displacement

    try:
        rows_a = [(a, displacement(a, args.fixed_b)) for a in amps]
        rows_b = [(b, displacement(args.fixed_a, b)) for b in amps]
        for name, rows, col in (("mixing_a.csv", rows_a, "a_amp"), ("mixing_b.csv", rows_b, "b_amp")):
            with open(tracker.path(name), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(f"{col},dz\n")
                fh.writelines(f"{x:.9g},{dz:.9g}\n" for x, dz in rows)
        slope_a = np.polyfit(np.log(amps), np.log(np.abs([r[1] for r in rows_a])), 1)[0]
        slope_b = np.polyfit(np.log(amps), np.log(np.abs([r[1] for r in rows_b])), 1)[0]
    except BaseException:
        tracker.cleanup()
        raise
    print(f"slope_A = {slope_a:.4f}")
    print(f"slope_B = {slope_b:.4f}")
    return EXIT_OK


def cmd_check_symmetry(args) -> int:
    d = DriveParams(
        alpha0=args.alpha0, a_amp=args.a_amp, b_amp=args.b_amp,
        omega=args.omega, phi=args.phi,
    )
    f = lambda t: inertial_force(t, d)
    shift_pred = shift_symmetry_holds(d)
    rev_pred = time_reversal_symmetry_holds(d)
    # a pure 2-omega force repeats after T/2; sample the shift at the
    # fundamental period so the predicate and the grid agree
    pure_second = d.alpha0 * d.a_amp == 0.0 and d.alpha0 * d.b_amp != 0.0
    fundamental = d.period / 2.0 if pure_second else d.period
    shift_viol = sample_symmetry(f, fundamental, "shift", args.grid_n)
    rev_viol = sample_symmetry(f, d.period, "reversal", args.grid_n)
    scale = max(1.0, abs(d.alpha0) * d.omega**2)
    tol = 1e-9 * scale
    ok = (shift_pred == (shift_viol <= tol)) and (rev_pred == (rev_viol <= tol))
    print(f"shift_symmetry: predicate={shift_pred} max_violation={shift_viol:.3g}")
    print(f"time_reversal_symmetry: predicate={rev_pred} max_violation={rev_viol:.3g}")
    print(f"consistent: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticedrift",
        description="Monte Carlo of phase-controlled atomic drift in a shaken optical lattice",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="flat key=value config file")
            p.add_argument("--set", action="append", metavar="KEY=VALUE",
                           help="override any config key")
            p.add_argument("--seed", type=int, default=None, help="master RNG seed")
            p.add_argument("--workers", type=int, default=None, help="worker thread cap")
        p.add_argument("--out", default=".", help="output directory")

    p_run = sub.add_parser("run", help="run one ensemble, write the CM series")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_phi = sub.add_parser("sweep-phi", help="drift velocity versus drive phase")
    add_common(p_phi)
    p_phi.add_argument("--grid", required=True, help="phase grid start:stop:count")
    p_phi.set_defaults(func=cmd_sweep_phi)

    p_b = sub.add_parser("sweep-b", help="drift velocity versus 2-omega amplitude")
    add_common(p_b)
    p_b.add_argument("--grid", required=True, help="amplitude grid start:stop:count in [0,1]")
    p_b.set_defaults(func=cmd_sweep_b)

    p_mix = sub.add_parser("oracle-mixing", help="deterministic displacement scaling tables")
    add_common(p_mix, needs_config=False)
    p_mix.add_argument("--u0", type=float, default=50.0)
    p_mix.add_argument("--gamma-damp", dest="gamma_damp", type=float, default=2.0)
    p_mix.add_argument("--alpha0", type=float, default=0.5)
    p_mix.add_argument("--omega", type=float, default=None,
                       help="drive frequency (default 0.7 * Omega_v)")
    p_mix.add_argument("--phi", type=float, default=0.0)
    p_mix.add_argument("--fixed-a", dest="fixed_a", type=float, default=0.03)
    p_mix.add_argument("--fixed-b", dest="fixed_b", type=float, default=0.03)
    p_mix.add_argument("--amp-lo", dest="amp_lo", type=float, default=0.01)
    p_mix.add_argument("--amp-hi", dest="amp_hi", type=float, default=0.1)
    p_mix.add_argument("--points", type=int, default=9)
    p_mix.set_defaults(func=cmd_oracle_mixing)

    p_sym = sub.add_parser("check-symmetry", help="symmetry predicates versus sampling")
    p_sym.add_argument("--alpha0", type=float, default=10.0)
    p_sym.add_argument("--a-amp", dest="a_amp", type=float, default=0.75)
    p_sym.add_argument("--b-amp", dest="b_amp", type=float, default=1.0)
    p_sym.add_argument("--omega", type=float, default=1.0)
    p_sym.add_argument("--phi", type=float, default=0.0)
    p_sym.add_argument("--grid-n", dest="grid_n", type=int, default=1000)
    p_sym.set_defaults(func=cmd_check_symmetry)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"latticedrift: invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001 - single line, clean exit
        print(f"latticedrift: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
