"""Drift-velocity fits, parameter sweeps and the curve-amplitude metric.

The centre of mass of a driven ensemble moves linearly in time once the
loading transient has died out; the drift velocity is the slope of an
ordinary least-squares line through the CM series, reported in units of
the recoil velocity.

Uncertainty: when per-trajectory samples are available the error is the
standard error of the independent per-trajectory slopes (the mean of
those slopes equals the CM slope exactly, OLS being linear).  The
classic residual-based OLS error is kept as the fallback for plain
series, but on ensemble output it would be biased low because CM
residuals are strongly autocorrelated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import units
from .ensemble import EnsembleResult, run_ensemble
from .params import InvalidParams, SimParams, validate

__all__ = [
    "VelocityFit",
    "SweepResult",
    "fit_velocity",
    "phase_sweep",
    "b_sweep",
    "sigma_v",
    "format_sweep_table",
    "format_curve",
]

MIN_FIT_SAMPLES = 10


class FitWindowError(ValueError):
    """The requested fit window holds too few samples."""


@dataclass(frozen=True)
class VelocityFit:
    """OLS drift fit over a time window; v and v_err in v_r units."""

    v: float
    v_err: float
    intercept: float
    window: tuple[float, float]
    rms_residual: float
    n_samples: int
    error_method: str


@dataclass(frozen=True)
class SweepResult:
    """Velocity versus one drive parameter, plus the sigma_v summary."""

    param_name: str
    values: np.ndarray
    v: np.ndarray
    v_err: np.ndarray
    sigma_v: float


def _ols(t: np.ndarray, y: np.ndarray) -> tuple[float, float, np.ndarray]:
    tc = t - t.mean()
    denom = float(tc @ tc)
    slope = float(tc @ y) / denom
    intercept = float(y.mean() - slope * t.mean())
    resid = y - (intercept + slope * t)
    return slope, intercept, resid


def fit_velocity(
    result: EnsembleResult, window: tuple[float, float] | None = None
) -> VelocityFit:
    """Fit the CM drift over ``window`` (default: transient to end)."""
    if window is None:
        window = (result.params.t_transient, result.params.t_total)
    lo, hi = window
    mask = (result.times >= lo) & (result.times <= hi)
    m = int(mask.sum())
    if m < MIN_FIT_SAMPLES:
        raise FitWindowError(
            f"fit window [{lo}, {hi}] holds {m} samples, need {MIN_FIT_SAMPLES}"
        )

    t = result.times[mask]
    slope, intercept, resid = _ols(t, result.cm[mask])
    rms = float(np.sqrt(np.mean(resid**2)))

    if result.traj_z is not None and result.n_traj > 1:
        tc = t - t.mean()
        denom = float(tc @ tc)
        slopes = (result.traj_z[:, mask] @ tc) / denom
        err = float(slopes.std(ddof=1) / np.sqrt(result.n_traj))
        method = "trajectory-spread"
    elif m > 2:
        sigma2 = float(resid @ resid) / (m - 2)
        tc = t - t.mean()
        err = float(np.sqrt(sigma2 / (tc @ tc)))
        method = "ols-residual"
    else:
        err = 0.0
        method = "ols-residual"

    vr = units.RECOIL_VELOCITY
    return VelocityFit(
        v=slope / vr,
        v_err=err / vr,
        intercept=intercept,
        window=(lo, hi),
        rms_residual=rms,
        n_samples=m,
        error_method=method,
    )


def _sweep(
    base: SimParams,
    name: str,
    values: np.ndarray,
    make_point,
    workers: int | None,
    mirror: bool,
) -> SweepResult:
    vs = np.empty(len(values))
    es = np.empty(len(values))
    for i, x in enumerate(values):
        p = make_point(base, float(x))
        res = run_ensemble(p, point=i, workers=workers, mirror=mirror)
        fit = fit_velocity(res)
        vs[i] = fit.v
        es[i] = fit.v_err
    return SweepResult(
        param_name=name,
        values=np.asarray(values, dtype=float),
        v=vs,
        v_err=es,
        # the RMS deviation of a single value from its own mean is zero
        sigma_v=sigma_v(vs) if len(vs) > 1 else 0.0,
    )


def phase_sweep(
    base: SimParams,
    phis,
    workers: int | None = None,
    mirror: bool = False,
) -> SweepResult:
    """One ensemble per phase value; point i draws seed (master, i)."""
    phis = np.asarray(phis, dtype=float)
    if phis.size == 0:
        raise InvalidParams("phase sweep needs at least one grid point")
    validate(base)

    def at_phi(b: SimParams, phi: float) -> SimParams:
        return replace(b, drive=replace(b.drive, phi=phi))

    return _sweep(base, "phi", phis, at_phi, workers, mirror)


def b_sweep(
    base: SimParams,
    bs,
    workers: int | None = None,
) -> SweepResult:
    """Scan the 2-omega amplitude with A = 1 - B (constant amplitude sum).

    The phase is taken from ``base.drive.phi`` (pi/2 is the canonical
    choice, maximising the broken reversal symmetry).
    """
    bs = np.asarray(bs, dtype=float)
    if bs.size == 0:
        raise InvalidParams("amplitude sweep needs at least one grid point")
    if np.any((bs < 0) | (bs > 1)):
        raise InvalidParams("b_amp grid points must lie in [0, 1]")
    validate(base)

    def at_b(b: SimParams, bv: float) -> SimParams:
        return replace(b, drive=replace(b.drive, a_amp=1.0 - bv, b_amp=bv))

    return _sweep(base, "b_amp", bs, at_b, workers, mirror=False)


def sigma_v(vs) -> float:
    """RMS deviation of a velocity list from its mean.

    sqrt( sum_i (v_i - <v>)^2 / N ): permutation-invariant, scales
    linearly with the velocities, and summarises the amplitude of a
    velocity-versus-phase curve in a single number.
    """
    vs = np.asarray(vs, dtype=float)
    if vs.size < 2:
        raise InvalidParams(f"sigma_v needs at least 2 velocities, got {vs.size}")
    return float(np.sqrt(np.mean((vs - vs.mean()) ** 2)))


def format_sweep_table(sweep: SweepResult, header_lines: list[str]) -> str:
    """Self-describing delimited table; grid points flagged by drift status."""
    out = [f"# {line}" for line in header_lines]
    out.append(f"{sweep.param_name},v,v_err,status")
    for x, v, e in zip(sweep.values, sweep.v, sweep.v_err):
        status = "symmetric" if abs(v) < 3.0 * e else "drift"
        out.append(f"{x:.9g},{v:.9g},{e:.9g},{status}")
    out.append(f"# sigma_v = {sweep.sigma_v:.9g}")
    return "\n".join(out) + "\n"


def format_curve(sweep: SweepResult) -> str:
    """Bare two-column (parameter, velocity) text for external plotters."""
    return "".join(f"{x:.9g} {v:.9g}\n" for x, v in zip(sweep.values, sweep.v))
