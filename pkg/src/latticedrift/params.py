"""Simulation parameter types and validation.

All quantities are in recoil units (see :mod:`latticedrift.units`).
Instances are frozen dataclasses: once validated they are immutable and
safe to share read-only across worker threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import units

__all__ = [
    "InvalidParams",
    "LatticeParams",
    "DriveParams",
    "SimParams",
    "validate",
    "vibrational_frequency",
    "default_steps_per_period",
    "make_sim_params",
]

# dt must resolve every characteristic rate by at least this margin
DT_RESOLUTION_BOUND = 0.1
# default safety factor applied on top of the hard bound
DT_SAFETY = 2.0


class InvalidParams(ValueError):
    """A parameter set violates one of the documented constraints."""


@dataclass(frozen=True)
class LatticeParams:
    """Static lattice: well depth u0 (E_r) and pumping-rate scale gamma0 (omega_r).

    ``recoil_kick`` controls whether each pumping event also imparts the
    two-photon momentum noise (absorbed plus spontaneous photon).
    """

    u0: float
    gamma0: float
    recoil_kick: bool = True


@dataclass(frozen=True)
class DriveParams:
    """Two-harmonic phase modulation.

    The modulation is alpha(t) = alpha0*[a_amp*cos(omega*t)
    + (b_amp/4)*cos(2*omega*t - phi)]; the corresponding homogeneous
    force in the co-moving frame is evaluated by :mod:`latticedrift.drive`.
    """

    alpha0: float
    a_amp: float
    b_amp: float
    omega: float
    phi: float = 0.0

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True)
class SimParams:
    """Complete configuration of one stochastic ensemble run."""

    lattice: LatticeParams
    drive: DriveParams
    dt: float
    t_total: float
    t_transient: float = 0.0
    n_traj: int = 1000
    seed: int = 0
    #: (position width, momentum width): z uniform over the position width,
    #: p Gaussian with the momentum width, both centred on zero
    initial_spread: tuple[float, float] = (units.LATTICE_PERIOD, 2.0)
    #: integrator steps between recorded samples; None means one drive period
    record_stride: int | None = None

    def resolved_stride(self) -> int:
        if self.record_stride is not None:
            return self.record_stride
        return max(1, round(self.drive.period / self.dt))

    def n_steps(self) -> int:
        return int(round(self.t_total / self.dt))


def vibrational_frequency(lattice: LatticeParams | float) -> float:
    """Oscillation frequency at a well bottom, Omega_v = 2*sqrt(2*u0).

    Follows from the quadratic expansion of the u0*cos(xi) well with
    xi = 2kz and M = 1/2.  Accepts a LatticeParams or a bare u0.
    """
    u0 = lattice.u0 if isinstance(lattice, LatticeParams) else float(lattice)
    if u0 < 0:
        raise InvalidParams(f"u0 must be nonnegative, got {u0}")
    return 2.0 * math.sqrt(2.0 * u0)


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidParams(f"{name} must be finite, got {value}")


def validate(params: SimParams) -> SimParams:
    """Check every documented invariant; return the params unchanged.

    Raises :class:`InvalidParams` with a message naming the violated
    constraint.  Idempotent: validating twice is a no-op.
    """
    lat, drv = params.lattice, params.drive

    for name, value in (("u0", lat.u0), ("gamma0", lat.gamma0)):
        _check_finite(name, value)
        if value < 0:
            raise InvalidParams(f"{name} must be nonnegative, got {value}")

    for name, value in (
        ("alpha0", drv.alpha0),
        ("a_amp", drv.a_amp),
        ("b_amp", drv.b_amp),
        ("omega", drv.omega),
        ("phi", drv.phi),
    ):
        _check_finite(name, value)
    if drv.omega <= 0:
        raise InvalidParams(f"omega must be positive, got {drv.omega}")
    if drv.alpha0 < 0:
        raise InvalidParams(f"alpha0 must be nonnegative, got {drv.alpha0}")

    _check_finite("dt", params.dt)
    if params.dt <= 0:
        raise InvalidParams("dt must be positive")

    omega_v = vibrational_frequency(lat)
    fastest = max(omega_v, drv.omega)
    if params.dt * fastest > DT_RESOLUTION_BOUND:
        raise InvalidParams(
            "dt too coarse: dt*max(Omega_v, omega) = "
            f"{params.dt * fastest:.4g} exceeds {DT_RESOLUTION_BOUND}"
        )
    if params.dt * lat.gamma0 > DT_RESOLUTION_BOUND:
        raise InvalidParams(
            "jump thinning invalid: gamma0*dt = "
            f"{params.dt * lat.gamma0:.4g} exceeds {DT_RESOLUTION_BOUND}"
        )

    _check_finite("t_total", params.t_total)
    _check_finite("t_transient", params.t_transient)
    if params.t_total < 0:
        raise InvalidParams(f"t_total must be nonnegative, got {params.t_total}")
    if not 0.0 <= params.t_transient <= params.t_total:
        raise InvalidParams(
            f"t_transient must lie in [0, t_total], got {params.t_transient} "
            f"with t_total {params.t_total}"
        )

    if params.n_traj < 1:
        raise InvalidParams(f"n_traj must be at least 1, got {params.n_traj}")
    if params.n_traj >= 1 << 32:
        raise InvalidParams(f"n_traj must fit in 32 bits, got {params.n_traj}")
    if not 0 <= params.seed < 1 << 64:
        raise InvalidParams(f"seed must be an unsigned 64-bit integer, got {params.seed}")

    z_spread, p_spread = params.initial_spread
    for name, value in (("z spread", z_spread), ("p spread", p_spread)):
        _check_finite(name, value)
        if value < 0:
            raise InvalidParams(f"initial {name} must be nonnegative, got {value}")

    if params.record_stride is not None and params.record_stride < 1:
        raise InvalidParams(
            f"record_stride must be at least 1, got {params.record_stride}"
        )

    return params


def default_steps_per_period(lattice: LatticeParams, drive: DriveParams) -> int:
    """Steps per drive period resolving the fastest rate with a 2x margin."""
    fastest = max(vibrational_frequency(lattice), drive.omega, lattice.gamma0)
    return max(2, math.ceil(drive.period * fastest * DT_SAFETY / DT_RESOLUTION_BOUND))


def make_sim_params(
    lattice: LatticeParams,
    drive: DriveParams,
    periods: int,
    n_traj: int = 1000,
    seed: int = 0,
    transient_fraction: float = 0.2,
    steps_per_period: int | None = None,
    initial_spread: tuple[float, float] = (units.LATTICE_PERIOD, 2.0),
) -> SimParams:
    """Build a validated SimParams lasting ``periods`` drive periods.

    dt is an exact divisor of the drive period so samples (one per
    period by default) land on period boundaries.
    """
    spp = steps_per_period or default_steps_per_period(lattice, drive)
    period = drive.period
    params = SimParams(
        lattice=lattice,
        drive=drive,
        dt=period / spp,
        t_total=periods * period,
        t_transient=transient_fraction * periods * period,
        n_traj=n_traj,
        seed=seed,
        initial_spread=initial_spread,
        record_stride=spp,
    )
    return validate(params)
