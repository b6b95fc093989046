"""Independent reference computations used by the test suite.

Nothing here shares code paths with the stochastic integrator: the
harmonic-mixing oracle integrates a deterministic damped equation of
motion with RK4, the jump-time reference is an exact thinning sampler,
and the symmetry checker samples force values on a grid.  They exist so
that the main implementation can be checked against something that
fails independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._kernels import damped_drive_rk4
from .drive import force_amplitudes, _phi_canonical
from .params import DriveParams, InvalidParams

__all__ = [
    "MixingResult",
    "NonConvergence",
    "mixing_displacement",
    "gillespie_jumps",
    "sample_symmetry",
]

#: stroboscopic distance below which the periodic attractor counts as reached
ATTRACTOR_TOL = 1e-9
SETTLE_PERIODS = 200
EXTRA_PERIODS = 300
STEPS_PER_PERIOD = 1024


class NonConvergence(RuntimeError):
    """The damped driven motion failed to settle onto a periodic orbit."""


@dataclass(frozen=True)
class MixingResult:
    """Static displacement of the oscillation centre under biharmonic drive."""

    a_amp: float
    b_amp: float
    phi: float
    displacement: float
    strobe_distance: float
    periods_used: int


def mixing_displacement(
    u0: float,
    gamma_damp: float,
    d: DriveParams,
    z0: float = 0.0,
    p0: float = 0.0,
) -> MixingResult:
    """Time-averaged displacement of the driven oscillation centre.

    Integrates a single atom in the MINUS-sublevel well (bottom at
    z = 0) with viscous damping -gamma_damp*p and the closed-form
    biharmonic force, waits for the periodic attractor, then returns
    the one-period average of z.  Rectification through the well
    anharmonicity makes this displacement quadratic in the amplitude of
    the omega component and linear in the 2*omega component.

    Intended for the small-drive regime (peak force well below the
    maximum lattice force 2*u0); outside it the attractor search may
    legitimately fail, which is reported as :class:`NonConvergence`.
    """
    if gamma_damp <= 0:
        raise InvalidParams(f"gamma_damp must be positive, got {gamma_damp}")
    if u0 <= 0:
        raise InvalidParams(f"u0 must be positive, got {u0}")
    if d.omega <= 0:
        raise InvalidParams(f"omega must be positive, got {d.omega}")

    period = d.period
    dt = period / STEPS_PER_PERIOD
    fa, fb = force_amplitudes(d)
    phi = _phi_canonical(d.phi)
    empty = np.empty(0)

    z, p = damped_drive_rk4(
        z0, p0, SETTLE_PERIODS * STEPS_PER_PERIOD, dt, 0.0,
        u0, gamma_damp, fa, fb, d.omega, phi, SETTLE_PERIODS * STEPS_PER_PERIOD, empty,
    )

    periods = SETTLE_PERIODS
    strobe = math.inf
    for _ in range(EXTRA_PERIODS):
        t0 = periods * period
        z1, p1 = damped_drive_rk4(
            z, p, STEPS_PER_PERIOD, dt, t0,
            u0, gamma_damp, fa, fb, d.omega, phi, STEPS_PER_PERIOD, empty,
        )
        periods += 1
        strobe = math.hypot(z1 - z, p1 - p)
        z, p = z1, p1
        if strobe < ATTRACTOR_TOL:
            break
    else:
        raise NonConvergence(
            f"no periodic attractor after {periods} drive periods "
            f"(stroboscopic distance {strobe:.3g})"
        )

    # one more period, recorded, averaged with Simpson's rule
    rec = np.empty(STEPS_PER_PERIOD)
    t0 = periods * period
    z1, p1 = damped_drive_rk4(
        z, p, STEPS_PER_PERIOD, dt, t0,
        u0, gamma_damp, fa, fb, d.omega, phi, 0, rec,
    )
    samples = np.concatenate(([z], rec))
    weights = np.ones(STEPS_PER_PERIOD + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    displacement = float((dt / 3.0) * (weights @ samples) / period)

    return MixingResult(
        a_amp=d.a_amp,
        b_amp=d.b_amp,
        phi=d.phi,
        displacement=displacement,
        strobe_distance=strobe,
        periods_used=periods + 1,
    )


def gillespie_jumps(
    rate_fn: Callable[[float], float],
    t_total: float,
    rate_max: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Exact jump times of an inhomogeneous Poisson process by thinning.

    Candidate times arrive as a homogeneous Poisson process at
    ``rate_max``; each is accepted with probability rate_fn(t)/rate_max.
    ``rate_fn`` must stay within [0, rate_max]; a violation is an error,
    not a silent bias.
    """
    if not math.isfinite(rate_max) or rate_max < 0:
        raise InvalidParams(f"rate_max must be finite and nonnegative, got {rate_max}")
    if rate_max == 0.0:
        return np.empty(0)

    times = []
    t = 0.0
    while True:
        t += rng.exponential(1.0 / rate_max)
        if t >= t_total:
            break
        r = rate_fn(t)
        if r < 0 or r > rate_max:
            raise InvalidParams(
                f"rate_fn({t:.6g}) = {r:.6g} outside [0, rate_max={rate_max:.6g}]"
            )
        if rng.random() < r / rate_max:
            times.append(t)
    return np.asarray(times)


def sample_symmetry(
    f: Callable[[np.ndarray], np.ndarray],
    period: float,
    kind: str,
    n: int = 1000,
) -> float:
    """Largest violation of a temporal symmetry of f on an n-point grid.

    kind="shift" measures max |f(t + T/2) + f(t)|, kind="reversal"
    measures max |f(t) - f(-t)|, both over one period.
    """
    if n < 2:
        raise InvalidParams(f"grid size must be at least 2, got {n}")
    t = np.arange(n) * (period / n)
    if kind == "shift":
        return float(np.max(np.abs(f(t + 0.5 * period) + f(t))))
    if kind == "reversal":
        return float(np.max(np.abs(f(t) - f(-t))))
    raise InvalidParams(f"unknown symmetry kind: {kind!r}")
