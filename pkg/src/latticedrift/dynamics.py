"""Single-trajectory jump-diffusion integrator.

Deterministic motion in the state-dependent potential plus the inertial
force is advanced with a second-order velocity-Verlet step; optical
pumping is a Bernoulli thinning of the position-dependent rate (one
uniform per step, valid because validation enforces rate*dt <= 0.1);
each jump toggles the sublevel and optionally adds photon-recoil
momentum noise as two independent uniform kicks on [-1, 1] hbar*k.

:func:`step` is the plain-Python reference for a single step;
:func:`run_trajectory` drives the compiled kernel and is what the
ensemble layer uses.  Both consume the same RNG stream contract: one
uniform per step, two more per jump when recoil is enabled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import drive as drive_mod
from ._kernels import trajectory_kernel
from .lattice import InternalState
from .params import SimParams

__all__ = ["AtomState", "TrajectoryRecord", "step", "run_trajectory"]


@dataclass(frozen=True)
class AtomState:
    """Position (1/k), momentum (hbar*k), sublevel and time of one atom."""

    z: float
    p: float
    s: InternalState
    t: float = 0.0


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled output of one trajectory."""

    times: np.ndarray
    z: np.ndarray
    p: np.ndarray
    jump_count: int
    final: AtomState
    jump_times: np.ndarray | None = None


def _force_terms(params: SimParams) -> tuple[float, float, float, float]:
    fa, fb = drive_mod.force_amplitudes(params.drive)
    phi = drive_mod._phi_canonical(params.drive.phi)
    return fa, fb, params.drive.omega, phi


def step(state: AtomState, params: SimParams, rng: np.random.Generator) -> AtomState:
    """One integrator step; reference implementation of the kernel body."""
    fa, fb, omega, phi = _force_terms(params)
    u0 = params.lattice.u0
    gamma0 = params.lattice.gamma0
    dt = params.dt
    z, p, s, t = state.z, state.p, int(state.s), state.t

    c_lat = 2.0 * u0
    f = s * c_lat * np.sin(2.0 * z) + fa * np.cos(omega * t) + fb * np.cos(2.0 * omega * t - phi)
    p_half = p + 0.5 * dt * f
    z = z + 2.0 * dt * p_half
    t1 = t + dt
    f = s * c_lat * np.sin(2.0 * z) + fa * np.cos(omega * t1) + fb * np.cos(2.0 * omega * t1 - phi)
    p = p_half + 0.5 * dt * f

    rate = gamma0 * (np.cos(z) ** 2 if s > 0 else np.sin(z) ** 2)
    if rng.random() < rate * dt:
        s = -s
        if params.lattice.recoil_kick:
            p += (2.0 * rng.random() - 1.0) + (2.0 * rng.random() - 1.0)

    return AtomState(z=z, p=p, s=InternalState(s), t=t1)


def run_trajectory(
    init: AtomState,
    params: SimParams,
    rng: np.random.Generator,
    record_jumps: int = 0,
    kick_sign: float = 1.0,
) -> TrajectoryRecord:
    """Integrate until t_total, sampling every record_stride steps.

    A deterministic function of (init, params, rng state).  ``kick_sign``
    flips the recorded recoil kicks and exists for parity-mirrored
    ensembles; the kick distribution is symmetric so it never changes
    the statistics.
    """
    n_steps = params.n_steps()
    stride = params.resolved_stride()
    n_rec = n_steps // stride

    out_z = np.empty(n_rec + 1)
    out_p = np.empty(n_rec + 1)
    out_z[0] = init.z
    out_p[0] = init.p
    jump_buf = np.empty(record_jumps, dtype=np.float64)

    fa, fb, omega, phi = _force_terms(params)
    z, p, s, n_jumps = trajectory_kernel(
        float(init.z),
        float(init.p),
        int(init.s),
        float(init.t),
        n_steps,
        params.dt,
        params.lattice.u0,
        params.lattice.gamma0,
        params.lattice.recoil_kick,
        kick_sign,
        fa,
        fb,
        omega,
        phi,
        stride,
        out_z,
        out_p,
        jump_buf,
        rng,
    )
    times = init.t + np.arange(n_rec + 1) * (stride * params.dt)
    final = AtomState(z=z, p=p, s=InternalState(s), t=init.t + n_steps * params.dt)
    recorded = jump_buf[: min(n_jumps, record_jumps)] if record_jumps else None
    return TrajectoryRecord(
        times=times, z=out_z, p=out_p, jump_count=n_jumps, final=final, jump_times=recorded
    )
