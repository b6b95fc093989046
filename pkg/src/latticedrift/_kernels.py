"""Compiled inner loops and the counter-based RNG stream layout.

Per-trajectory randomness comes from a Philox counter-based generator
keyed by (master seed, sweep point, trajectory index, stream id).  Each
trajectory owns its streams exclusively, so results are bit-identical
for a fixed seed no matter how work is scheduled across threads, and
adding trajectories never perturbs existing ones.

Stream ids: 0 draws the initial condition, 1 feeds the step loop (one
uniform per step for the jump test, two more per jump for the recoil
kicks; the consumption order is intrinsic, so it is reproducible by
construction).
"""

from __future__ import annotations

import numpy as np
from numba import njit

INIT_STREAM = 0
DYNAMICS_STREAM = 1

_POINT_BITS = 24
_TRAJ_BITS = 32
_STREAM_BITS = 8


def substream(seed: int, point: int, traj: int, stream: int) -> np.random.Generator:
    """Independent Generator for one (sweep point, trajectory, purpose)."""
    if not 0 <= point < 1 << _POINT_BITS:
        raise ValueError(f"sweep point index out of range: {point}")
    if not 0 <= traj < 1 << _TRAJ_BITS:
        raise ValueError(f"trajectory index out of range: {traj}")
    if not 0 <= stream < 1 << _STREAM_BITS:
        raise ValueError(f"stream id out of range: {stream}")
    key = np.array(
        [seed, (point << (_TRAJ_BITS + _STREAM_BITS)) | (traj << _STREAM_BITS) | stream],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


@njit(cache=True, nogil=True)
def trajectory_kernel(
    z,
    p,
    s,
    t0,
    n_steps,
    dt,
    u0,
    gamma0,
    recoil,
    kick_sign,
    fa,
    fb,
    omega,
    phi,
    record_stride,
    out_z,
    out_p,
    jump_times,
    rng,
):
    """Advance one trajectory by n_steps; fill sample arrays in place.

    One step = velocity-Verlet (half kick, drift, half kick) in the
    state-dependent potential plus the biharmonic force, followed by a
    Bernoulli jump test with probability rate*dt.  On a jump the
    sublevel toggles and, with recoil enabled, the momentum receives
    kick_sign*(q1+q2) with q1, q2 uniform on [-1, 1].

    out_z/out_p slot 0 belongs to the caller; slot k receives the state
    after k*record_stride steps.  Jump times are recorded while there
    is capacity; the returned count is always complete.
    """
    c_lat = 2.0 * u0
    n_jumps = 0
    cap = jump_times.shape[0]
    for i in range(n_steps):
        t_a = t0 + i * dt
        t_b = t0 + (i + 1) * dt
        f = s * c_lat * np.sin(2.0 * z) + fa * np.cos(omega * t_a) + fb * np.cos(2.0 * omega * t_a - phi)
        p_half = p + 0.5 * dt * f
        z = z + 2.0 * dt * p_half
        f = s * c_lat * np.sin(2.0 * z) + fa * np.cos(omega * t_b) + fb * np.cos(2.0 * omega * t_b - phi)
        p = p_half + 0.5 * dt * f
        if s > 0:
            rate = gamma0 * np.cos(z) ** 2
        else:
            rate = gamma0 * np.sin(z) ** 2
        if rng.random() < rate * dt:
            s = -s
            if n_jumps < cap:
                jump_times[n_jumps] = t_b
            n_jumps += 1
            if recoil:
                q = (2.0 * rng.random() - 1.0) + (2.0 * rng.random() - 1.0)
                p = p + kick_sign * q
        if (i + 1) % record_stride == 0:
            k = (i + 1) // record_stride
            out_z[k] = z
            out_p[k] = p
    return z, p, s, n_jumps


@njit(cache=True, nogil=True)
def damped_drive_rk4(z, p, n_steps, dt, t0, u0, gamma_damp, fa, fb, omega, phi, rec_from, rec):
    """Classic RK4 for the deterministic damped driven well.

    dz/dt = 2p,  dp/dt = -2 u0 sin(2z) - gamma_damp p + F(t), i.e. the
    MINUS-sublevel potential (well bottom at z = 0) with viscous
    damping.  Records z into ``rec`` for steps >= rec_from.
    """
    for i in range(n_steps):
        t = t0 + i * dt
        th = t + 0.5 * dt
        t1 = t + dt

        k1z = 2.0 * p
        k1p = -2.0 * u0 * np.sin(2.0 * z) - gamma_damp * p + fa * np.cos(omega * t) + fb * np.cos(2.0 * omega * t - phi)
        z2 = z + 0.5 * dt * k1z
        p2 = p + 0.5 * dt * k1p
        k2z = 2.0 * p2
        k2p = -2.0 * u0 * np.sin(2.0 * z2) - gamma_damp * p2 + fa * np.cos(omega * th) + fb * np.cos(2.0 * omega * th - phi)
        z3 = z + 0.5 * dt * k2z
        p3 = p + 0.5 * dt * k2p
        k3z = 2.0 * p3
        k3p = -2.0 * u0 * np.sin(2.0 * z3) - gamma_damp * p3 + fa * np.cos(omega * th) + fb * np.cos(2.0 * omega * th - phi)
        z4 = z + dt * k3z
        p4 = p + dt * k3p
        k4z = 2.0 * p4
        k4p = -2.0 * u0 * np.sin(2.0 * z4) - gamma_damp * p4 + fa * np.cos(omega * t1) + fb * np.cos(2.0 * omega * t1 - phi)

        z = z + dt * (k1z + 2.0 * k2z + 2.0 * k3z + k4z) / 6.0
        p = p + dt * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        if i >= rec_from:
            rec[i - rec_from] = z
    return z, p
