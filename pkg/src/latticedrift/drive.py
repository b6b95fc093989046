"""Phase modulation, the co-moving-frame inertial force, and its symmetries.

The lattice is shaken by phase-modulating one beam:

    alpha(t) = alpha0 * [ A cos(omega t) + (B/4) cos(2 omega t - phi) ].

In the frame where the lattice is static the atom feels the homogeneous
inertial force

    F(t) = -(M / 2k) * d^2 alpha / dt^2
         = (M omega^2 alpha0 / 2k) * [ A cos(omega t) + B cos(2 omega t - phi) ],

a zero-mean biharmonic with the relative phase phi as the single knob
controlling its temporal symmetries:

 * shift symmetry (a half-period shift of the force flips its sign)
   holds iff one harmonic is absent;
 * reversal symmetry  F(t) = F(-t)  holds iff sin(phi) = 0 (or the
   2-omega component is absent).

When both are broken the stochastic dynamics acquires a net drift.

phi is canonicalised with fmod(phi, 2*pi) before use so that inputs
differing by full turns produce bit-identical forces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import units
from .params import DriveParams

__all__ = [
    "ForceSample",
    "alpha",
    "inertial_force",
    "force_amplitudes",
    "sample_force",
    "shift_symmetry_holds",
    "time_reversal_symmetry_holds",
    "frame_displacement",
]

TWO_PI = 2.0 * math.pi

#: tolerance on sin(phi) below which the reversal symmetry counts as exact
PHASE_TOL = 1e-12


def _phi_canonical(phi: float) -> float:
    return math.fmod(phi, TWO_PI)


def alpha(t, d: DriveParams):
    """Phase modulation alpha(t) in radians; period 2*pi/omega."""
    phi = _phi_canonical(d.phi)
    return d.alpha0 * (
        d.a_amp * np.cos(d.omega * t)
        + 0.25 * d.b_amp * np.cos(2.0 * d.omega * t - phi)
    )


def force_amplitudes(d: DriveParams, m: float = units.MASS) -> tuple[float, float]:
    """Closed-form amplitudes (fa, fb) of the two force harmonics.

    F(t) = fa*cos(omega t) + fb*cos(2 omega t - phi).  These exact
    coefficients are what the integrator consumes; no numerical
    differentiation of alpha is ever involved.
    """
    scale = m * d.omega**2 * d.alpha0 / (2.0 * units.WAVENUMBER)
    return scale * d.a_amp, scale * d.b_amp


def inertial_force(t, d: DriveParams, m: float = units.MASS):
    """Inertial force in the co-moving frame at time t (recoil units)."""
    fa, fb = force_amplitudes(d, m)
    phi = _phi_canonical(d.phi)
    return fa * np.cos(d.omega * t) + fb * np.cos(2.0 * d.omega * t - phi)


@dataclass(frozen=True)
class ForceSample:
    """One sampled value of the driving force."""

    t: float
    f: float


def sample_force(times, d: DriveParams, m: float = units.MASS) -> list[ForceSample]:
    """Tabulate the inertial force at the given times."""
    return [ForceSample(t=float(t), f=float(inertial_force(t, d, m))) for t in np.atleast_1d(times)]


def shift_symmetry_holds(d: DriveParams) -> bool:
    """True iff shifting by half the force's fundamental period flips its sign.

    Any monochromatic cosine is antisymmetric under a half-period shift
    of itself (T/2 for the omega component alone, T/4 for the 2*omega
    component alone), so the symmetry holds exactly iff at most one
    harmonic is present; the mixed force admits no sign-flipping shift.
    """
    return d.alpha0 * d.a_amp * d.b_amp == 0.0


def time_reversal_symmetry_holds(d: DriveParams) -> bool:
    """True iff F(t) = F(-t) about t = 0.

    The omega term is always even; the 2*omega term is even iff
    sin(phi) = 0 (within a 1e-12 tolerance) or absent altogether.
    """
    if d.alpha0 * d.b_amp == 0.0:
        return True
    return abs(math.sin(_phi_canonical(d.phi))) <= PHASE_TOL


def frame_displacement(t, d: DriveParams):
    """Offset alpha(t)/2k between the lab and co-moving frames.

    Reporting helper only: the simulation itself runs entirely in the
    co-moving frame.  The offset oscillates with zero mean and a
    sub-wavelength amplitude, far below the accumulated drift it would
    be compared against.
    """
    return alpha(t, d) / (2.0 * units.WAVENUMBER)
