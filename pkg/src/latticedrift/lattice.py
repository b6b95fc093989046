"""The two-state optical bipotential and its pumping rates.

The two ground sublevels see shifted copies of the same periodic
potential,

    U_plus(xi)  = u0 * (-2 + cos xi)
    U_minus(xi) = u0 * (-2 - cos xi),        xi = 2kz,

so the minima of one state sit at the maxima of the other.  Optical
pumping toggles the sublevel at a position-dependent rate that vanishes
at the state's own well bottom and peaks on its hill tops, which is what
makes the dissipation Sisyphus-like: transfers preferentially happen
hill -> valley.

All functions are pure, accept scalars or numpy arrays for ``xi``, and
are periodic with period 2*pi.
"""

from __future__ import annotations

import enum

import numpy as np

__all__ = ["InternalState", "toggle", "potential", "lattice_force", "pumping_rate"]


class InternalState(enum.IntEnum):
    """Ground sublevel; the integer value doubles as the cos-term sign."""

    PLUS = 1
    MINUS = -1


def toggle(s: InternalState) -> InternalState:
    return InternalState(-int(s))


def potential(xi, s: InternalState, u0: float):
    """Optical potential (E_r) at phase coordinate xi for sublevel s."""
    return u0 * (-2.0 + int(s) * np.cos(xi))


def lattice_force(xi, s: InternalState, u0: float):
    """Force -dU/dz = -2k dU/dxi on sublevel s (recoil units, k=1)."""
    return int(s) * 2.0 * u0 * np.sin(xi)


def pumping_rate(xi, s: InternalState, gamma0: float):
    """Escape rate out of sublevel s at phase coordinate xi.

    PLUS -> MINUS at gamma0*cos^2(xi/2), MINUS -> PLUS at
    gamma0*sin^2(xi/2).  The two rates sum to gamma0 and each vanishes
    at its own state's well bottom.
    """
    if s == InternalState.PLUS:
        return gamma0 * np.cos(0.5 * xi) ** 2
    return gamma0 * np.sin(0.5 * xi) ** 2
