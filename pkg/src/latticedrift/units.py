"""Recoil-unit conventions shared by the whole package.

Everything is dimensionless.  The base units are built from the photon
momentum hbar*k of the lattice light and the atomic mass M:

    length    1/k
    momentum  hbar*k
    energy    E_r = (hbar*k)^2 / 2M   (photon recoil energy)
    time      1/omega_r  with  omega_r = E_r / hbar
    velocity  v_r = hbar*k / M

We fix hbar = 1, k = 1, M = 1/2.  Then E_r = omega_r = 1 and v_r = 2,
so dz/dt = 2p and the kinetic energy is simply p**2 (p in hbar*k,
energies in E_r).  No SI quantities appear anywhere in the core.
"""

HBAR = 1.0
WAVENUMBER = 1.0
MASS = 0.5

RECOIL_ENERGY = 1.0
RECOIL_FREQUENCY = 1.0
RECOIL_VELOCITY = HBAR * WAVENUMBER / MASS  # = 2.0 length/time

#: spatial period of the bipotential in z: U(xi) has period 2*pi in xi = 2kz
LATTICE_PERIOD = 3.141592653589793


def u0_from_light_shift(delta0: float) -> float:
    """Well depth (E_r) from the single-beam light shift (omega_r units).

    For the two-sublevel lattice used here the conventional relation is
    U0 = (2/3) * |delta0|.  This is a configuration helper only; the
    physics modules take u0 directly.
    """
    return (2.0 / 3.0) * abs(delta0)
