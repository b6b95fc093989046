import math

import numpy as np
import pytest

from latticedrift.drive import (
    alpha,
    force_amplitudes,
    frame_displacement,
    inertial_force,
    sample_force,
    shift_symmetry_holds,
    time_reversal_symmetry_holds,
)
from latticedrift.params import DriveParams
from latticedrift.units import MASS, WAVENUMBER

from _oracles import periodic_average, second_difference

FIG_LIKE = DriveParams(alpha0=10.0, a_amp=0.75, b_amp=1.0, omega=1.3, phi=0.0)


def drv(**kw):
    base = dict(alpha0=8.0, a_amp=0.5, b_amp=0.5, omega=24.6, phi=0.0)
    base.update(kw)
    return DriveParams(**base)


def test_alpha_reference_values():
    assert alpha(0.0, FIG_LIKE) == pytest.approx(10.0, rel=1e-15)
    d0 = drv(alpha0=0.0)
    assert np.all(alpha(np.linspace(0, 10, 101), d0) == 0.0)
    d = drv(a_amp=1.0, b_amp=0.0, phi=1.234)
    assert alpha(d.period / 2, d) == pytest.approx(-d.alpha0, rel=1e-13)


def test_alpha_periodicity():
    d = drv(phi=0.7)
    t = np.linspace(0, 3, 500)
    assert np.allclose(alpha(t + d.period, d), alpha(t, d), rtol=0, atol=1e-11 * d.alpha0)


def test_inertial_force_closed_form_at_zero():
    for phi in (0.0, 0.4, np.pi / 2):
        d = drv(a_amp=0.6, b_amp=0.9, phi=phi)
        expect = (MASS * d.omega**2 * d.alpha0 / (2 * WAVENUMBER)) * (
            d.a_amp + d.b_amp * math.cos(phi)
        )
        assert inertial_force(0.0, d) == pytest.approx(expect, rel=1e-12)


def test_inertial_force_matches_second_derivative_of_alpha():
    # F = -(M/2k) * alpha''(t), checked by central differences
    d = drv(a_amp=0.7, b_amp=0.8, phi=0.9)
    t = np.linspace(0.0, d.period, 200)
    fd = -(MASS / (2 * WAVENUMBER)) * second_difference(lambda x: alpha(x, d), t, 2e-5)
    f = inertial_force(t, d)
    scale = np.max(np.abs(f))
    assert np.max(np.abs(f - fd)) / scale < 1e-6


def test_inertial_force_zero_mean():
    for phi in (0.0, 1.1, np.pi / 2):
        d = drv(phi=phi)
        fa, fb = force_amplitudes(d)
        avg = periodic_average(lambda t: inertial_force(t, d), d.period)
        assert abs(avg) <= 1e-12 * (abs(fa) + abs(fb))


def test_inertial_force_periodicity():
    d = drv(phi=2.2)
    fa, fb = force_amplitudes(d)
    t = np.linspace(0, 5 * d.period, 700)
    assert np.allclose(
        inertial_force(t + d.period, d), inertial_force(t, d),
        rtol=0, atol=1e-11 * (abs(fa) + abs(fb)),
    )


def test_shift_symmetry_predicate():
    assert shift_symmetry_holds(drv(a_amp=1.0, b_amp=0.0))
    assert shift_symmetry_holds(drv(a_amp=0.0, b_amp=1.0))
    assert shift_symmetry_holds(drv(alpha0=0.0))
    assert not shift_symmetry_holds(DriveParams(10.0, 0.75, 1.0, 1.3, 0.0))


def test_shift_symmetry_sampling_agreement():
    t = np.arange(1000) / 1000.0
    for d, holds in [
        (drv(a_amp=1.0, b_amp=0.0, phi=0.3), True),
        (drv(a_amp=0.75, b_amp=1.0, phi=0.3), False),
    ]:
        ts = t * d.period
        viol = np.max(np.abs(inertial_force(ts + d.period / 2, d) + inertial_force(ts, d)))
        fa, fb = force_amplitudes(d)
        assert (viol <= 1e-9 * (abs(fa) + abs(fb) + 1)) == holds


def test_time_reversal_predicate():
    assert time_reversal_symmetry_holds(drv(phi=0.0))
    assert time_reversal_symmetry_holds(drv(phi=np.pi))
    assert time_reversal_symmetry_holds(drv(phi=-np.pi))
    assert not time_reversal_symmetry_holds(drv(phi=np.pi / 2))
    assert not time_reversal_symmetry_holds(drv(phi=(np.pi / 2) * 3))
    # absent 2-omega component makes the force even regardless of phi
    assert time_reversal_symmetry_holds(drv(b_amp=0.0, phi=1.0))
    assert time_reversal_symmetry_holds(drv(alpha0=0.0, phi=1.0))


def test_time_reversal_sampling_agreement():
    t = np.linspace(-4, 4, 1001)
    d_even = drv(phi=np.pi)
    fa, fb = force_amplitudes(d_even)
    viol = np.max(np.abs(inertial_force(t, d_even) - inertial_force(-t, d_even)))
    assert viol <= 1e-9 * (abs(fa) + abs(fb))
    d_odd = drv(phi=np.pi / 2)
    viol = np.max(np.abs(inertial_force(t, d_odd) - inertial_force(-t, d_odd)))
    assert viol > 1e-3 * (abs(fa) + abs(fb))


def test_time_reversal_exact_at_phi_zero():
    d = drv(phi=0.0)
    t = np.linspace(-7, 7, 1001)
    assert np.array_equal(inertial_force(t, d), inertial_force(-t, d))


def test_phi_full_turn_is_bit_identical():
    t = np.linspace(0, 3, 400)
    for phi in (0.0, 0.5, np.pi / 2, 3 * np.pi / 2):
        d1 = drv(phi=phi)
        d2 = drv(phi=phi + 2 * np.pi)
        assert np.array_equal(inertial_force(t, d1), inertial_force(t, d2))
        assert np.array_equal(alpha(t, d1), alpha(t, d2))
        assert shift_symmetry_holds(d1) == shift_symmetry_holds(d2)
        assert time_reversal_symmetry_holds(d1) == time_reversal_symmetry_holds(d2)


def test_sample_force_tabulation():
    d = drv(phi=0.3)
    t = np.linspace(0, d.period, 7)
    samples = sample_force(t, d)
    assert len(samples) == 7
    assert all(s.f == inertial_force(s.t, d) for s in samples)


def test_frame_displacement():
    t = np.linspace(0, 2 * FIG_LIKE.period, 4001)
    disp = frame_displacement(t, FIG_LIKE)
    # modulation depth 10 rad peaks at t=0: offset 10/2k = 5 length units
    assert frame_displacement(0.0, FIG_LIKE) == pytest.approx(5.0, rel=1e-15)
    assert np.max(np.abs(disp)) == pytest.approx(5.0, rel=1e-6)
    assert np.all(frame_displacement(t, drv(alpha0=0.0)) == 0.0)
    avg = periodic_average(lambda x: frame_displacement(x, FIG_LIKE), FIG_LIKE.period)
    assert abs(avg) <= 1e-12 * FIG_LIKE.alpha0
