import numpy as np
import pytest

from latticedrift.drive import force_amplitudes, inertial_force
from latticedrift.oracle import (
    NonConvergence,
    gillespie_jumps,
    mixing_displacement,
    sample_symmetry,
)
from latticedrift.params import DriveParams, InvalidParams, vibrational_frequency

# small-drive operating point for the deterministic rectification oracle
MIX_U0 = 50.0
MIX_DAMP = 2.0
MIX_ALPHA0 = 0.5
MIX_OMEGA = 0.7 * vibrational_frequency(MIX_U0)


def mix_drive(a, b, phi=0.0):
    return DriveParams(alpha0=MIX_ALPHA0, a_amp=a, b_amp=b, omega=MIX_OMEGA, phi=phi)


def test_mixing_vanishes_without_either_harmonic():
    # rectified displacement needs both harmonics
    assert abs(mixing_displacement(MIX_U0, MIX_DAMP, mix_drive(0.0, 0.05)).displacement) < 1e-8
    assert abs(mixing_displacement(MIX_U0, MIX_DAMP, mix_drive(0.05, 0.0)).displacement) < 1e-8


def test_mixing_quadratic_in_first_harmonic():
    amps = np.logspace(-2, -1, 9)
    dz = [mixing_displacement(MIX_U0, MIX_DAMP, mix_drive(a, 0.03)).displacement for a in amps]
    slope = np.polyfit(np.log(amps), np.log(np.abs(dz)), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.05)


def test_mixing_linear_in_second_harmonic():
    amps = np.logspace(-2, -1, 9)
    dz = [mixing_displacement(MIX_U0, MIX_DAMP, mix_drive(0.03, b)).displacement for b in amps]
    slope = np.polyfit(np.log(amps), np.log(np.abs(dz)), 1)[0]
    assert slope == pytest.approx(1.0, abs=0.05)


def test_mixing_independent_of_initial_condition():
    d = mix_drive(0.05, 0.05)
    a = mixing_displacement(MIX_U0, MIX_DAMP, d, z0=0.0, p0=0.0)
    b = mixing_displacement(MIX_U0, MIX_DAMP, d, z0=0.1, p0=0.05)
    assert abs(a.displacement - b.displacement) < 1e-6
    assert a.strobe_distance < 1e-9


def test_mixing_requires_damping():
    with pytest.raises(InvalidParams, match="gamma_damp"):
        mixing_displacement(MIX_U0, 0.0, mix_drive(0.05, 0.05))


def test_mixing_reports_non_convergence():
    # vanishing damping cannot settle onto a periodic orbit
    with pytest.raises(NonConvergence, match="stroboscopic"):
        mixing_displacement(MIX_U0, 1e-9, mix_drive(0.05, 0.05))


def test_gillespie_constant_rate_mean():
    rng = np.random.default_rng(31)
    gamma = 2.0
    times = gillespie_jumps(lambda t: gamma, 6000.0, gamma, rng)
    intervals = np.diff(times)
    n = len(intervals)
    assert n > 10_000
    sem = intervals.std(ddof=1) / np.sqrt(n)
    assert abs(intervals.mean() - 1.0 / gamma) < 3.0 * sem


def test_gillespie_zero_rate():
    rng = np.random.default_rng(0)
    assert len(gillespie_jumps(lambda t: 0.0, 100.0, 0.0, rng)) == 0


def test_gillespie_rejects_unbounded_rate():
    rng = np.random.default_rng(0)
    with pytest.raises(InvalidParams, match="rate_max"):
        gillespie_jumps(lambda t: 1.0, 10.0, float("inf"), rng)
    with pytest.raises(InvalidParams, match="outside"):
        gillespie_jumps(lambda t: 2.0, 1000.0, 1.0, rng)


def test_gillespie_tracks_sinusoidal_rate():
    rng = np.random.default_rng(55)
    base, mod, t_total = 5.0, 0.5, 2000.0
    rate = lambda t: base * (1.0 + mod * np.sin(0.013 * t))
    times = gillespie_jumps(rate, t_total, base * (1 + mod), rng)
    edges = np.linspace(0.0, t_total, 21)
    counts, _ = np.histogram(times, bins=edges)
    grid = np.linspace(0.0, t_total, 40001)
    dense = rate(grid)
    for k in range(20):
        mask = (grid >= edges[k]) & (grid < edges[k + 1])
        expected = np.trapezoid(dense[mask], grid[mask])
        assert abs(counts[k] - expected) < 3.0 * np.sqrt(expected)


def test_sample_symmetry_pure_harmonics():
    omega = 1.7
    period = 2 * np.pi / omega
    f = lambda t: np.cos(omega * t)
    assert sample_symmetry(f, period, "shift") < 1e-12
    assert sample_symmetry(f, period, "reversal") < 1e-12


def test_sample_symmetry_biharmonic_force():
    d_broken = DriveParams(alpha0=8.0, a_amp=0.5, b_amp=0.5, omega=3.0, phi=np.pi / 2)
    fa, fb = force_amplitudes(d_broken)
    viol = sample_symmetry(lambda t: inertial_force(t, d_broken), d_broken.period, "reversal")
    assert viol > 0.1 * (abs(fa) + abs(fb))

    d_even = DriveParams(alpha0=8.0, a_amp=0.5, b_amp=0.5, omega=3.0, phi=0.0)
    assert sample_symmetry(lambda t: inertial_force(t, d_even), d_even.period, "reversal") <= 1e-12


def test_sample_symmetry_validation():
    with pytest.raises(InvalidParams, match="grid"):
        sample_symmetry(np.cos, 2 * np.pi, "shift", n=1)
    with pytest.raises(InvalidParams, match="kind"):
        sample_symmetry(np.cos, 2 * np.pi, "mirror")
