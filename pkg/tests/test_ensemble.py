import numpy as np
import pytest

from latticedrift._kernels import DYNAMICS_STREAM, substream
from latticedrift.dynamics import run_trajectory
from latticedrift.ensemble import (
    ResourceLimit,
    draw_initial_state,
    run_ensemble,
    write_cm_table,
)
from latticedrift.params import (
    DriveParams,
    LatticeParams,
    SimParams,
    validate,
    vibrational_frequency,
)


def sim(n_traj=8, periods=10, seed=42, alpha0=8.0):
    lat = LatticeParams(u0=100.0, gamma0=12.5)
    drv = DriveParams(alpha0=alpha0, a_amp=0.5, b_amp=0.5,
                      omega=0.87 * vibrational_frequency(lat), phi=np.pi / 2)
    return validate(SimParams(
        lattice=lat, drive=drv, dt=drv.period / 145,
        t_total=periods * drv.period, t_transient=0.2 * periods * drv.period,
        n_traj=n_traj, seed=seed, record_stride=145,
    ))


def test_single_trajectory_ensemble():
    p = sim(n_traj=1)
    res = run_ensemble(p, workers=1)
    init = draw_initial_state(p, 0, 0)
    rec = run_trajectory(init, p, substream(p.seed, 0, 0, DYNAMICS_STREAM))
    assert np.array_equal(res.cm, rec.z)
    assert np.all(res.cm_stderr == 0.0)


def test_worker_count_does_not_change_results():
    p = sim(n_traj=12)
    results = [run_ensemble(p, workers=w) for w in (1, 2, 8)]
    for other in results[1:]:
        assert np.array_equal(results[0].cm, other.cm)
        assert np.array_equal(results[0].traj_z, other.traj_z)
        assert np.array_equal(results[0].traj_p, other.traj_p)
        assert np.array_equal(results[0].jump_counts, other.jump_counts)


def test_seed_stability_under_ensemble_growth():
    small = run_ensemble(sim(n_traj=5), workers=2)
    large = run_ensemble(sim(n_traj=6), workers=2)
    assert np.array_equal(small.traj_z, large.traj_z[:5])
    assert np.array_equal(small.traj_p, large.traj_p[:5])


def test_different_seeds_differ():
    a = run_ensemble(sim(seed=1), workers=1)
    b = run_ensemble(sim(seed=2), workers=1)
    assert not np.array_equal(a.cm, b.cm)


def test_stderr_scales_as_inverse_sqrt_n():
    base = run_ensemble(sim(n_traj=50, periods=30, seed=7), workers=2)
    quad = run_ensemble(sim(n_traj=200, periods=30, seed=7), workers=2)
    ratio = quad.cm_stderr[1:] / base.cm_stderr[1:]
    assert abs(ratio.mean() - 0.5) < 0.1


def test_mirror_parity_maps_initial_conditions():
    p = sim()
    plain = draw_initial_state(p, 0, 3)
    mirrored = draw_initial_state(p, 0, 3, mirror=True)
    assert mirrored.z == -plain.z
    assert mirrored.p == -plain.p
    assert mirrored.s == plain.s


def test_point_index_gives_independent_streams():
    p = sim()
    a = run_ensemble(p, point=0, workers=1)
    b = run_ensemble(p, point=1, workers=1)
    assert not np.array_equal(a.cm, b.cm)


def test_resource_limit_names_request():
    p = sim(n_traj=2**31, periods=1000)
    with pytest.raises(ResourceLimit) as err:
        run_ensemble(p, workers=1)
    assert str(2**31) in str(err.value)
    assert "t_total" in str(err.value)


def test_cm_table_round_trip(tmp_path):
    p = sim(n_traj=4, periods=5)
    res = run_ensemble(p, workers=1)
    path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_cm_table(res, str(path_a), ["header"])
    write_cm_table(res, str(path_b), ["header"])
    assert path_a.read_bytes() == path_b.read_bytes()
    lines = path_a.read_text().splitlines()
    assert lines[0] == "# header"
    assert lines[1] == "t,cm,stderr"
    assert len(lines) == 2 + len(res.times)
