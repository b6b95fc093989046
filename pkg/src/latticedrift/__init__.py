"""Semiclassical Monte Carlo of directed atomic drift in a shaken 1D optical lattice.

A two-sublevel atom diffuses through a spatially symmetric bipotential
under stochastic optical pumping.  Phase-modulating the lattice adds a
zero-mean biharmonic inertial force whose relative phase controls the
temporal symmetries of the system; breaking them rectifies the
diffusion into a net drift.  The package simulates trajectory
ensembles, fits the drift velocity, and sweeps the drive parameters,
all reproducibly from a single master seed.
"""

__version__ = "0.1.0"

from .analysis import (
    SweepResult,
    VelocityFit,
    b_sweep,
    fit_velocity,
    phase_sweep,
    sigma_v,
)
from .drive import (
    ForceSample,
    alpha,
    frame_displacement,
    inertial_force,
    sample_force,
    shift_symmetry_holds,
    time_reversal_symmetry_holds,
)
from .dynamics import AtomState, TrajectoryRecord, run_trajectory, step
from .ensemble import EnsembleResult, run_ensemble
from .lattice import InternalState, lattice_force, potential, pumping_rate, toggle
from .oracle import MixingResult, gillespie_jumps, mixing_displacement, sample_symmetry
from .params import (
    DriveParams,
    InvalidParams,
    LatticeParams,
    SimParams,
    make_sim_params,
    validate,
    vibrational_frequency,
)
from .units import u0_from_light_shift

__all__ = [
    "__version__",
    "AtomState",
    "DriveParams",
    "EnsembleResult",
    "ForceSample",
    "InternalState",
    "InvalidParams",
    "LatticeParams",
    "MixingResult",
    "SimParams",
    "SweepResult",
    "TrajectoryRecord",
    "VelocityFit",
    "alpha",
    "b_sweep",
    "fit_velocity",
    "frame_displacement",
    "gillespie_jumps",
    "inertial_force",
    "lattice_force",
    "make_sim_params",
    "mixing_displacement",
    "phase_sweep",
    "potential",
    "pumping_rate",
    "run_ensemble",
    "run_trajectory",
    "sample_force",
    "sample_symmetry",
    "shift_symmetry_holds",
    "sigma_v",
    "step",
    "time_reversal_symmetry_holds",
    "toggle",
    "u0_from_light_shift",
    "validate",
    "vibrational_frequency",
]
