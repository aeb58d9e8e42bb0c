"""Generalized Jaynes-Cummings dynamics of the 2+1 Dirac-Moshinsky oscillator
coupled to an isospin field in a magnetic field.

The usual pipeline is::

    mp = ModelParams(lambda1=0.3, lambda2=0.2, omega=0.2, alpha=3.0)
    s0 = initial_state(mp)
    p = plan(mp)
    s = evolve_exact(s0, p, 10.0)
    record(s)
"""
from .dynamics import (BlockSpectral, EvolutionPlan, dense_hamiltonian, dense_oracle,
                       evolve_exact, evolve_exact_many, evolve_rk4, plan)
from .fockstate import (CoherentAmplitudes, SystemState, coherent_amplitudes,
                        excitation_expectation, initial_state, total_norm)
from .linalg import jacobi_eigh
from .model import (BlockHamiltonian, ModelParams, PhysicalParams, SectorPolicy, auto_nmax,
                    build_block, coefficients, derive_model_params)
from .observables import (InvalidDensityError, IsospinDensity, ObservableRecord, PairDensity,
                          UndefinedObservableError, concurrence, entropy, g2, inversion,
                          isospin_density, pair_density, record)

__version__ = "0.1.0"

__all__ = [
    "BlockHamiltonian", "BlockSpectral", "CoherentAmplitudes", "EvolutionPlan",
    "InvalidDensityError", "IsospinDensity", "ModelParams", "ObservableRecord",
    "PairDensity", "PhysicalParams", "SectorPolicy", "SystemState",
    "UndefinedObservableError", "auto_nmax", "build_block", "coefficients",
    "coherent_amplitudes", "concurrence", "dense_hamiltonian", "dense_oracle",
    "derive_model_params", "entropy", "evolve_exact", "evolve_exact_many", "evolve_rk4",
    "excitation_expectation", "g2", "initial_state", "inversion", "isospin_density",
    "jacobi_eigh", "pair_density", "plan", "record", "total_norm",
]
