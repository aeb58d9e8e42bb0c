"""Time evolution of the sector amplitudes.

Three independent routes are provided:

* :func:`evolve_exact` -- per-sector spectral propagator
  ``B(tau) = V exp(-i L tau) V^T B(0)`` built from Jacobi eigenpairs;
* :func:`evolve_rk4` -- classic fixed-step Runge-Kutta on ``i dB/dtau = H B``;
* :func:`dense_oracle` -- one dense Hamiltonian assembled in the tensor
  product space, restricted to the sector kets and diagonalized as a whole
  with LAPACK.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fullspace
from .fockstate import SystemState
from .linalg import jacobi_eigh
from .model import ModelParams, build_block

__all__ = [
    "BlockSpectral",
    "EvolutionPlan",
    "plan",
    "evolve_exact",
    "evolve_exact_many",
    "evolve_rk4",
    "dense_hamiltonian",
    "dense_oracle",
    "MAX_DENSE_DIM",
]

MAX_DENSE_DIM = 10_000


@dataclass(frozen=True)
class BlockSpectral:
    n: int
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class EvolutionPlan:
    """Cached spectral data for every sector of one parameter set.

    ``eigenvalues``/``eigenvectors`` are the per-block results padded to
    four columns (sector -2 gets an inert identity slot) so propagation is a
    single batched contraction.
    """

    params: ModelParams
    blocks: dict[int, BlockSpectral] = field(repr=False)
    taus: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)

    @property
    def sector_indices(self) -> range:
        return self.params.sector_indices

    def propagate(self, amplitudes: np.ndarray, tau: float) -> np.ndarray:
        """Apply ``exp(-i H tau)`` to padded amplitudes; any real ``tau``."""
        v = self.eigenvectors
        c = np.einsum("sjk,sj->sk", v, amplitudes)
        return np.einsum("sjk,sk->sj", v, np.exp(-1j * self.eigenvalues * tau) * c)

    def propagate_many(self, amplitudes: np.ndarray, taus: np.ndarray) -> np.ndarray:
        v = self.eigenvectors
        c = np.einsum("sjk,sj->sk", v, amplitudes)
        phases = np.exp(-1j * self.eigenvalues[None, :, :] * np.asarray(taus, float)[:, None, None])
        return np.einsum("sjk,tsk->tsj", v, phases * c[None])


def _padded(n, w, v):
    if n != -2:
        return w, v
    # embed the 3x3 problem on slots (0, 1, 3); slot 2 is an inert zero mode
    w4 = np.array([w[0], w[1], 0.0, w[2]])
    v4 = np.zeros((4, 4))
    idx = [0, 1, 3]
    v4[np.ix_(idx, [0, 1, 3])] = v
    v4[2, 2] = 1.0
    return w4, v4


def plan(mp: ModelParams, taus=(0.0,)) -> EvolutionPlan:
    """Diagonalize every sector block of ``mp`` once."""
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0 or taus[0] != 0.0:
        raise ValueError("sample times must be a nonempty 1-d sequence starting at 0")
    if np.any(np.diff(taus) <= 0):
        raise ValueError("sample times must be strictly increasing")
    blocks = {}
    ws, vs = [], []
    for n in mp.sector_indices:
        h = build_block(n, mp).matrix
        w, v = jacobi_eigh(h)
        blocks[n] = BlockSpectral(n=n, eigenvalues=w, eigenvectors=v)
        w4, v4 = _padded(n, w, v)
        ws.append(w4)
        vs.append(v4)
    return EvolutionPlan(params=mp, blocks=blocks, taus=taus,
                         eigenvalues=np.array(ws).reshape(-1, 4),
                         eigenvectors=np.array(vs).reshape(-1, 4, 4))


def _check_compatible(s0: SystemState, p: EvolutionPlan):
    if list(s0.sector_indices) != list(p.sector_indices):
        raise ValueError(
            f"state sectors {s0.sector_indices} do not match plan sectors {p.sector_indices}"
        )


def evolve_exact(s0: SystemState, p: EvolutionPlan, tau: float) -> SystemState:
    """State after scaled time ``tau`` (measured from ``s0.tau``)."""
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    _check_compatible(s0, p)
    if tau == 0:
        return s0
    return s0.with_amplitudes(p.propagate(s0.amplitudes, tau), s0.tau + tau)


def evolve_exact_many(s0: SystemState, p: EvolutionPlan, taus=None) -> list[SystemState]:
    """Evaluate the spectral propagator at every requested time at once."""
    _check_compatible(s0, p)
    taus = p.taus if taus is None else np.asarray(taus, dtype=float)
    if np.any(taus < 0):
        raise ValueError("times must be >= 0")
    amps = p.propagate_many(s0.amplitudes, taus)
    amps[taus == 0] = s0.amplitudes
    return [s0.with_amplitudes(a, s0.tau + t) for t, a in zip(taus, amps)]


def _generator(mp: ModelParams) -> np.ndarray:
    hs = []
    for n in mp.sector_indices:
        h = build_block(n, mp).matrix
        if n == -2:
            h4 = np.zeros((4, 4))
            idx = [0, 1, 3]
            h4[np.ix_(idx, idx)] = h
            h = h4
        hs.append(h)
    return np.array(hs).reshape(-1, 4, 4)


def _step_schedule(tau, dt):
    ratio = tau / dt
    n = round(ratio)
    if abs(ratio - n) > 1e-9 * max(1.0, ratio):
        n = math.ceil(ratio)
    n = max(n, 1)
    return n, tau - (n - 1) * dt


def evolve_rk4(s0: SystemState, mp: ModelParams, tau: float, dt: float) -> SystemState:
    """Integrate ``i dB/dtau = H_n B`` with classic fixed-step RK4.

    The last step is shortened so the result lands exactly on
    ``s0.tau + tau``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if list(s0.sector_indices) != list(mp.sector_indices):
        raise ValueError("state sectors do not match the model parameters")
    if tau == 0:
        return s0
    h = _generator(mp)

    def f(b):
        return -1j * np.einsum("sij,sj->si", h, b)

    b = s0.amplitudes.copy()
    n_steps, last = _step_schedule(tau, dt)
    for k in range(n_steps):
        step = dt if k < n_steps - 1 else last
        k1 = f(b)
        k2 = f(b + 0.5 * step * k1)
        k3 = f(b + 0.5 * step * k2)
        k4 = f(b + step * k3)
        b = b + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return s0.with_amplitudes(b, s0.tau + tau)


def dense_hamiltonian(mp: ModelParams) -> np.ndarray:
    """Tensor-space Hamiltonian restricted to the flattened sector kets."""
    n_sectors = len(mp.sector_indices)
    labels = fullspace.flat_labels(mp.n_min, n_sectors)
    if len(labels) > MAX_DENSE_DIM:
        raise ValueError(f"dense dimension {len(labels)} exceeds {MAX_DENSE_DIM}")
    n_photons = max(k for _, _, k in labels) + 1
    h_full = fullspace.tensor_hamiltonian(mp, n_photons)
    idx = [fullspace._tensor_index(lab, n_photons) for lab in labels]
    return h_full[np.ix_(idx, idx)]


def dense_oracle(s0: SystemState, mp: ModelParams, tau: float) -> SystemState:
    """Propagate ``s0`` with one dense diagonalization of the whole space."""
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if list(s0.sector_indices) != list(mp.sector_indices):
        raise ValueError("state sectors do not match the model parameters")
    h = dense_hamiltonian(mp)
    w, v = np.linalg.eigh(h)
    psi = fullspace.flatten(s0)
    psi_t = v @ (np.exp(-1j * w * tau) * (v.conj().T @ psi))
    return fullspace.unflatten(psi_t, s0, s0.tau + tau)
