"""Reference computations in the plain tensor-product space.

Nothing here uses the sector decomposition for the physics: the
Hamiltonian is assembled from spin and ladder operators with ``np.kron``
and reduced densities are formed by explicit index summation.  These are
the independent checks for the block propagator and the closed-form
reduced-density sums.

Tensor ordering is ``dirac (x) isospin (x) field``; spin index 0 is the
lower state.
"""
from __future__ import annotations

import numpy as np

from .fockstate import SystemState
from .model import ModelParams, sector_labels

__all__ = [
    "flat_labels",
    "tensor_hamiltonian",
    "flatten",
    "unflatten",
    "embed",
    "pair_density_explicit",
    "isospin_density_explicit",
    "photon_distribution",
]

_RAISE = np.array([[0.0, 0.0], [1.0, 0.0]])
_SZ = np.diag([-1.0, 1.0])


def flat_labels(n_min: int, n_sectors: int) -> list[tuple[int, int, int]]:
    """Kets of the flattened sector basis, sector by sector."""
    out = []
    for n in range(n_min, n_min + n_sectors):
        out.extend(sector_labels(n))
    return out


def tensor_hamiltonian(mp: ModelParams, n_photons: int) -> np.ndarray:
    """Dense Hamiltonian on ``C^2 (x) C^2 (x) C^n_photons``.

    ``l1 (a^+ s+ + a s-) + Omega sz + l2 (a t+ + a^+ t-) + Omega tz`` with
    ``s`` the Dirac spin and ``t`` the isospin.
    """
    a = np.diag(np.sqrt(np.arange(1.0, n_photons)), 1)
    ad = a.T
    i2 = np.eye(2)
    i_f = np.eye(n_photons)
    sp, sm = _RAISE, _RAISE.T
    h = mp.lambda1 * (np.kron(np.kron(sp, i2), ad) + np.kron(np.kron(sm, i2), a))
    h += mp.omega * np.kron(np.kron(_SZ, i2), i_f)
    h += mp.lambda2 * (np.kron(np.kron(i2, sp), a) + np.kron(np.kron(i2, sm), ad))
    h += mp.omega * np.kron(np.kron(i2, _SZ), i_f)
    return h


def _tensor_index(label, n_photons):
    d, i, k = label
    return (2 * d + i) * n_photons + k


def _active(s: SystemState) -> list[tuple[int, int]]:
    # (row, col) slots of the padded amplitude array that hold real kets
    slots = []
    for r, n in enumerate(s.sector_indices):
        cols = (0, 1, 3) if n == -2 else (0, 1, 2, 3)
        slots.extend((r, c) for c in cols)
    return slots


def flatten(s: SystemState) -> np.ndarray:
    """Concatenate sector vectors (dimension 3 or 4 each) into one vector."""
    return np.array([s.amplitudes[r, c] for r, c in _active(s)], dtype=complex)


def unflatten(vec: np.ndarray, like: SystemState, tau: float) -> SystemState:
    amps = np.zeros_like(like.amplitudes)
    for (r, c), x in zip(_active(like), vec):
        amps[r, c] = x
    return like.with_amplitudes(amps, tau)


def embed(s: SystemState) -> np.ndarray:
    """State as a ``(2, 2, n_photons)`` array ``psi[dirac, isospin, k]``."""
    labels = flat_labels(s.n_min, len(s.sector_indices))
    n_photons = max(k for _, _, k in labels) + 1
    psi = np.zeros((2, 2, n_photons), dtype=complex)
    for (d, i, k), x in zip(labels, flatten(s)):
        psi[d, i, k] += x
    return psi


def pair_density_explicit(s: SystemState) -> np.ndarray:
    """Trace out the field by looping over every index.

    Row/column order is ``|-g->, |+g->, |-g+>, |+g+>``, i.e. index
    ``dirac + 2 * isospin``.
    """
    psi = embed(s)
    n_photons = psi.shape[2]
    rho = np.zeros((4, 4), dtype=complex)
    for d1 in range(2):
        for i1 in range(2):
            for d2 in range(2):
                for i2 in range(2):
                    acc = 0j
                    for k in range(n_photons):
                        acc += psi[d1, i1, k] * np.conj(psi[d2, i2, k])
                    rho[d1 + 2 * i1, d2 + 2 * i2] = acc
    return rho


def isospin_density_explicit(s: SystemState) -> np.ndarray:
    """2x2 isospin density, index 0 = lower (``g``), 1 = upper (``e``)."""
    pair = pair_density_explicit(s)
    rho = np.zeros((2, 2), dtype=complex)
    for i1 in range(2):
        for i2 in range(2):
            for d in range(2):
                rho[i1, i2] += pair[d + 2 * i1, d + 2 * i2]
    return rho


def photon_distribution(s: SystemState) -> np.ndarray:
    psi = embed(s)
    return np.sum(np.abs(psi) ** 2, axis=(0, 1))
