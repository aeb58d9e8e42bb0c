"""Coherent-state amplitudes and the sector-decomposed system state."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams, SectorPolicy, _poisson_tail

__all__ = [
    "CoherentAmplitudes",
    "SystemState",
    "coherent_amplitudes",
    "initial_state",
    "total_norm",
    "excitation_expectation",
]


@dataclass(frozen=True)
class CoherentAmplitudes:
    alpha: complex
    q: np.ndarray = field(repr=False)
    tail_mass: float


def coherent_amplitudes(alpha: complex, n_max: int) -> CoherentAmplitudes:
    """Fock amplitudes ``q_0 .. q_{n_max}`` of the coherent state ``|alpha>``.

    Uses the recurrence ``q_{k+1} = q_k * alpha / sqrt(k+1)`` seeded with
    ``exp(-|alpha|^2 / 2)``, which never forms ``alpha^k`` or ``k!``.
    ``tail_mass`` is the probability above ``n_max``, summed directly rather
    than as ``1 - sum |q|^2`` to avoid cancellation.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    alpha = complex(alpha)
    q = np.empty(n_max + 1, dtype=complex)
    q[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for k in range(n_max):
        q[k + 1] = q[k] * alpha / math.sqrt(k + 1)
    tail = _poisson_tail(abs(alpha) ** 2, n_max)
    q.setflags(write=False)
    return CoherentAmplitudes(alpha=alpha, q=q, tail_mass=tail)


@dataclass(frozen=True)
class SystemState:
    """Amplitudes ``B_j(n, tau)`` of every sector at scaled time ``tau``.

    ``amplitudes`` is a ``(n_sectors, 4)`` complex array, row ``k`` holding
    sector ``n = n_min + k``.  The three-state sector ``n = -2`` is stored
    padded: its missing ket ``|-,g+,-1>`` occupies column 2 and is always
    zero, so the four-column formulas apply to every row unchanged.
    """

    tau: float
    amplitudes: np.ndarray = field(repr=False)
    n_min: int
    sector_policy: SectorPolicy

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[1] != 4:
            raise ValueError(f"amplitudes must have shape (n_sectors, 4), got {amps.shape}")
        if self.n_min == -2 and amps.shape[0] and amps[0, 2] != 0:
            raise ValueError("sector -2 has no third component")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "sector_policy", SectorPolicy(self.sector_policy))

    @property
    def sector_indices(self) -> range:
        return range(self.n_min, self.n_min + self.amplitudes.shape[0])

    def sector(self, n: int) -> np.ndarray:
        """Amplitude vector of sector ``n`` in its own dimension (3 or 4)."""
        if n not in self.sector_indices:
            raise KeyError(n)
        row = self.amplitudes[n - self.n_min]
        if n == -2:
            return row[[0, 1, 3]]
        return row.copy()

    @property
    def sectors(self) -> dict[int, np.ndarray]:
        return {n: self.sector(n) for n in self.sector_indices}

    def sector_norms(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def with_amplitudes(self, amplitudes: np.ndarray, tau: float) -> "SystemState":
        return SystemState(tau=tau, amplitudes=amplitudes, n_min=self.n_min,
                           sector_policy=self.sector_policy)

    @classmethod
    def from_sectors(cls, sectors: dict[int, np.ndarray], tau: float = 0.0,
                     sector_policy: SectorPolicy = SectorPolicy.FULL) -> "SystemState":
        """Build a state from a ``{n: vector}`` map with contiguous keys."""
        keys = sorted(sectors)
        if keys != list(range(keys[0], keys[0] + len(keys))):
            raise ValueError("sector labels must be contiguous")
        amps = np.zeros((len(keys), 4), dtype=complex)
        for k, n in enumerate(keys):
            v = np.asarray(sectors[n], dtype=complex)
            expected = 3 if n == -2 else 4
            if v.shape != (expected,):
                raise ValueError(f"sector {n} needs {expected} components, got {v.shape}")
            if n == -2:
                amps[k, [0, 1, 3]] = v
            else:
                amps[k] = v
        return cls(tau=tau, amplitudes=amps, n_min=keys[0], sector_policy=sector_policy)


def initial_state(mp: ModelParams) -> SystemState:
    """Both two-level systems in their lower state, field in ``|alpha>``.

    Photon number ``N`` lands on the first ket ``|-,g-,N>`` of sector
    ``N - 2``.  Under ``SectorPolicy.PAPER`` the ``N = 0, 1`` components are
    dropped without renormalizing.
    """
    coh = coherent_amplitudes(mp.alpha, mp.n_max)
    ns = np.asarray(mp.sector_indices)
    amps = np.zeros((len(ns), 4), dtype=complex)
    amps[:, 0] = coh.q[ns + 2]
    state = SystemState(tau=0.0, amplitudes=amps, n_min=mp.n_min, sector_policy=mp.sector_policy)
    if mp.sector_policy is SectorPolicy.PAPER and total_norm(state) == 0.0:
        raise ValueError(
            "PaperAnsatz cannot represent this initial field: all weight sits in "
            "photon numbers 0 and 1 (e.g. alpha = 0); use FullSectors"
        )
    return state


def total_norm(s: SystemState) -> float:
    return float(np.sum(np.abs(s.amplitudes) ** 2))


def excitation_expectation(s: SystemState) -> float:
    """Expectation of the conserved excitation number ``I = n + 2``."""
    weights = np.asarray(s.sector_indices, dtype=float) + 2.0
    return float(weights @ s.sector_norms())
