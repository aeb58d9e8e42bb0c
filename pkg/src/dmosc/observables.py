"""Reduced densities and the four statistical observables.

All sums run over the padded sector array of :class:`SystemState`.  Kets
from different sectors pair up in a reduced density only when they carry
the same photon number, which fixes the sector shift of each coherence::

    rho_eg = sum_n B3(n+1) B1*(n) + B4(n+1) B2*(n)

and so on.  The padded zero slot of sector -2 makes these formulas exact
for the two lowest sectors as well.

Densities are kept unnormalized (their trace is the state norm); the scalar
observables divide by that trace so they stay meaningful when the sector
set does not carry the full initial norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fockstate import SystemState, excitation_expectation, total_norm

__all__ = [
    "IsospinDensity",
    "PairDensity",
    "ObservableRecord",
    "InvalidDensityError",
    "UndefinedObservableError",
    "isospin_density",
    "pair_density",
    "entropy",
    "concurrence",
    "inversion",
    "g2",
    "photon_moments",
    "record",
    "MAX_CONCURRENCE",
]

EIG_TOL = 1e-10
RADICAND_TOL = 1e-12
MAX_CONCURRENCE = math.sqrt(1.5)


class InvalidDensityError(ValueError):
    """Input is not a physical density matrix (beyond roundoff)."""


class UndefinedObservableError(ArithmeticError):
    """Observable has no value for this state (e.g. g2 with no photons)."""


@dataclass(frozen=True)
class IsospinDensity:
    rho_ee: float
    rho_gg: float
    rho_eg: complex

    @property
    def trace(self) -> float:
        return self.rho_ee + self.rho_gg

    @property
    def matrix(self) -> np.ndarray:
        """``[[ee, eg], [ge, gg]]`` (upper state first)."""
        return np.array([[self.rho_ee, self.rho_eg],
                         [np.conj(self.rho_eg), self.rho_gg]], dtype=complex)

    def bloch(self) -> tuple[float, float, float]:
        """Bloch vector of the trace-normalized density."""
        t = self.trace
        return (2.0 * self.rho_eg.real / t, 2.0 * self.rho_eg.imag / t,
                (self.rho_ee - self.rho_gg) / t)


@dataclass(frozen=True)
class PairDensity:
    """Dirac-spin / isospin density over ``|-g->, |+g->, |-g+>, |+g+>``."""

    matrix: np.ndarray = field(repr=False)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True)
class ObservableRecord:
    tau: float
    entropy: float
    concurrence: float
    inversion: float
    g2: float
    norm: float
    excitation: float

    def as_row(self) -> tuple[float, ...]:
        return (self.tau, self.entropy, self.concurrence, self.inversion, self.g2,
                self.norm, self.excitation)


def _shifted(x, y, shift):
    """``sum_n x(n + shift) * conj(y(n))`` over overlapping rows."""
    if shift >= len(x):
        return 0j
    if shift == 0:
        return complex(np.sum(x * np.conj(y)))
    return complex(np.sum(x[shift:] * np.conj(y[:-shift])))


def isospin_density(s: SystemState) -> IsospinDensity:
    b = s.amplitudes
    p = np.abs(b) ** 2
    ee = float(np.sum(p[:, 2]) + np.sum(p[:, 3]))
    gg = float(np.sum(p[:, 0]) + np.sum(p[:, 1]))
    eg = _shifted(b[:, 2], b[:, 0], 1) + _shifted(b[:, 3], b[:, 1], 1)
    return IsospinDensity(rho_ee=ee, rho_gg=gg, rho_eg=eg)


def pair_density(s: SystemState) -> PairDensity:
    b = s.amplitudes
    b1, b2, b3, b4 = b.T
    rho = np.zeros((4, 4), dtype=complex)
    for j in range(4):
        rho[j, j] = np.sum(np.abs(b[:, j]) ** 2)
    rho[0, 1] = _shifted(b1, b2, 1)
    rho[0, 2] = np.conj(_shifted(b3, b1, 1))
    rho[0, 3] = _shifted(b1, b4, 0)
    rho[1, 2] = np.conj(_shifted(b3, b2, 2))
    rho[1, 3] = np.conj(_shifted(b4, b2, 1))
    rho[2, 3] = _shifted(b3, b4, 1)
    upper = np.triu_indices(4, 1)
    rho[upper[1], upper[0]] = np.conj(rho[upper])
    return PairDensity(matrix=rho)


def _xlogx(x):
    return 0.0 if x == 0.0 else x * math.log(x)


def entropy(d: IsospinDensity) -> float:
    """Von Neumann entropy (nats) from the Bloch-vector eigenvalues."""
    t = d.trace
    if not t > 0:
        raise InvalidDensityError(f"density has nonpositive trace {t}")
    r = math.sqrt((2.0 * d.rho_eg.real) ** 2 + (2.0 * d.rho_eg.imag) ** 2
                  + (d.rho_ee - d.rho_gg) ** 2) / t
    lams = []
    for lam in (0.5 + 0.5 * r, 0.5 - 0.5 * r):
        if lam < -EIG_TOL or lam > 1.0 + EIG_TOL:
            raise InvalidDensityError(f"eigenvalue {lam} outside [0, 1]")
        lams.append(min(max(lam, 0.0), 1.0))
    return -sum(_xlogx(x) for x in lams) + 0.0


def concurrence(d: PairDensity) -> float:
    """``sqrt(2 sum_{i != j} (rho_ii rho_jj - rho_ij rho_ji))`` of the
    trace-normalized pair density; spans ``[0, sqrt(3/2)]``."""
    rho = d.matrix
    t = d.trace
    if not t > 0:
        raise InvalidDensityError(f"density has nonpositive trace {t}")
    diag = np.real(np.diag(rho))
    total = 0.0
    for i in range(4):
        for j in range(4):
            if i != j:
                total += diag[i] * diag[j] - (rho[i, j] * rho[j, i]).real
    radicand = 2.0 * total / (t * t)
    if radicand < 0:
        if radicand < -RADICAND_TOL:
            raise InvalidDensityError(f"negative concurrence radicand {radicand}")
        radicand = 0.0
    return math.sqrt(radicand)


def inversion(d: IsospinDensity) -> float:
    return (d.rho_ee - d.rho_gg) / d.trace


def photon_moments(s: SystemState) -> tuple[float, float]:
    """Unnormalized ``<n>`` and ``<n(n-1)>``."""
    n = np.asarray(s.sector_indices, dtype=float)
    photons = np.stack([n + 2, n + 3, n + 1, n + 2], axis=1)
    p = np.abs(s.amplitudes) ** 2
    return float(np.sum(photons * p)), float(np.sum(photons * (photons - 1) * p))


def g2(s: SystemState) -> float:
    """Normalized second-order correlation ``<n(n-1)> / <n>^2``."""
    mean, fact2 = photon_moments(s)
    if mean <= 0.0:
        raise UndefinedObservableError(f"g2 undefined at tau={s.tau}: mean photon number is zero")
    return fact2 * total_norm(s) / (mean * mean)


def record(s: SystemState) -> ObservableRecord:
    iso = isospin_density(s)
    return ObservableRecord(
        tau=s.tau,
        entropy=entropy(iso),
        concurrence=concurrence(pair_density(s)),
        inversion=inversion(iso),
        g2=g2(s),
        norm=total_norm(s),
        excitation=excitation_expectation(s),
    )
