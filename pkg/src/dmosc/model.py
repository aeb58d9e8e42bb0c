"""Model parameters and per-sector block Hamiltonians.

The total Hamiltonian (Dirac oscillator in anti-JC form plus a linearly
coupled isospin, both at resonance ``mc^2 = gamma = Omega``) conserves the
excitation number ``I = n + (sz_iso - sz_dirac)/2``.  Each eigenvalue of
``I`` spans a small invariant subspace labelled by ``n = I - 2``::

    n >= -1 :  |-,g-,n+2>, |+,g-,n+3>, |-,g+,n+1>, |+,g+,n+2>    (4 states)
    n == -2 :  |-,g-,0>,   |+,g-,1>,                |+,g+,0>      (3 states)

All couplings and energies are dimensionless, in units of ``lambda``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SectorPolicy",
    "PhysicalParams",
    "ModelParams",
    "BlockHamiltonian",
    "auto_nmax",
    "coefficients",
    "derive_model_params",
    "build_block",
    "sector_labels",
]

# Tail of the coherent-state photon distribution left outside the truncation.
TAIL_TARGET = 1e-14


class SectorPolicy(str, enum.Enum):
    """Which excitation sectors the state space carries.

    ``FULL`` keeps the two lowest sectors (I = 0 and I = 1) so that the
    coherent initial state stays normalized.  ``PAPER`` starts at n = 0 and
    keeps the resulting norm deficit ``|q0|^2 + |q1|^2``.
    """

    FULL = "full"
    PAPER = "paper"


@dataclass(frozen=True)
class PhysicalParams:
    """Physical inputs in natural units (c = hbar = 1).

    ``gamma`` is the isospin splitting; the model only supports the
    resonant case ``gamma == m`` (i.e. ``mc^2``), which is the default.
    """

    m: float
    omega: float
    xi: float = 0.0
    chi: float = 0.0
    gamma: float | None = None

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got m={self.m}")
        if not self.omega > 0:
            raise ValueError(f"oscillator frequency must be positive, got omega={self.omega}")
        if not 1.0 + self.xi > 0:
            raise ValueError(
                f"invalid frequency regime: 1 + xi = {1.0 + self.xi} <= 0 "
                "(shifted frequency must stay positive)"
            )
        if self.gamma is not None and not math.isclose(self.gamma, self.m, rel_tol=1e-12):
            raise ValueError("only the resonant case gamma == m c^2 is supported")

    @property
    def shifted_omega(self) -> float:
        """Oscillator frequency shifted by half the cyclotron frequency."""
        return self.omega * (1.0 + self.xi)

    @property
    def eta(self) -> float:
        return 2.0 * math.sqrt(self.m * self.shifted_omega)

    @property
    def time_scale(self) -> float:
        """``lambda``: the unit in which couplings and time are measured."""
        return self.eta * math.sqrt(self.m * self.omega)


def auto_nmax(alpha: complex) -> int:
    """Smallest safe truncation for a coherent state of amplitude ``alpha``.

    Starts from ``max(40, ceil(|a|^2 + 8|a|))`` and grows until the Poisson
    tail above the cutoff drops below ``TAIL_TARGET``.
    """
    mean = abs(alpha) ** 2
    n = max(40, math.ceil(mean + 8.0 * abs(alpha)))
    while _poisson_tail(mean, n) >= TAIL_TARGET:
        n += 1
    return n


def _poisson_tail(mean: float, n: int) -> float:
    # sum_{k > n} e^-mean mean^k / k!, accumulated in log space to avoid
    # under/overflow for large n
    if mean == 0.0:
        return 0.0
    k = n + 1
    log_term = -mean + k * math.log(mean) - math.lgamma(k + 1)
    total = 0.0
    while True:
        term = math.exp(log_term)
        total += term
        if k > mean and term < 1e-18 * max(total, 1e-300):
            return total
        k += 1
        log_term += math.log(mean) - math.log(k)


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless inputs of the dynamics.

    Parameters
    ----------
    lambda1, lambda2 : float
        Dirac-oscillator and isospin couplings in units of ``lambda``.
    omega : float
        Resonant splitting ``Omega = mc^2 = gamma`` in units of ``lambda``.
    alpha : complex
        Coherent amplitude of the initial field.
    n_max : int, optional
        Highest Fock index of the initial coherent state; chosen by
        :func:`auto_nmax` when omitted.
    sector_policy : SectorPolicy
    """

    lambda1: float = 0.3
    lambda2: float = 0.3
    omega: float = 0.2
    alpha: complex = 3.0
    n_max: int | None = None
    sector_policy: SectorPolicy = SectorPolicy.FULL

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "omega"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ValueError("coupling magnitudes lambda1, lambda2 must be >= 0")
        if not np.isfinite(abs(self.alpha)):
            raise ValueError(f"alpha must be finite, got {self.alpha}")
        object.__setattr__(self, "sector_policy", SectorPolicy(self.sector_policy))
        if self.n_max is None:
            object.__setattr__(self, "n_max", auto_nmax(self.alpha))
        elif int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"n_max must be a nonnegative integer, got {self.n_max}")
        else:
            object.__setattr__(self, "n_max", int(self.n_max))
        if self.sector_policy is SectorPolicy.PAPER and self.n_max < 2:
            raise ValueError("PaperAnsatz needs n_max >= 2 (no sector with n >= 0 otherwise)")

    @property
    def n_min(self) -> int:
        return -2 if self.sector_policy is SectorPolicy.FULL else 0

    @property
    def sector_indices(self) -> range:
        """Sector labels carried by the state: ``n_min .. n_max - 2``."""
        return range(self.n_min, self.n_max - 1)

    def replace(self, **changes) -> "ModelParams":
        from dataclasses import replace

        return replace(self, **changes)


def derive_model_params(p: PhysicalParams, alpha: complex = 3.0, n_max: int | None = None,
                        sector_policy: SectorPolicy = SectorPolicy.FULL) -> ModelParams:
    """Map physical parameters onto the dimensionless couplings.

    >>> mp = derive_model_params(PhysicalParams(m=1.0, omega=1.0, chi=2.0))
    >>> mp.lambda1, mp.lambda2, mp.omega
    (0.5, 0.5, 0.5)
    """
    lam = p.time_scale
    lambda1 = 2.0 * math.sqrt(1.0 + p.xi) / p.eta
    lambda2 = p.chi / (p.eta * math.sqrt(p.m * p.omega))
    return ModelParams(lambda1=lambda1 / lam, lambda2=abs(lambda2) / lam, omega=p.m / lam,
                       alpha=alpha, n_max=n_max, sector_policy=sector_policy)


def coefficients(n: int, lambda1: float, lambda2: float) -> tuple[float, float, float, float]:
    """Couplings ``a(n), b(n), c(n), d(n)`` of sector ``n``.

    ``b(n) = a(n-1)`` and ``d(n) = c(n-1)``; both vanish at ``n = -2``.
    """
    up = math.sqrt(n + 3)
    down = math.sqrt(n + 2) if n >= -2 else math.nan
    return lambda1 * up, lambda1 * down, lambda2 * up, lambda2 * down


@dataclass(frozen=True)
class BlockHamiltonian:
    n: int
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_block(n: int, mp: ModelParams) -> BlockHamiltonian:
    """Real symmetric generator of sector ``n`` (``i dB/dtau = H B``)."""
    if n < -2:
        raise ValueError(f"sector index must be >= -2, got {n}")
    if n < mp.n_min:
        raise ValueError(f"sector {n} is not part of the {mp.sector_policy.value} sector set")
    a, b, c, d = coefficients(n, mp.lambda1, mp.lambda2)
    w = 2.0 * mp.omega
    if n == -2:
        h = np.array([[-w, a, 0.0],
                      [a, 0.0, c],
                      [0.0, c, w]])
    else:
        h = np.array([[-w, a, d, 0.0],
                      [a, 0.0, 0.0, c],
                      [d, 0.0, 0.0, b],
                      [0.0, c, b, w]])
    h.setflags(write=False)
    return BlockHamiltonian(n=n, matrix=h)


def sector_labels(n: int) -> list[tuple[int, int, int]]:
    """Basis kets of sector ``n`` as ``(dirac, isospin, photons)``.

    Spin labels are 0 for the lower state (``-``) and 1 for the upper (``+``).
    """
    if n == -2:
        return [(0, 0, 0), (1, 0, 1), (1, 1, 0)]
    return [(0, 0, n + 2), (1, 0, n + 3), (0, 1, n + 1), (1, 1, n + 2)]
