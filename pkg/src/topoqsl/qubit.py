"""Qubit states in Bloch coordinates and the two dephasing channels.

All channel math happens on Bloch vectors; the 2x2 matrix form exists
for display and for finite-difference cross-checks.  For the initial
vector v = (vx, vy, vz) and decay factor a = alpha(t):

    fermionic bath:  v -> (a vx, a vy, a^2 vz)
    bosonic bath:    v -> (a vx, a vy, vz)        (pure dephasing)

Both singular values of the dephasing generator coincide,

    kappa = |da/dt| / 2 * sqrt(vx^2 + vy^2 + 4 a^2 vz^2)   (fermionic)
    kappa = |da/dt| / 2 * sqrt(vx^2 + vy^2)                (bosonic)

expressed in the *initial* Bloch components, with the decay factor
carrying all time dependence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bath import BathKind

__all__ = [
    "MAXIMALLY_COHERENT",
    "BlochVector",
    "QubitState",
    "SingularPair",
    "bloch_to_state",
    "evolve",
    "evolve_bosonic",
    "evolve_fermionic",
    "generator_singular_values",
    "purity",
    "relative_purity",
    "state_singular_values",
]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    vx: float
    vy: float
    vz: float

    def __post_init__(self) -> None:
        if self.norm_sq > 1.0 + _NORM_TOL:
            raise ValueError(f"Bloch vector norm exceeds 1: |v|^2 = {self.norm_sq:.17g}")

    @property
    def norm_sq(self) -> float:
        return self.vx * self.vx + self.vy * self.vy + self.vz * self.vz

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)

    def dot(self, other: "BlochVector") -> float:
        return self.vx * other.vx + self.vy * other.vy + self.vz * other.vz


#: Equal-weight coherent state vx = vy = 1/sqrt(2), vz = 0.
MAXIMALLY_COHERENT = BlochVector(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0)


@dataclass(frozen=True)
class QubitState:
    """2x2 Hermitian unit-trace matrix: populations plus the (0,1) entry."""

    p00: float
    p11: float
    re01: float
    im01: float

    def __post_init__(self) -> None:
        if abs(self.p00 + self.p11 - 1.0) > _NORM_TOL:
            raise ValueError("populations must sum to 1")
        if self.p00 < -_NORM_TOL or self.p11 < -_NORM_TOL:
            raise ValueError("populations must be nonnegative")
        if self.p00 * self.p11 < self.re01**2 + self.im01**2 - _NORM_TOL:
            raise ValueError("state is not positive semidefinite")

    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        off = complex(self.re01, self.im01)
        return (
            (complex(self.p00), off),
            (off.conjugate(), complex(self.p11)),
        )


@dataclass(frozen=True)
class SingularPair:
    """Two nonnegative singular values, sorted ascending."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo <= self.hi:
            raise ValueError("singular values must satisfy 0 <= lo <= hi")


def bloch_to_state(v: BlochVector) -> QubitState:
    """Density matrix of v: rho = (1 + v . sigma) / 2."""
    return QubitState(
        p00=0.5 * (1.0 + v.vz),
        p11=0.5 * (1.0 - v.vz),
        re01=0.5 * v.vx,
        im01=-0.5 * v.vy,
    )


def _check_decay_factor(a: float) -> None:
    if not 0.0 <= a <= 1.0 + _NORM_TOL:
        raise ValueError(f"decay factor must lie in [0, 1], got {a:g}")


def evolve_fermionic(v0: BlochVector, a: float) -> BlochVector:
    """Fermionic-bath channel: coherences scale by a, populations by a^2."""
    _check_decay_factor(a)
    return BlochVector(a * v0.vx, a * v0.vy, a * a * v0.vz)


def evolve_bosonic(v0: BlochVector, a: float) -> BlochVector:
    """Bosonic-bath channel: pure dephasing, populations preserved."""
    _check_decay_factor(a)
    return BlochVector(a * v0.vx, a * v0.vy, v0.vz)


def evolve(kind: BathKind, v0: BlochVector, a: float) -> BlochVector:
    if kind is BathKind.FERMIONIC:
        return evolve_fermionic(v0, a)
    return evolve_bosonic(v0, a)


def purity(v: BlochVector) -> float:
    """tr(rho^2) = (1 + |v|^2) / 2, between 1/2 and 1."""
    return 0.5 * (1.0 + v.norm_sq)


def relative_purity(v_tau: BlochVector, v_target: BlochVector) -> float:
    """Overlap functional tr(rho_tau rho_target) / tr(rho_tau^2)."""
    return (1.0 + v_tau.dot(v_target)) / (1.0 + v_tau.norm_sq)


def state_singular_values(v: BlochVector) -> SingularPair:
    """Singular values of the density matrix: (1 -+ |v|) / 2."""
    n = min(v.norm, 1.0)
    return SingularPair(lo=0.5 * (1.0 - n), hi=0.5 * (1.0 + n))


def generator_singular_values(
    kind: BathKind, v0: BlochVector, a: float, a_dot: float
) -> SingularPair:
    """Singular values of d rho/dt; both coincide for pure dephasing."""
    _check_decay_factor(a)
    xy = v0.vx * v0.vx + v0.vy * v0.vy
    if kind is BathKind.FERMIONIC:
        kappa = 0.5 * abs(a_dot) * math.sqrt(xy + 4.0 * a * a * v0.vz * v0.vz)
    else:
        kappa = 0.5 * abs(a_dot) * math.sqrt(xy)
    return SingularPair(lo=kappa, hi=kappa)
