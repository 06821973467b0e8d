"""Environment coefficients and the dephasing decay machinery.

A topological qubit coupled to an Ohmic-like environment (spectral
density J(w) ~ w^s with a Gaussian frequency cutoff Gamma0) dephases
through the scalar decay factor

    alpha(t) = exp(-2 B^2 |beta| I_s(t)),

where B is the magnetic coupling, beta a time-independent coefficient
fixed by the bath kind, and I_s(t) the decay integral

    I_s(t) = 2 Gamma0^(s-1) Gamma((s-1)/2)
             * (1 - 1F1((s-1)/2; 1/2; -Gamma0^2 t^2 / 4)),     s != 1.

The prefactor Gamma((s-1)/2) has a pole at s = 1 while the product
stays finite; the removable singularity is filled by the equivalent
Ohmic form

    I_1(t) = Gamma0^2 t^2 * 2F2({1,1}; {3/2,2}; -Gamma0^2 t^2 / 4).

Both branches equal the bath kernel
4 * int_0^inf dw w^(s-2) e^(-w^2/Gamma0^2) (1 - cos(w t)), so I_s(t)
is continuous in s and nonnegative, and its time derivative has the
single closed form (valid for every s > 0)

    dI_s/dt = 2 Gamma0^(s+1) t Gamma((s+1)/2)
              * 1F1((s+1)/2; 3/2; -Gamma0^2 t^2 / 4).

For s > 2 the derivative changes sign at finite time: the decay factor
partially recovers (information backflow) and saturates at a nonzero
plateau (coherence trapping).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import specfun
from .errors import UnsupportedDimensionError
from .specfun import DEFAULT_SERIES_CONTROL, SeriesControl

__all__ = [
    "BathKind",
    "BathParams",
    "ConformalDimension",
    "FermiGammaConvention",
    "bath_coefficient",
    "bath_coefficient_bosonic",
    "bath_coefficient_fermionic",
    "decay_factor",
    "decay_factor_derivative",
    "decay_integral",
    "decay_integral_derivative",
    "decay_state",
]


class BathKind(Enum):
    FERMIONIC = "fermionic"
    BOSONIC = "bosonic"


class FermiGammaConvention(Enum):
    """Gamma argument entering the fermionic coefficient.

    HALF_ARG uses Gamma((s+1)/2), parallel to the Gamma((s-1)/2) of the
    decay integral; FULL_ARG uses Gamma(s+1).  The two agree at s = 1
    and only rescale |beta_F| elsewhere.
    """

    HALF_ARG = "half"
    FULL_ARG = "full"


@dataclass(frozen=True)
class BathParams:
    """Scalar parameters of one environment instance.

    Times are measured in units of 1/gamma0; s is restricted to (0, 4],
    the range over which the series controls have been validated.
    n_sc and epsilon only enter the bosonic coefficient.
    """

    kind: BathKind
    s: float
    b_field: float
    gamma0: float = 1.0
    n_sc: float = 1.0
    epsilon: float = 1.0
    fermi_gamma_convention: FermiGammaConvention = FermiGammaConvention.HALF_ARG

    def __post_init__(self) -> None:
        if not self.s > 0.0:
            raise ValueError("s must be > 0")
        if self.s > 4.0:
            raise ValueError("s must be <= 4")
        if not self.gamma0 > 0.0:
            raise ValueError("gamma0 must be > 0")
        if not self.b_field >= 0.0:
            raise ValueError("b_field must be >= 0")
        if not self.n_sc > 0.0:
            raise ValueError("n_sc must be > 0")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be > 0")


_INTEGER_DIMENSION_TOL = 1e-9


@dataclass(frozen=True)
class ConformalDimension:
    """Conformal dimension Delta = (s+4)/2 of the bosonic dual theory."""

    delta: float

    @classmethod
    def from_ohmic_exponent(cls, s: float) -> "ConformalDimension":
        return cls((s + 4.0) / 2.0)

    @property
    def nearest_integer(self) -> int:
        return round(self.delta)

    @property
    def is_integer(self) -> bool:
        # routes near-integer Delta to the factorial branch; the generic
        # branch hits a Gamma(3-Delta) pole times a sin(pi Delta) zero there
        return abs(self.delta - round(self.delta)) < _INTEGER_DIMENSION_TOL


def bath_coefficient_fermionic(params: BathParams) -> float:
    """Time-independent fermionic coefficient beta_F < 0.

    beta_F = -4 pi / Gamma(arg) * gamma0^-(s+1), with arg = (s+1)/2
    under HALF_ARG (default) or s+1 under FULL_ARG.
    """
    if params.fermi_gamma_convention is FermiGammaConvention.HALF_ARG:
        arg = (params.s + 1.0) / 2.0
    else:
        arg = params.s + 1.0
    return -4.0 * math.pi / specfun.gamma(arg) * params.gamma0 ** -(params.s + 1.0)


def bath_coefficient_bosonic(params: BathParams) -> float:
    """Time-independent bosonic coefficient beta_B < 0.

    With Delta = (s+4)/2, eps the UV length cutoff and N_sc the dual
    degrees-of-freedom count:

        beta_B = -N_sc^2 Gamma(3-Delta) eps^(2(Delta-4)) sin(pi Delta)
                 / (4 pi^2 Gamma(Delta-2) 2^(2 Delta - 5))

    for non-integer Delta, and the factorial form

        beta_B = -N_sc^2 eps^(2(Delta-4)) / (4 pi (Delta-3)! 2^(2 Delta - 5))

    for integer Delta >= 3 (the two agree in the limit).  Integer
    Delta < 3 is rejected: (Delta-3)! is undefined there.
    """
    dim = ConformalDimension.from_ohmic_exponent(params.s)
    nsc2 = params.n_sc * params.n_sc
    if dim.is_integer:
        n = dim.nearest_integer
        if n < 3:
            raise UnsupportedDimensionError(
                f"integer conformal dimension {n} < 3 has no defined coefficient"
            )
        return -(nsc2 * params.epsilon ** (2 * (n - 4))) / (
            4.0 * math.pi * specfun.factorial(n - 3) * 2.0 ** (2 * n - 5)
        )
    d = dim.delta
    return (
        -(nsc2 * specfun.gamma(3.0 - d) * params.epsilon ** (2.0 * (d - 4.0)))
        / (4.0 * math.pi**2 * specfun.gamma(d - 2.0) * 2.0 ** (2.0 * d - 5.0))
        * specfun.sin_pi(d)
    )


def bath_coefficient(params: BathParams) -> float:
    """beta for the bath kind of ``params``; negative throughout (0, 4]."""
    if params.kind is BathKind.FERMIONIC:
        return bath_coefficient_fermionic(params)
    return bath_coefficient_bosonic(params)


# Width of the removable singularity guard around s = 1.  Inside it the
# Ohmic 2F2 branch is numerically exact; outside, Gamma((s-1)/2) is still
# far from its pole.
_OHMIC_GUARD = 1e-6


def _validate_st(s: float, gamma0: float, t: float) -> None:
    if not s > 0.0:
        raise ValueError("s must be > 0")
    if s > 4.0:
        raise ValueError("s must be <= 4")
    if not gamma0 > 0.0:
        raise ValueError("gamma0 must be > 0")
    if not t >= 0.0:
        raise ValueError("t must be >= 0")


def decay_integral(
    s: float, gamma0: float, t: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL
) -> float:
    """Decay integral I_s(t); nonnegative, I_s(0) = 0."""
    _validate_st(s, gamma0, t)
    if t == 0.0:
        return 0.0
    gt2 = (gamma0 * t) ** 2
    z = -0.25 * gt2
    if abs(s - 1.0) < _OHMIC_GUARD:
        return gt2 * specfun.hyp2f2(1.0, 1.0, 1.5, 2.0, z, ctl)
    half = 0.5 * (s - 1.0)
    return 2.0 * gamma0 ** (s - 1.0) * specfun.gamma(half) * (
        1.0 - specfun.hyp1f1(half, 0.5, z, ctl)
    )


def decay_integral_derivative(
    s: float, gamma0: float, t: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL
) -> float:
    """dI_s/dt in closed form; valid for every s in (0, 4], including s = 1."""
    _validate_st(s, gamma0, t)
    if t == 0.0:
        return 0.0
    z = -0.25 * (gamma0 * t) ** 2
    half = 0.5 * (s + 1.0)
    return (
        2.0
        * gamma0 ** (s + 1.0)
        * t
        * specfun.gamma(half)
        * specfun.hyp1f1(half, 1.5, z, ctl)
    )


def _decay_rate(params: BathParams) -> float:
    # 2 B^2 |beta|, the prefactor multiplying I_s(t) in the exponent
    return 2.0 * params.b_field**2 * abs(bath_coefficient(params))


def decay_factor(
    params: BathParams, t: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL
) -> float:
    """Coherence decay factor alpha(t) = exp(-2 B^2 |beta| I_s(t)) in (0, 1]."""
    if t == 0.0 or params.b_field == 0.0:
        return 1.0
    return math.exp(-_decay_rate(params) * decay_integral(params.s, params.gamma0, t, ctl))


def decay_factor_derivative(
    params: BathParams, t: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL
) -> float:
    """d alpha/dt = -2 B^2 |beta| * dI_s/dt * alpha(t)."""
    if t == 0.0 or params.b_field == 0.0:
        return 0.0
    return decay_state(params, t, ctl)[1]


def decay_state(
    params: BathParams, t: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL
) -> tuple[float, float]:
    """(alpha(t), d alpha/dt) with the decay integral evaluated once."""
    if t == 0.0 or params.b_field == 0.0:
        return 1.0, 0.0
    rate = _decay_rate(params)
    a = math.exp(-rate * decay_integral(params.s, params.gamma0, t, ctl))
    return a, -rate * decay_integral_derivative(params.s, params.gamma0, t, ctl) * a
