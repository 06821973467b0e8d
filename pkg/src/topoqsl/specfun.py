"""Real-argument special functions for the dephasing decay integrals.

Scalar, pure-Python double precision implementations of the Gamma
function (Lanczos approximation plus reflection), log-Gamma, and the
generalized hypergeometric series 1F1 and 2F2 by direct summation.
Accuracy targets are ~1e-12 relative on the ranges the bath machinery
exercises: |x| <= 30 for Gamma, |z| <= ~50 for 1F1 and |z| <= ~35
for 2F2.

Two numerical safeguards matter here:

* 1F1(a; b; z) at large negative z is evaluated through the Kummer
  transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z), whose series has
  eventually constant sign; the direct alternating series would cancel
  catastrophically (it loses roughly |z|/ln(10) digits).

* The 2F2 series has no comparable transformation, so its terms are
  carried in double-double arithmetic.  At z = -30 the largest term is
  ~1e13 against a result of ~0.09; plain compensated summation of
  double-precision terms would leave only ~3 correct digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, GammaPoleError, ParameterError

__all__ = [
    "DEFAULT_SERIES_CONTROL",
    "SeriesControl",
    "factorial",
    "gamma",
    "hyp1f1",
    "hyp2f2",
    "ln_gamma",
    "sin_pi",
]

_SQRT_TWO_PI = 2.5066282746310005024157652848110


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the hypergeometric series."""

    max_terms: int = 500
    rel_tol: float = 1e-14

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must be in (0, 1)")


#: Sized for |z| up to ~120, i.e. scan times up to t ~ 22 at gamma0 = 1.
DEFAULT_SERIES_CONTROL = SeriesControl()

# Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
_LANCZOS_G = 4.7421875
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
)


def sin_pi(x: float) -> float:
    """sin(pi*x) with exact argument reduction, full precision near integers."""
    n = round(x)
    r = x - n  # exact for |x| < 2**52
    s = math.sin(math.pi * r)
    return -s if n & 1 else s


def _lanczos_series(x: float) -> float:
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, 15):
        acc += _LANCZOS_COEFFS[i] / (x + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function of real x; poles at 0, -1, -2, ... raise GammaPoleError.

    Negative arguments go through the reflection formula
    Gamma(x) Gamma(1-x) = pi / sin(pi*x).
    """
    if x <= 0.0 and x == math.floor(x):
        raise GammaPoleError(f"gamma pole at x = {x:g}")
    if x < 0.0:
        return math.pi / (sin_pi(x) * gamma(1.0 - x))
    t = x + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * _lanczos_series(x) / x * t ** (x + 0.5) * math.exp(-t)


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0 (overflow-safe for large x)."""
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x:g}")
    t = x + _LANCZOS_G + 0.5
    return (x + 0.5) * math.log(t) - t + math.log(_SQRT_TWO_PI * _lanczos_series(x) / x)


def factorial(n: int) -> float:
    """n! as a float, n a nonnegative integer."""
    if n != int(n) or n < 0:
        raise DomainError(f"factorial requires a nonnegative integer, got {n!r}")
    return float(math.factorial(int(n)))


def _check_lower_parameter(b: float, name: str) -> None:
    if b <= 0.0 and b == math.floor(b):
        raise ParameterError(f"lower parameter {name} = {b:g} is a nonpositive integer")


def _hyp1f1_series(a: float, b: float, z: float, ctl: SeriesControl) -> float:
    """Direct Taylor series of 1F1 with Neumaier-compensated accumulation."""
    if a == 0.0:
        return 1.0
    total = 1.0
    comp = 0.0
    term = 1.0
    small = 0
    for k in range(ctl.max_terms):
        kf = float(k)
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0))
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        if abs(term) <= ctl.rel_tol * abs(total):
            small += 1
            if small >= 2:
                return total + comp
        else:
            small = 0
    raise ConvergenceError(
        f"1F1 series did not converge in {ctl.max_terms} terms "
        f"(a={a:g}, b={b:g}, z={z:g})"
    )


# Below this the alternating direct series still holds ~15 digits; beyond it
# the Kummer transform is required.
_KUMMER_SWITCH = 1.0


def hyp1f1(a: float, b: float, z: float, ctl: SeriesControl = DEFAULT_SERIES_CONTROL) -> float:
    """Confluent hypergeometric function 1F1(a; b; z) for real arguments."""
    _check_lower_parameter(b, "b")
    if z == 0.0 or a == 0.0:
        return 1.0
    if z < -_KUMMER_SWITCH:
        return math.exp(z) * _hyp1f1_series(b - a, b, -z, ctl)
    return _hyp1f1_series(a, b, z, ctl)


# ---------------------------------------------------------------------------
# Double-double helpers (Dekker/Knuth error-free transformations).  Used only
# by the 2F2 series, whose alternating terms at large |z| dwarf the result.

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _fast_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    ph, pl = _two_prod(xh, yh)
    pl += xh * yl + xl * yh
    return _fast_two_sum(ph, pl)


def _dd_mul_d(xh: float, xl: float, y: float) -> tuple[float, float]:
    ph, pl = _two_prod(xh, y)
    pl += xl * y
    return _fast_two_sum(ph, pl)


def _dd_div(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    q1 = xh / yh
    ph, pl = _two_prod(q1, yh)
    r = ((xh - ph) - pl) + xl - q1 * yl
    return _fast_two_sum(q1, r / yh)


def _dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    sh, se = _two_sum(xh, yh)
    se += xl + yl
    return _fast_two_sum(sh, se)


def hyp2f2(
    a1: float,
    a2: float,
    b1: float,
    b2: float,
    z: float,
    ctl: SeriesControl = DEFAULT_SERIES_CONTROL,
) -> float:
    """Generalized hypergeometric function 2F2(a1, a2; b1, b2; z).

    Direct series; terms and sum are carried in double-double so the
    result keeps full double accuracy through the cancellation of the
    alternating series at large negative z.
    """
    _check_lower_parameter(b1, "b1")
    _check_lower_parameter(b2, "b2")
    if z == 0.0 or a1 == 0.0 or a2 == 0.0:
        return 1.0
    th, tl = 1.0, 0.0  # current term
    sh, sl = 1.0, 0.0  # running sum
    small = 0
    for k in range(ctl.max_terms):
        kf = float(k)
        nh, nl = _two_prod(a1 + kf, a2 + kf)
        nh, nl = _dd_mul_d(nh, nl, z)
        dh, dl = _two_prod(b1 + kf, b2 + kf)
        dh, dl = _dd_mul_d(dh, dl, kf + 1.0)
        rh, rl = _dd_div(nh, nl, dh, dl)
        th, tl = _dd_mul(th, tl, rh, rl)
        sh, sl = _dd_add(sh, sl, th, tl)
        if abs(th) <= ctl.rel_tol * abs(sh):
            small += 1
            if small >= 2:
                return sh + sl
        else:
            small = 0
    raise ConvergenceError(
        f"2F2 series did not converge in {ctl.max_terms} terms "
        f"(a=({a1:g},{a2:g}), b=({b1:g},{b2:g}), z={z:g})"
    )
