"""Gamma-family primitives: signed log-gamma, regularized incomplete gamma,
complex log-gamma and digamma.

Everything here is scalar double precision.  The complex log-gamma is only
ever called with Re(z) > 0 (arguments on a Mellin-Barnes contour that stays
left of all poles), which keeps the Lanczos evaluation branch-cut free.
"""

from __future__ import annotations

import cmath
import math

__all__ = [
    "ln_gamma_signed",
    "gamma_upper_reg",
    "clngamma",
    "digamma",
    "trigamma",
]

# Lanczos g=7, n=9 coefficients (Godfrey's set, ~15 significant digits).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def ln_gamma_signed(x: float) -> tuple[float, int]:
    """Return (ln|Gamma(x)|, sign) for real non-pole x.

    Raises ValueError at the poles (x = 0, -1, -2, ...).
    """
    if math.isnan(x):
        raise ValueError("ln_gamma_signed: x is NaN")
    if _is_nonpositive_int(x):
        raise ValueError(f"ln_gamma_signed: pole at non-positive integer x={x}")
    if x > 0.0:
        return math.lgamma(x), 1
    # For x < 0, Gamma alternates sign on successive unit intervals:
    # positive on (-2,-1), negative on (-1,0), etc.
    k = math.floor(-x)
    sign = -1 if k % 2 == 0 else 1
    return math.lgamma(x), sign


def gamma_upper_reg(p: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(p, x) = Gamma(p, x) / Gamma(p).

    Power series for the lower function when x < p + 1, Lentz continued
    fraction for the upper function otherwise (Numerical Recipes 6.2).
    """
    if not p > 0.0:
        raise ValueError(f"gamma_upper_reg: require p > 0, got {p}")
    if x < 0.0:
        raise ValueError(f"gamma_upper_reg: require x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if x < p + 1.0:
        return 1.0 - _gamma_lower_series(p, x)
    return _gamma_upper_cf(p, x)


def _gamma_lower_series(p: float, x: float) -> float:
    # P(p,x) = x^p e^-x / Gamma(p+1) * sum_n x^n / ((p+1)...(p+n))
    ap = p
    term = 1.0 / p
    total = term
    for _ in range(1000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    else:
        raise ArithmeticError("gamma_upper_reg: series did not converge")
    return total * math.exp(-x + p * math.log(x) - math.lgamma(p))


def _gamma_upper_cf(p: float, x: float) -> float:
    # Q(p,x) = x^p e^-x / Gamma(p) * 1/(x+1-p- 1(1-p)/(x+3-p- ...))
    tiny = 1e-300
    b = x + 1.0 - p
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - p)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ArithmeticError("gamma_upper_reg: continued fraction did not converge")
    return h * math.exp(-x + p * math.log(x) - math.lgamma(p))


def clngamma(z: complex) -> complex:
    """Principal log-gamma for complex z with Re(z) > 0 (Lanczos)."""
    if z.real <= 0.0:
        raise ValueError(f"clngamma: require Re(z) > 0, got {z}")
    shift = 0
    # Recurrence into the region where the Lanczos fit is at full accuracy.
    while z.real < 1.5:
        shift += 1
        z = z + 1.0
    zm1 = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for k in range(1, 9):
        acc += _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    out = _HALF_LOG_2PI + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(acc)
    for j in range(shift):
        out -= cmath.log(z - 1.0 - j)
    return out


def digamma(x: float) -> float:
    """Digamma for real x > 0 (recurrence + asymptotic series)."""
    if not x > 0.0:
        raise ValueError(f"digamma: require x > 0, got {x}")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # Asymptotic expansion, |error| < 1e-14 for x >= 10.
    return acc + math.log(x) - 0.5 * inv - inv2 * (
        1.0 / 12.0
        - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0)))
    )


def trigamma(x: float) -> float:
    """Trigamma for real x > 0 (recurrence + asymptotic series)."""
    if not x > 0.0:
        raise ValueError(f"trigamma: require x > 0, got {x}")
    acc = 0.0
    while x < 10.0:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    return acc + inv * (
        1.0
        + inv
        * (
            0.5
            + inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)))
        )
    )
