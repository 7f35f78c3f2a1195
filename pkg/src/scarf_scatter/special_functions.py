"""Complex Gamma function with pole reporting, and the reflection bracket.

The Gamma core is a Lanczos approximation (g = 7, nine coefficients).  The
left half plane is reached through the reflection formula for the value and
through upward recurrence for the logarithm, so ``log_complex_gamma`` stays on
the standard branch (real on the positive axis, continuous off the negative
real axis, ``lgamma(z + 1) = lgamma(z) + log(z)``).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BelowKMin, ExactPole

POLE_THRESHOLD = 1e-6
K_MIN = 1e-8

_G = 7.0
_LANCZOS = (
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
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class GammaResult:
    value: complex
    nearest_pole: Optional[int] = None
    pole_distance: float = math.inf

    @property
    def near_pole(self) -> bool:
        return self.nearest_pole is not None


def nearest_pole(z: complex) -> tuple[Optional[int], float]:
    """Closest non-positive integer to ``z`` if within ``POLE_THRESHOLD``."""
    p = round(-z.real)
    if p < 0:
        return None, math.inf
    dist = abs(z + p)
    if dist < POLE_THRESHOLD:
        return -p, dist
    return None, dist


def _check_pole(z: complex) -> None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise ExactPole(f"Gamma has a pole at z = {z.real:g}")


def _lanczos_log(z: complex) -> complex:
    # valid for Re(z) >= 1/2
    z = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_complex_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex
        Argument; must not be a non-positive integer.

    Returns
    -------
    complex
        ``w`` with ``exp(w) == Gamma(z)``.
    """
    z = complex(z)
    _check_pole(z)
    if z.real >= 0.5:
        return _lanczos_log(z)
    shift = math.ceil(0.5 - z.real)
    acc = 0j
    for j in range(shift):
        acc += cmath.log(z + j)
    return _lanczos_log(z + shift) - acc


def complex_gamma(z: complex) -> GammaResult:
    """Gamma(z) for complex ``z``, flagging proximity to a pole.

    Near a pole the value is still returned; ``nearest_pole`` and
    ``pole_distance`` let the caller decide what to make of it.
    """
    z = complex(z)
    _check_pole(z)
    pole, dist = nearest_pole(z)
    if z.real >= 0.5:
        value = cmath.exp(_lanczos_log(z))
    else:
        value = math.pi / (cmath.sin(math.pi * z) * cmath.exp(_lanczos_log(1.0 - z)))
    if pole is None:
        return GammaResult(value)
    return GammaResult(value, pole, dist)


def _scaled_cos_sin(z: complex) -> tuple[complex, complex, float]:
    """Return (cos z, sin z) divided by exp(|Im z|), and |Im z|."""
    s = abs(z.imag)
    a = cmath.exp(1j * z - s)
    b = cmath.exp(-1j * z - s)
    return 0.5 * (a + b), -0.5j * (a - b), s


def scaled_trig_ratio(A: complex, B: complex, k: float) -> tuple[complex, float]:
    """Reflection bracket as ``(mantissa, log_scale)``.

    The bracket equals ``mantissa * exp(log_scale)``.  Both terms share the
    same exponential scale, so the split never overflows for large
    ``|Im A|``, ``|Re B|`` or ``|k|``.
    """
    k = float(k)
    if abs(k) < K_MIN:
        raise BelowKMin(f"|k| = {abs(k):g} is below k_min = {K_MIN:g}")
    cos_a, sin_a, s_a = _scaled_cos_sin(math.pi * complex(A))
    # cosh(pi B) = cos(i pi B), sinh(pi B) = -i sin(i pi B)
    cosh_b, sin_ib, s_b = _scaled_cos_sin(1j * math.pi * complex(B))
    sinh_b = -1j * sin_ib
    ak = math.pi * abs(k)
    decay = math.exp(-2.0 * ak)
    cosh_k = 0.5 * (1.0 + decay)
    sinh_k = math.copysign(-0.5 * math.expm1(-2.0 * ak), k)
    mantissa = cos_a * sinh_b / cosh_k + 1j * sin_a * cosh_b / sinh_k
    return mantissa, s_a + s_b - ak


def safe_trig_ratio(A: complex, B: complex, k: float) -> complex:
    """Bracket multiplying ``t`` in the reflection amplitude.

    ``cos(pi A) sinh(pi B) / cosh(pi k) + i sin(pi A) cosh(pi B) / sinh(pi k)``,
    evaluated in exponentially scaled form.  ``k`` may be negative.
    """
    mantissa, scale = scaled_trig_ratio(A, B, k)
    if mantissa == 0:
        return 0j
    try:
        return mantissa * math.exp(scale)
    except OverflowError:
        return complex(math.copysign(math.inf, mantissa.real), math.copysign(math.inf, mantissa.imag))
