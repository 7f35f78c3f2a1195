"""Closed-form Scarf II scattering amplitudes.

    t(k) = G(-A-ik) G(1+A-ik) G(1/2-iB-ik) G(1/2+iB-ik)
           / [G(-ik) G(1-ik) G(1/2-ik)^2]
    r(k) = t(k) [cos(pi A) sinh(pi B) / cosh(pi k) + i sin(pi A) cosh(pi B) / sinh(pi k)]

Left incidence uses (A, B), right incidence (A, -B).  ``t`` is even in B, so
``t_left == t_right``.  Negative ``k`` is the time-reversed channel.
Products of Gamma factors are formed in log space and exponentiated once.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import BelowKMin, ExactPole, ExactSingularity
from .scarf_model import ScarfParameters
from .special_functions import K_MIN, POLE_THRESHOLD, log_complex_gamma, nearest_pole, scaled_trig_ratio

FACTOR_NAMES = ("-A-ik", "1+A-ik", "1/2-iB-ik", "1/2+iB-ik")


class Transmission(NamedTuple):
    t: complex
    log_t: complex
    singular_factor: Optional[int]
    pole_distance: float

    @property
    def singular(self) -> bool:
        return self.singular_factor is not None


@dataclass(frozen=True)
class ScatteringAmplitudes:
    k: float
    t: complex
    r_left: complex
    r_right: complex
    singular_factor: Optional[int] = None

    @property
    def singular(self) -> bool:
        return self.singular_factor is not None


@dataclass(frozen=True)
class Observables:
    E: float
    T_fwd: float
    T_rev: float
    R_left_fwd: float
    R_right_fwd: float
    R_left_rev: float
    R_right_rev: float
    singular_fwd: bool = False
    singular_rev: bool = False

    @property
    def singular(self) -> bool:
        return self.singular_fwd or self.singular_rev


def numerator_args(A: complex, B: complex, k: complex) -> tuple[complex, complex, complex, complex]:
    ik = 1j * k
    return (-A - ik, 1 + A - ik, 0.5 - 1j * B - ik, 0.5 + 1j * B - ik)


def _check_k(k) -> None:
    if abs(k) < K_MIN:
        raise BelowKMin(f"|k| = {abs(k):g} is below k_min = {K_MIN:g}")


def log_transmission(A: complex, B: complex, k: complex) -> Transmission:
    """log t at arbitrary complex ``k`` (used directly for pole checks)."""
    _check_k(k)
    args = numerator_args(A, B, k)
    flag, flag_dist = None, math.inf
    acc = 0j
    for i, z in enumerate(args):
        try:
            acc += log_complex_gamma(z)
        except ExactPole:
            raise ExactSingularity(
                f"transmission amplitude is infinite at k = {k}: Gamma({FACTOR_NAMES[i]}) hits a pole", i
            ) from None
        pole, dist = nearest_pole(z)
        if pole is not None and dist < flag_dist:
            flag, flag_dist = i, dist
    ik = 1j * k
    acc -= log_complex_gamma(-ik) + log_complex_gamma(1 - ik) + 2.0 * log_complex_gamma(0.5 - ik)
    return Transmission(_exp(acc), acc, flag, flag_dist)


def _exp(w: complex) -> complex:
    try:
        return cmath.exp(w)
    except OverflowError:
        return complex(math.inf, math.inf)


def transmission_amplitude(p: ScarfParameters, k: float) -> Transmission:
    """Transmission amplitude at signed real ``k`` with a near-pole flag."""
    return log_transmission(p.A, p.B, float(k))


def _reflection(log_t: complex, A: complex, B: complex, k: float) -> complex:
    mantissa, scale = scaled_trig_ratio(A, B, k)
    if mantissa == 0:
        return 0j
    return mantissa * _exp(log_t + scale)


def reflection_amplitudes(p: ScarfParameters, k: float) -> tuple[complex, complex]:
    """``(r_left, r_right)`` at signed real ``k``."""
    tr = transmission_amplitude(p, k)
    return _reflection(tr.log_t, p.A, p.B, k), _reflection(tr.log_t, p.A, -p.B, k)


def amplitudes(p: ScarfParameters, k: float) -> ScatteringAmplitudes:
    k = float(k)
    tr = transmission_amplitude(p, k)
    return ScatteringAmplitudes(
        k,
        tr.t,
        _reflection(tr.log_t, p.A, p.B, k),
        _reflection(tr.log_t, p.A, -p.B, k),
        tr.singular_factor,
    )


def _safe_amplitudes(p: ScarfParameters, k: float) -> ScatteringAmplitudes:
    # exact pole hits become infinities with the flag set
    try:
        return amplitudes(p, k)
    except ExactSingularity as exc:
        inf = complex(math.inf, 0.0)
        return ScatteringAmplitudes(k, inf, inf, inf, exc.factor)


def observables(p: ScarfParameters, E: float, strict: bool = True) -> Observables:
    """Transmitivities and reflectivities at energy ``E`` in both channels.

    Forward uses k = +sqrt(E), time-reversed k = -sqrt(E).  With
    ``strict=False`` an exact pole hit yields ``inf`` and a set flag instead
    of raising.
    """
    if E < K_MIN**2:
        raise BelowKMin(f"E = {E:g} is below k_min^2")
    k = math.sqrt(E)
    get = amplitudes if strict else _safe_amplitudes
    fwd, rev = get(p, k), get(p, -k)
    return Observables(
        E,
        abs(fwd.t) ** 2,
        abs(rev.t) ** 2,
        abs(fwd.r_left) ** 2,
        abs(fwd.r_right) ** 2,
        abs(rev.r_left) ** 2,
        abs(rev.r_right) ** 2,
        fwd.singular,
        rev.singular,
    )


def energy_scan(p: ScarfParameters, energies: Sequence[float]) -> list[Observables]:
    """Observables over an energy grid; rows at poles are flagged, not dropped."""
    return [observables(p, float(E), strict=False) for E in energies]


__all__ = [
    "POLE_THRESHOLD",
    "Observables",
    "ScatteringAmplitudes",
    "Transmission",
    "amplitudes",
    "energy_scan",
    "log_transmission",
    "numerator_args",
    "observables",
    "reflection_amplitudes",
    "transmission_amplitude",
]
