"""Spectral singularities and bound states of the parametrized Scarf II.

With A = -(m+1) + i alpha and B = beta + i(n+1/2) the numerator factors
Gamma(-m + i(alpha - k)) and Gamma(-n + i(beta - k)) of the transmission
amplitude produce

* real alpha, beta: real-axis poles at k = alpha and k = beta (spectral
  singularities, E* = alpha^2, beta^2).  A positive pole shows up in the
  forward transmitivity T(k), a negative one in the time-reversed T(-k).
* alpha = i gamma, beta = i delta: poles at k = i(gamma + m - M) and
  k = i(delta + n - N) on the positive imaginary axis (bound states).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Union

import numpy as np

from .analytic_scattering import log_transmission
from .errors import DomainError, ExactSingularity, InputError
from .scarf_model import ScarfParameters

FORWARD = "forward"
TIME_REVERSED = "time_reversed"
BOTH = "both"

ALPHA_FACTOR = "alpha_gamma_factor"
BETA_FACTOR = "beta_gamma_factor"
BOTH_FACTORS = "both_gamma_factors"

POLE_EPSILONS = (1e-2, 1e-3, 1e-4)
RATIO_TOL = 0.2


@dataclass(frozen=True)
class SpectralSingularityRecord:
    k_star: float
    E_star: float
    channel: str
    source: str

    def to_json(self) -> dict:
        return {"E_star": self.E_star, "k_star": self.k_star, "channel": self.channel, "source": self.source}


@dataclass(frozen=True)
class BoundStateRecord:
    branch: str
    index: int
    energy: float
    kappa: float

    def to_json(self) -> dict:
        return {"branch": self.branch, "index": self.index, "energy": self.energy, "kappa": self.kappa}


@dataclass(frozen=True)
class PoleCheck:
    is_pole: bool
    growth_exponent: float
    ratios: tuple[float, float]

    def to_json(self) -> dict:
        return asdict(self)


def _channel(k: float) -> str:
    return FORWARD if k > 0 else TIME_REVERSED


def find_spectral_singularities(m: int, n: int, alpha: float, beta: float) -> list[SpectralSingularityRecord]:
    """Real-axis poles of t for real alpha, beta.

    When alpha + beta = 0 and m = n (the PT-symmetric member) both poles sit at
    the same energy in opposite channels and are reported as one record with
    channel ``"both"``.
    """
    alpha, beta = float(alpha), float(beta)
    if alpha + beta == 0.0 and m == n and alpha != 0.0:
        k = abs(alpha)
        return [SpectralSingularityRecord(k, k * k, BOTH, BOTH_FACTORS)]
    out = []
    for k, source in ((alpha, ALPHA_FACTOR), (beta, BETA_FACTOR)):
        if k != 0.0:
            out.append(SpectralSingularityRecord(k, k * k, _channel(k), source))
    return out


def _branch(name: str, shift: int, kappa0: float) -> list[BoundStateRecord]:
    out = []
    index = 0
    while index < shift + kappa0:
        kappa = kappa0 + shift - index
        out.append(BoundStateRecord(name, index, -(kappa * kappa), kappa))
        index += 1
    return out


def bound_states(m: int, n: int, gamma: float, delta: float) -> list[BoundStateRecord]:
    """Both bound-state branches for alpha = i gamma, beta = i delta.

    E+_M = -(gamma + m - M)^2 for 0 <= M < m + gamma and
    E-_N = -(delta + n - N)^2 for 0 <= N < n + delta, sorted by energy.
    """
    if gamma <= 0 or delta <= 0:
        raise InputError("gamma and delta must be positive")
    records = _branch("plus", m, float(gamma)) + _branch("minus", n, float(delta))
    # purely imaginary alpha, beta leave no real-axis pole
    assert not find_spectral_singularities_complex(m, n, 1j * gamma, 1j * delta)
    return sorted(records, key=lambda r: r.energy)


def find_spectral_singularities_complex(m: int, n: int, alpha: complex, beta: complex) -> list[SpectralSingularityRecord]:
    """Spectral singularities allowing complex alpha, beta (only real ones contribute)."""
    alpha, beta = complex(alpha), complex(beta)
    if alpha.imag == 0.0 and beta.imag == 0.0:
        return find_spectral_singularities(m, n, alpha.real, beta.real)
    out = []
    for k, source in ((alpha, ALPHA_FACTOR), (beta, BETA_FACTOR)):
        if k.imag == 0.0 and k.real != 0.0:
            out.append(SpectralSingularityRecord(k.real, k.real**2, _channel(k.real), source))
    return out


@dataclass(frozen=True)
class Spectrum:
    singularities: list[SpectralSingularityRecord]
    bound_states: list[BoundStateRecord]

    def to_json(self) -> dict:
        return {
            "spectral_singularities": [r.to_json() for r in self.singularities],
            "bound_states": [r.to_json() for r in self.bound_states],
        }


def enumerate_spectrum(m: int, n: int, alpha: complex, beta: complex) -> Spectrum:
    """Spectral singularities and bound states together.

    Each of alpha, beta may be real (a spectral singularity) or purely
    imaginary with positive imaginary part (a bound-state branch); this covers
    the mixed alpha = i gamma, beta real situation.
    """
    alpha, beta = complex(alpha), complex(beta)
    for v in (alpha, beta):
        if v.real != 0.0 and v.imag != 0.0:
            raise InputError("alpha and beta must each be real or purely imaginary")
        if v.real == 0.0 and v.imag < 0.0:
            raise InputError("imaginary alpha/beta must have positive imaginary part")
    ss = find_spectral_singularities_complex(m, n, alpha, beta)
    bs = []
    if alpha.imag > 0:
        bs += _branch("plus", m, alpha.imag)
    if beta.imag > 0:
        bs += _branch("minus", n, beta.imag)
    return Spectrum(ss, sorted(bs, key=lambda r: r.energy))


def confirm_pole(p: ScarfParameters, k_candidate: Union[complex, float]) -> PoleCheck:
    """Check for a simple pole of t by the scaling of |t| near ``k_candidate``.

    |t| is sampled at distances 1e-2, 1e-3, 1e-4 away from the candidate,
    along the real axis for a real candidate and along the imaginary axis for
    a purely imaginary one.  A simple pole gives successive ratios of 10.
    """
    kc = complex(k_candidate)
    if kc.imag == 0.0 and kc.real != 0.0:
        step = math.copysign(1.0, kc.real)
    elif kc.real == 0.0 and kc.imag > 0.0:
        step = 1j
    else:
        raise DomainError(f"k = {kc} is neither real nonzero nor on the positive imaginary axis")
    mags = []
    for eps in POLE_EPSILONS:
        k = kc + step * eps
        if k.imag == 0.0:
            k = k.real
        try:
            mags.append(abs(log_transmission(p.A, p.B, k).t))
        except ExactSingularity:
            mags.append(math.inf)
    ratios = (mags[1] / mags[0], mags[2] / mags[1])
    slope = float(np.polyfit(-np.log10(POLE_EPSILONS), np.log10(mags), 1)[0])
    ok = all(abs(r - 10.0) <= RATIO_TOL * 10.0 for r in ratios)
    return PoleCheck(ok, slope, ratios)


def kappa_candidate(record: BoundStateRecord) -> complex:
    return 1j * record.kappa


def singularity_candidates(record: SpectralSingularityRecord) -> list[float]:
    """Real k values at which the record's pole should be found."""
    k = abs(record.k_star)
    if record.channel == BOTH:
        return [k, -k]
    return [record.k_star]


__all__ = [
    "BOTH",
    "FORWARD",
    "TIME_REVERSED",
    "BoundStateRecord",
    "PoleCheck",
    "SpectralSingularityRecord",
    "Spectrum",
    "bound_states",
    "confirm_pole",
    "enumerate_spectrum",
    "find_spectral_singularities",
    "singularity_candidates",
]
