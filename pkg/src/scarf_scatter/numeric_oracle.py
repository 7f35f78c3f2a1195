"""Transfer-matrix scattering solver for arbitrary complex 1D potentials.

The potential is piecewise constant on uniform slabs (value at the slab
midpoint) inside ``[x_min, x_max]`` and zero outside.  Across a slab of width
``d`` the pair (psi, psi') is propagated by

    [[cos qd, sin(qd)/q], [-q sin qd, cos qd]],   q^2 = k^2 - V,

whose entries are even in q, so no square-root branch enters.  Midpoint
sampling makes the error second order in ``d``.

This module does not use the closed-form amplitudes; it is the independent
check on them.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import IllConditioned, InputError, TailTooLarge
from .scarf_model import ScarfParameters, coefficients, evaluate_potential

DEFAULT_BOX = (-30.0, 30.0)
DEFAULT_SLABS = 6000
TAIL_TOL = 1e-10
# roundoff in t = 1/S22 grows like eps * sqrt(cond); 1e16 keeps it near 2e-8
COND_LIMIT = 1e16
ORACLE_TOL = 1e-6
ORACLE_TOL_SCARF = 1e-3


@dataclass(frozen=True, eq=False)
class SampledPotential:
    x_min: float
    x_max: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if not self.x_max > self.x_min:
            raise InputError("x_max must exceed x_min")
        if vals.ndim != 1 or vals.size == 0:
            raise InputError("values must be a non-empty 1D sequence")
        if not np.all(np.isfinite(vals)):
            raise InputError("potential values must be finite")
        tail = max(abs(vals[0]), abs(vals[-1]))
        if tail >= TAIL_TOL:
            raise TailTooLarge(f"|V| = {tail:.3g} at the box edge exceeds {TAIL_TOL:g}; enlarge the box")

    @property
    def slab_count(self) -> int:
        return self.values.size

    @property
    def width(self) -> float:
        return (self.x_max - self.x_min) / self.slab_count

    @property
    def midpoints(self) -> np.ndarray:
        return self.x_min + (np.arange(self.slab_count) + 0.5) * self.width

    @property
    def symmetric_box(self) -> bool:
        return abs(self.x_min + self.x_max) <= 1e-12 * (self.x_max - self.x_min)

    @classmethod
    def from_function(cls, func: Callable, x_min: float, x_max: float, slab_count: int) -> "SampledPotential":
        if slab_count < 1:
            raise InputError("slab_count must be positive")
        x = x_min + (np.arange(slab_count) + 0.5) * (x_max - x_min) / slab_count
        return cls(x_min, x_max, np.asarray(func(x), dtype=complex))

    def conjugate(self) -> "SampledPotential":
        return SampledPotential(self.x_min, self.x_max, self.values.conj())

    def mirrored(self) -> "SampledPotential":
        """V(-x) on the mirrored box."""
        return SampledPotential(-self.x_max, -self.x_min, self.values[::-1])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x_mid", "V_re", "V_im"])
            for x, v in zip(self.midpoints, self.values):
                w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])

    @classmethod
    def from_csv(cls, path) -> "SampledPotential":
        """Read columns ``x_mid, V_re, V_im`` on a uniform grid."""
        try:
            with open(Path(path), newline="") as fh:
                rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
        if not rows or not {"x_mid", "V_re", "V_im"} <= set(rows[0]):
            raise InputError("CSV must have columns x_mid, V_re, V_im")
        try:
            x = np.array([float(r["x_mid"]) for r in rows])
            v = np.array([complex(float(r["V_re"]), float(r["V_im"])) for r in rows])
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad number in {path}: {exc}") from None
        if x.size < 2:
            raise InputError("need at least two slabs")
        d = np.diff(x)
        if np.any(d <= 0) or np.ptp(d) > 1e-9 * max(1.0, abs(d.mean())) * x.size:
            raise InputError("x_mid must be uniformly spaced and increasing")
        width = (x[-1] - x[0]) / (x.size - 1)
        return cls(x[0] - width / 2, x[-1] + width / 2, v)


@dataclass(frozen=True)
class OracleResult:
    k: float
    t_left: complex
    r_left: complex
    t_right: complex
    r_right: complex
    slab_count: int
    box: tuple[float, float]

    @property
    def T_left(self) -> float:
        return abs(self.t_left) ** 2

    @property
    def T_right(self) -> float:
        return abs(self.t_right) ** 2

    @property
    def R_left(self) -> float:
        return abs(self.r_left) ** 2

    @property
    def R_right(self) -> float:
        return abs(self.r_right) ** 2


@dataclass(frozen=True)
class TimeReversedObservables:
    k: float
    t_rev: complex
    r_left_rev: complex
    r_right_rev: complex

    @property
    def T_rev(self) -> float:
        return abs(self.t_rev) ** 2

    @property
    def R_left_rev(self) -> float:
        return abs(self.r_left_rev) ** 2

    @property
    def R_right_rev(self) -> float:
        return abs(self.r_right_rev) ** 2


def _slab_matrices(values: np.ndarray, k: float, d: float) -> np.ndarray:
    q2 = k * k - values
    q = np.sqrt(q2)
    qd = q * d
    cos = np.cos(qd)
    # sin(qd)/q = d * sinc, with the series used where qd is tiny
    small = np.abs(qd) < 1e-4
    safe = np.where(small, 1.0, qd)
    sinc = np.where(small, 1.0 - qd * qd / 6.0, np.sin(safe) / safe)
    mats = np.empty((values.size, 2, 2), dtype=complex)
    mats[:, 0, 0] = cos
    mats[:, 0, 1] = d * sinc
    mats[:, 1, 0] = -q2 * d * sinc
    mats[:, 1, 1] = cos
    return mats


def _compose(mats: np.ndarray) -> tuple[np.ndarray, float]:
    """Ordered product M[n-1] ... M[0] as (normalised matrix, log scale).

    Pairwise reduction; every partial product is divided by its largest
    entry magnitude and the logarithm of that factor is carried along.
    """
    scales = np.zeros(mats.shape[0])
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.eye(2, dtype=complex)[None]])
            scales = np.append(scales, 0.0)
        prod = mats[1::2] @ mats[0::2]
        norm = np.max(np.abs(prod), axis=(1, 2))
        prod /= norm[:, None, None]
        scales = scales[0::2] + scales[1::2] + np.log(norm)
        mats = prod
    return mats[0], float(scales[0])


def _left_incidence(v: SampledPotential, k: float) -> tuple[complex, complex]:
    mats = _slab_matrices(v.values, k, v.width)
    M, log_scale = _compose(mats)
    if np.linalg.cond(M) > COND_LIMIT:
        raise IllConditioned(f"transfer matrix condition exceeds {COND_LIMIT:g} at k = {k:g}")

    def plane_waves(x):
        e, f = np.exp(1j * k * x), np.exp(-1j * k * x)
        return np.array([[e, f], [1j * k * e, -1j * k * f]])

    # plane-wave amplitudes on the right in terms of those on the left
    S = np.linalg.solve(plane_waves(v.x_max), M @ plane_waves(v.x_min))
    r = -S[1, 0] / S[1, 1]
    t = math.exp(-log_scale) / S[1, 1]
    return complex(t), complex(r)


def solve(v: SampledPotential, k: float) -> OracleResult:
    """Scattering amplitudes for incidence from the left and from the right.

    Left: psi = e^{ikx} + r_left e^{-ikx} on the left, t_left e^{ikx} on the
    right.  Right incidence is obtained as left incidence on the mirrored
    potential, an independent product of the slab matrices in reverse order.
    """
    k = float(k)
    if not k > 0:
        raise InputError("k must be positive")
    t_l, r_l = _left_incidence(v, k)
    t_r, r_r = _left_incidence(v.mirrored(), k)
    return OracleResult(k, t_l, r_l, t_r, r_r, v.slab_count, (v.x_min, v.x_max))


def time_reversed_observables(v: SampledPotential, k: float) -> TimeReversedObservables:
    """Amplitudes continued to -k, via t_V(-k) = conj(t_{V*}(k)).

    The same conjugation relation holds for r_left and r_right.
    """
    res = solve(v.conjugate(), k)
    return TimeReversedObservables(
        res.k, res.t_left.conjugate(), res.r_left.conjugate(), res.r_right.conjugate()
    )


def sample_scarf(
    p: ScarfParameters,
    x_min: float = DEFAULT_BOX[0],
    x_max: float = DEFAULT_BOX[1],
    slab_count: int = DEFAULT_SLABS,
) -> SampledPotential:
    c = coefficients(p)
    return SampledPotential.from_function(lambda x: evaluate_potential(c, x), x_min, x_max, slab_count)
