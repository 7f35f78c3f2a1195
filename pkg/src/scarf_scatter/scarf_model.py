"""Scarf II potential: parameter forms, coefficients, evaluation, classification.

    V(x) = V1 sech^2 x + V2 sech x tanh x
         = (B^2 - A^2 - A) sech^2 x + B (2A + 1) sech x tanh x

Units: hbar^2 = 2 mu = 1, so E = k^2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError

TOL_CLASS = 1e-12


class HamiltonianClass(str, enum.Enum):
    HERMITIAN = "Hermitian"
    P_SYMMETRIC = "P_symmetric_non_Hermitian"
    PT_SYMMETRIC = "PT_symmetric"
    GENERAL = "general_non_Hermitian"


@dataclass(frozen=True)
class Parametrization:
    m: int
    n: int
    alpha: complex
    beta: complex


@dataclass(frozen=True)
class ScarfParameters:
    """Scarf II in (A, B) form, remembering how it was built.

    ``origin`` is ``None`` for direct construction, otherwise the
    ``(m, n, alpha, beta)`` it came from.
    """

    A: complex
    B: complex
    origin: Optional[Parametrization] = None

    @classmethod
    def direct(cls, A: complex, B: complex) -> "ScarfParameters":
        return cls(complex(A), complex(B))

    @property
    def parametrized(self) -> bool:
        return self.origin is not None

    def flip_b(self) -> "ScarfParameters":
        """Same A, B -> -B: the mirror-image potential V(-x)."""
        return ScarfParameters(self.A, -self.B)

    def to_json(self) -> dict:
        if self.origin is not None:
            o = self.origin
            return {
                "m": o.m,
                "n": o.n,
                "alpha_re": o.alpha.real,
                "alpha_im": o.alpha.imag,
                "beta_re": o.beta.real,
                "beta_im": o.beta.imag,
            }
        return {"A_re": self.A.real, "A_im": self.A.imag, "B_re": self.B.real, "B_im": self.B.imag}

    @classmethod
    def from_json(cls, data: dict) -> "ScarfParameters":
        para = {"m", "n", "alpha_re", "alpha_im", "beta_re", "beta_im"}
        direct = {"A_re", "A_im", "B_re", "B_im"}
        keys = set(data)
        if keys == para:
            return from_parametrization(
                data["m"],
                data["n"],
                complex(data["alpha_re"], data["alpha_im"]),
                complex(data["beta_re"], data["beta_im"]),
            )
        if keys == direct:
            return cls.direct(complex(data["A_re"], data["A_im"]), complex(data["B_re"], data["B_im"]))
        raise InputError(f"unrecognised parameter keys: {sorted(keys)}")


@dataclass(frozen=True)
class PotentialCoefficients:
    V1: complex
    V2: complex

    def to_json(self) -> dict:
        return {"V1_re": self.V1.real, "V1_im": self.V1.imag, "V2_re": self.V2.real, "V2_im": self.V2.imag}


def from_parametrization(m: int, n: int, alpha: complex, beta: complex) -> ScarfParameters:
    """Build A = -(m+1) + i alpha, B = beta + i(n + 1/2).

    With real ``alpha`` and ``beta`` the transmission amplitude has real-axis
    poles at k = alpha and k = beta.  Passing ``alpha = i gamma``,
    ``beta = i delta`` gives the bound-state sector instead.
    """
    if isinstance(m, bool) or isinstance(n, bool) or int(m) != m or int(n) != n:
        raise InputError("m and n must be integers")
    m, n = int(m), int(n)
    if m < 0 or n < 0:
        raise InputError("m and n must be non-negative")
    alpha, beta = complex(alpha), complex(beta)
    A = complex(-(m + 1) - alpha.imag, alpha.real)
    B = complex(beta.real, beta.imag + n + 0.5)
    return ScarfParameters(A, B, Parametrization(m, n, alpha, beta))


def coefficients(p: ScarfParameters) -> PotentialCoefficients:
    A, B = p.A, p.B
    return PotentialCoefficients(B * B - A * A - A, B * (2 * A + 1))


def parametrized_coefficients(m: int, n: int, alpha: float, beta: float) -> PotentialCoefficients:
    """Closed real/imaginary split of V1, V2 for real alpha, beta."""
    re_v1 = alpha**2 + beta**2 - (m + 1) ** 2 - (n + 0.5) ** 2 + (m + 1)
    im_v1 = (2 * m + 1) * alpha + (2 * n + 1) * beta
    re_v2 = -((2 * n + 1) * alpha + (2 * m + 1) * beta)
    im_v2 = 2 * alpha * beta - (m + 1) * (2 * n + 1) + (n + 0.5)
    return PotentialCoefficients(complex(re_v1, im_v1), complex(re_v2, im_v2))


def evaluate_potential(c: PotentialCoefficients, x):
    """V(x) for scalar or array ``x``."""
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    out = c.V1 * sech * sech + c.V2 * sech * np.tanh(x)
    return complex(out) if x.ndim == 0 else out


def classify(c: PotentialCoefficients, tol: float = TOL_CLASS) -> HamiltonianClass:
    im1, im2 = abs(c.V1.imag), abs(c.V2.imag)
    if im1 <= tol and im2 <= tol:
        return HamiltonianClass.HERMITIAN
    if abs(c.V2) <= tol:
        return HamiltonianClass.P_SYMMETRIC
    if im1 <= tol and abs(c.V2.real) <= tol:
        return HamiltonianClass.PT_SYMMETRIC
    return HamiltonianClass.GENERAL


def classify_samples(values, symmetric_box: bool = True) -> HamiltonianClass:
    """Classify a sampled potential on a grid symmetric about x = 0."""
    v = np.asarray(values, dtype=complex)
    tol = TOL_CLASS * (1.0 + float(np.max(np.abs(v)))) if v.size else TOL_CLASS
    if np.max(np.abs(v.imag), initial=0.0) <= tol:
        return HamiltonianClass.HERMITIAN
    if symmetric_box:
        mirrored = v[::-1]
        if np.max(np.abs(mirrored - v)) <= tol:
            return HamiltonianClass.P_SYMMETRIC
        if np.max(np.abs(mirrored - v.conj())) <= tol:
            return HamiltonianClass.PT_SYMMETRIC
    return HamiltonianClass.GENERAL


def parse_real(text: str) -> float:
    """Parse a float, also accepting ``sqrt:X`` and ``-sqrt:X``."""
    s = text.strip()
    sign = 1.0
    if s.startswith("-sqrt:"):
        sign, s = -1.0, s[1:]
    if s.startswith("sqrt:"):
        try:
            arg = float(s[5:])
        except ValueError:
            raise InputError(f"cannot parse {text!r}") from None
        if arg < 0:
            raise InputError(f"negative radicand in {text!r}")
        return sign * math.sqrt(arg)
    try:
        return float(s)
    except ValueError:
        raise InputError(f"cannot parse {text!r}") from None
