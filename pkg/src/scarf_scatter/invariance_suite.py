"""Executable (in)variance table for 1D scattering.

Six properties are measured over a k-grid:

    R_lr_equal   R_left(k)  = R_right(k)
    T_lr_equal   T_left(k)  = T_right(k)
    R_k_even     R(-k)      = R(k)        (left and right)
    T_k_even     T(-k)      = T(k)
    R_pt_cross   R_left(-k) = R_right(k)
    T_k_even_pt  T(-k)      = T(k)        (PT row)

Each violation is the max over the grid of |a - b| / (1 + max(a, b)).  The
expected pattern per Hamiltonian class is ``TABLE``; ``None`` marks a
property the row says nothing about.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .analytic_scattering import amplitudes
from .errors import Inconclusive, InputError, SingularGridPoint
from .numeric_oracle import SampledPotential, solve, time_reversed_observables
from .scarf_model import HamiltonianClass, ScarfParameters, classify, classify_samples, coefficients
from .special_functions import K_MIN

PROPERTIES = ("R_lr_equal", "T_lr_equal", "R_k_even", "T_k_even", "R_pt_cross", "T_k_even_pt")

HOLD_TOL_ANALYTIC = 1e-8
HOLD_TOL_ORACLE = 1e-5
FAIL_MARGIN = 1e-3
SS_EXCLUSION = 0.05

HOLDS, FAILS, NOT_APPLICABLE = "holds", "fails", "not_applicable"

_H = HamiltonianClass
TABLE = {
    _H.HERMITIAN: dict(R_lr_equal=True, T_lr_equal=True, R_k_even=True, T_k_even=True, R_pt_cross=None, T_k_even_pt=None),
    _H.P_SYMMETRIC: dict(R_lr_equal=True, T_lr_equal=True, R_k_even=False, T_k_even=False, R_pt_cross=None, T_k_even_pt=None),
    _H.GENERAL: dict(R_lr_equal=False, T_lr_equal=True, R_k_even=False, T_k_even=False, R_pt_cross=None, T_k_even_pt=None),
    _H.PT_SYMMETRIC: dict(R_lr_equal=False, T_lr_equal=True, R_k_even=None, T_k_even=None, R_pt_cross=True, T_k_even_pt=True),
}

ROW_LABEL = {
    _H.HERMITIAN: "{1} Hermitian",
    _H.P_SYMMETRIC: "{2} Non-Hermitian (P-symmetric)",
    _H.GENERAL: "{3} Non-Hermitian",
    _H.PT_SYMMETRIC: "{4} Non-Hermitian (PT-symmetric)",
}


def default_grid(points: int = 50, k_lo: float = 0.2, k_hi: float = 3.0) -> list[float]:
    return [float(k) for k in np.geomspace(k_lo, k_hi, points)]


def known_singularities(p: ScarfParameters) -> list[float]:
    """|k*| of real-axis poles known from the parametrization."""
    o = p.origin
    if o is None:
        return []
    return [abs(v.real) for v in (o.alpha, o.beta) if v.imag == 0.0 and v.real != 0.0]


def safe_grid(p: ScarfParameters, grid: Optional[Sequence[float]] = None) -> list[float]:
    """Grid with points near known spectral singularities removed."""
    grid = default_grid() if grid is None else list(grid)
    ks = known_singularities(p)
    return [k for k in grid if all(abs(k - s) > SS_EXCLUSION for s in ks)]


@dataclass(frozen=True)
class _Row:
    T_left: float
    T_right: float
    R_left: float
    R_right: float
    T_left_rev: float
    R_left_rev: float
    R_right_rev: float


@dataclass(frozen=True)
class InvarianceReport:
    class_tested: HamiltonianClass
    source: str
    grid: list[float]
    max_violation: dict[str, float]
    verdicts: dict[str, str]
    expected: dict[str, str]

    @property
    def matches_table(self) -> bool:
        return all(self.verdicts[p] == self.expected[p] for p in PROPERTIES)

    def to_json(self) -> dict:
        return {
            "class_tested": self.class_tested.value,
            "source": self.source,
            "grid": self.grid,
            "max_violation": {p: self.max_violation[p] for p in PROPERTIES},
            "verdicts": {p: self.verdicts[p] for p in PROPERTIES},
            "expected": {p: self.expected[p] for p in PROPERTIES},
            "matches_table": self.matches_table,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        lines = [
            f"class: {ROW_LABEL[self.class_tested]}   source: {self.source}   grid points: {len(self.grid)}",
            f"{'property':<12} {'max violation':>14}  {'verdict':<15} {'expected':<15}",
        ]
        for p in PROPERTIES:
            lines.append(f"{p:<12} {self.max_violation[p]:>14.3e}  {self.verdicts[p]:<15} {self.expected[p]:<15}")
        lines.append(f"matches table: {'yes' if self.matches_table else 'no'}")
        return "\n".join(lines)


def _analytic_row(p: ScarfParameters, k: float) -> _Row:
    fwd = amplitudes(p, k)
    rev = amplitudes(p, -k)
    if fwd.singular or rev.singular:
        raise SingularGridPoint(f"grid point k = {k:g} is within the pole threshold of a spectral singularity")
    # right incidence is the (A, -B) potential
    t_right = amplitudes(p.flip_b(), k).t
    return _Row(
        abs(fwd.t) ** 2,
        abs(t_right) ** 2,
        abs(fwd.r_left) ** 2,
        abs(fwd.r_right) ** 2,
        abs(rev.t) ** 2,
        abs(rev.r_left) ** 2,
        abs(rev.r_right) ** 2,
    )


def _oracle_row(v: SampledPotential, k: float) -> _Row:
    fwd = solve(v, k)
    rev = time_reversed_observables(v, k)
    row = _Row(fwd.T_left, fwd.T_right, fwd.R_left, fwd.R_right, rev.T_rev, rev.R_left_rev, rev.R_right_rev)
    if not all(np.isfinite(list(row.__dict__.values()))):
        raise SingularGridPoint(f"non-finite observable at k = {k:g}")
    return row


def _violation(pairs) -> float:
    worst = 0.0
    for a, b in pairs:
        worst = max(worst, abs(a - b) / (1.0 + max(abs(a), abs(b))))
    return worst


def run_report(source: Union[ScarfParameters, SampledPotential], grid: Optional[Sequence[float]] = None) -> InvarianceReport:
    """Measure all six properties and issue verdicts for the detected class.

    Raises
    ------
    Inconclusive
        An applicable property has a violation between the hold tolerance and
        the failure margin.
    SingularGridPoint
        A grid point is at, or within 0.05 of, a known spectral singularity.
    """
    if isinstance(source, ScarfParameters):
        if grid is None:
            grid = safe_grid(source)
        for k in grid:
            if any(abs(k - s) <= SS_EXCLUSION for s in known_singularities(source)):
                raise SingularGridPoint(f"grid point k = {k:g} lies within {SS_EXCLUSION} of a spectral singularity")
        kind = classify(coefficients(source))
        hold_tol = HOLD_TOL_ANALYTIC
        label = "analytic"
        row_of = lambda k: _analytic_row(source, k)  # noqa: E731
    elif isinstance(source, SampledPotential):
        grid = default_grid() if grid is None else grid
        kind = classify_samples(source.values, source.symmetric_box)
        hold_tol = HOLD_TOL_ORACLE
        label = "oracle"
        row_of = lambda k: _oracle_row(source, k)  # noqa: E731
    else:
        raise InputError(f"unsupported source type {type(source).__name__}")

    grid = [float(k) for k in grid]
    if not grid:
        raise InputError("grid is empty")
    if any(k < K_MIN for k in grid):
        raise InputError("grid values must be at least k_min")

    rows = [row_of(k) for k in grid]
    viol = {
        "R_lr_equal": _violation((r.R_left, r.R_right) for r in rows),
        "T_lr_equal": _violation((r.T_left, r.T_right) for r in rows),
        "R_k_even": _violation(
            pair for r in rows for pair in ((r.R_left_rev, r.R_left), (r.R_right_rev, r.R_right))
        ),
        "T_k_even": _violation((r.T_left_rev, r.T_left) for r in rows),
        "R_pt_cross": _violation((r.R_left_rev, r.R_right) for r in rows),
        "T_k_even_pt": _violation((r.T_left_rev, r.T_left) for r in rows),
    }

    expected_row = TABLE[kind]
    verdicts, expected = {}, {}
    for prop in PROPERTIES:
        exp = expected_row[prop]
        if exp is None:
            verdicts[prop] = expected[prop] = NOT_APPLICABLE
            continue
        expected[prop] = HOLDS if exp else FAILS
        v = viol[prop]
        if v < hold_tol:
            verdicts[prop] = HOLDS
        elif v > FAIL_MARGIN:
            verdicts[prop] = FAILS
        else:
            raise Inconclusive(
                f"{prop}: violation {v:.3e} lies between hold_tol {hold_tol:g} and fail_margin {FAIL_MARGIN:g}",
                prop,
                v,
            )
    return InvarianceReport(kind, label, grid, viol, verdicts, expected)
