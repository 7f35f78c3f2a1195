import json

import numpy as np
import pytest

from conftest import SQRT2, SQRT5
from scarf_scatter.errors import Inconclusive, InputError, SingularGridPoint
from scarf_scatter.invariance_suite import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    PROPERTIES,
    TABLE,
    default_grid,
    run_report,
    safe_grid,
)
from scarf_scatter.numeric_oracle import SampledPotential, sample_scarf
from scarf_scatter.scarf_model import HamiltonianClass, ScarfParameters, from_parametrization

H = HamiltonianClass

CANONICAL = [
    (ScarfParameters.direct(-2, 1), H.HERMITIAN),
    (ScarfParameters.direct(1 + 1j, 0), H.P_SYMMETRIC),
    (from_parametrization(0, 0, SQRT2, SQRT5), H.GENERAL),
    (from_parametrization(0, 0, SQRT2, -SQRT2), H.PT_SYMMETRIC),
]


def expected_verdicts(kind):
    return {p: NOT_APPLICABLE if v is None else (HOLDS if v else FAILS) for p, v in TABLE[kind].items()}


@pytest.mark.parametrize("p, kind", CANONICAL, ids=[k.name for _, k in CANONICAL])
def test_analytic_rows(p, kind):
    rep = run_report(p)
    assert rep.class_tested is kind
    assert rep.verdicts == expected_verdicts(kind)
    assert rep.matches_table


@pytest.mark.parametrize("p, kind", CANONICAL, ids=[k.name for _, k in CANONICAL])
def test_oracle_rows(p, kind):
    grid = [k for k in default_grid(12) if all(abs(k - s) > 0.05 for s in (SQRT2, SQRT5))]
    rep = run_report(sample_scarf(p), grid)
    assert rep.source == "oracle"
    assert rep.class_tested is kind
    assert rep.matches_table


def test_pt_row_measures_cross_relation():
    rep = run_report(from_parametrization(0, 0, SQRT2, -SQRT2))
    assert rep.max_violation["R_pt_cross"] < 1e-10
    assert rep.max_violation["R_k_even"] > 1e-3


def test_dead_zone_is_inconclusive():
    # a whisker of non-Hermiticity: R_left and R_right differ by far less than the fail margin
    with pytest.raises(Inconclusive) as info:
        run_report(ScarfParameters.direct(-2 + 1e-6j, 1))
    assert 1e-8 <= info.value.violation <= 1e-3


def test_grid_on_singularity_rejected():
    with pytest.raises(SingularGridPoint):
        run_report(from_parametrization(0, 0, SQRT2, SQRT5), [1.0, SQRT2 + 0.01])


def test_safe_grid_drops_neighbourhoods():
    p = from_parametrization(0, 0, SQRT2, SQRT5)
    grid = safe_grid(p)
    assert 0 < len(grid) < 50
    assert all(abs(k - s) > 0.05 for k in grid for s in (SQRT2, SQRT5))
    assert safe_grid(ScarfParameters.direct(-2, 1)) == default_grid()


def test_bad_grids():
    with pytest.raises(InputError):
        run_report(ScarfParameters.direct(-2, 1), [])
    with pytest.raises(InputError):
        run_report(ScarfParameters.direct(-2, 1), [1e-10])
    with pytest.raises(InputError):
        run_report("not a potential")


def test_report_is_deterministic_and_ordered():
    p = from_parametrization(0, 0, SQRT2, SQRT5)
    a, b = run_report(p).dumps(), run_report(p).dumps()
    assert a == b
    data = json.loads(a)
    assert list(data) == ["class_tested", "source", "grid", "max_violation", "verdicts", "expected", "matches_table"]
    assert list(data["max_violation"]) == list(PROPERTIES)


def test_table_rendering():
    text = run_report(ScarfParameters.direct(1 + 1j, 0)).table()
    assert "P-symmetric" in text
    assert text.splitlines()[-1] == "matches table: yes"
    for prop in PROPERTIES:
        assert prop in text


def test_sampled_class_detection():
    x = lambda f: SampledPotential.from_function(f, -12, 12, 600)  # noqa: E731
    assert run_report(x(lambda t: -np.exp(-t * t)), [0.5, 1.0]).class_tested is H.HERMITIAN
    rep = run_report(x(lambda t: (-1 + 1j * t) * np.exp(-t * t)), [0.5, 1.0, 2.0])
    assert rep.class_tested is H.PT_SYMMETRIC and rep.matches_table
