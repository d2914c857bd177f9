import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from loewner import (
    DrivingFunction,
    InvalidDrive,
    compute_trace,
    estimate_laurent,
    flow_composed,
    flow_ode,
    hull_support,
)
from loewner.forward import flow_support, hull_points
from loewner.verify import interior_grid, random_drive

from conftest import closed_form

ZERO = DrivingFunction.constant(0.0, 0.5)
RAMP = DrivingFunction([0.0, 1.0], [0.0, 1.0])
RAMP_ANCHOR_200 = 0.17777205045199862 + 1.6799726974937808j


def test_drive_validation():
    with pytest.raises(InvalidDrive):
        DrivingFunction([0.0], [0.0])
    with pytest.raises(InvalidDrive):
        DrivingFunction([0.1, 1.0], [0.0, 0.0])
    with pytest.raises(InvalidDrive):
        DrivingFunction([0.0, 0.5, 0.5], [0, 0, 0])
    with pytest.raises(InvalidDrive):
        DrivingFunction([0.0, 1.0], [0.0, np.nan])
    with pytest.raises(InvalidDrive):
        DrivingFunction([0.0, 1.0], [0.0, 1.0], interp="cubic")
    with pytest.raises(ValueError):
        DrivingFunction([0.0, 1.0], [0.0, 1.0], speed=1.5)


def test_drive_interpolation():
    d = DrivingFunction([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
    assert d(0.5) == 1.0 and d(1.5) == 1.0
    c = DrivingFunction([0.0, 1.0, 2.0], [0.0, 2.0, 5.0], interp="constant")
    assert c(0.5) == 0.0 and c(1.0) == 2.0 and c(1.99) == 2.0


def test_ode_closed_form():
    assert flow_ode(ZERO, 0.0, 0.5, 1j) == pytest.approx(1j * math.sqrt(2), abs=1e-8)
    assert flow_ode(ZERO.shifted(3.0), 0.0, 0.5, 3 + 1j) == pytest.approx(3 + 1j * math.sqrt(2), abs=1e-8)
    assert flow_ode(RAMP, 0.3, 0.3, 0.2 + 0.7j) == 0.2 + 0.7j


def test_ode_speed_two():
    d = DrivingFunction.constant(0.0, 0.25, speed=2.0)
    assert flow_ode(d, 0.0, 0.25, 1j) == pytest.approx(1j * math.sqrt(2), abs=1e-8)


@given(st.floats(-3, 3), st.floats(0.05, 3), st.floats(0.01, 0.5))
def test_composed_closed_form(x, y, t):
    z = complex(x, y)
    d = DrivingFunction.constant(0.0, 0.5)
    for n in (1, 7):
        assert abs(flow_composed(d, 0.0, t, n)(z) - closed_form(z, t)) <= 1e-12 * max(1, abs(z))


def test_composed_identity():
    flow = flow_composed(RAMP, 0.4, 0.4, 10)
    assert len(flow) == 0 and flow(1j) == 1j


def test_ramp_self_convergence_and_anchor():
    v100 = flow_composed(RAMP, 0.0, 1.0, 100)(1j)
    v200 = flow_composed(RAMP, 0.0, 1.0, 200)(1j)
    assert v200 == pytest.approx(RAMP_ANCHOR_200, abs=1e-12)
    # second order: Richardson extrapolation lands on the ODE solution
    richardson = v200 + (v200 - v100) / 3
    ode = flow_ode(RAMP, 0.0, 1.0, 1j, tol=1e-10)
    assert abs(v100 - v200) <= 1 / 100
    assert abs(richardson - ode) < 0.05 * abs(v200 - ode)


def test_dual_method_random_drive():
    d = random_drive(np.random.default_rng(11))
    z = interior_grid()
    diff = np.abs(flow_ode(d, 0.0, 1.0, z) - flow_composed(d, 0.0, 1.0, 10_000)(z))
    assert diff.max() <= 1e-6


def test_semigroup_exact_on_shared_grid():
    d = random_drive(np.random.default_rng(5))
    whole = flow_composed(d, 0.0, 1.0, 100)
    first, second = flow_composed(d, 0.0, 0.3, 30), flow_composed(d, 0.3, 1.0, 70)
    z = interior_grid(4)
    np.testing.assert_allclose(whole(z), second(first(z)), rtol=0, atol=1e-14)


@given(st.integers(0, 10_000), st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(-2, 2), st.floats(0.1, 2))
def test_ode_semigroup(seed, p, q, x, y):
    d = random_drive(np.random.default_rng(seed))
    s, u = sorted((p, q))
    z = complex(x, y)
    assert abs(flow_ode(d, s, 1.0, z) - flow_ode(d, u, 1.0, flow_ode(d, s, u, z))) <= 1e-5


@given(st.integers(0, 10_000), st.floats(0.05, 1.0), st.floats(-3, 3), st.floats(1e-3, 3))
def test_monotone_imaginary_part(seed, t, x, y):
    d = random_drive(np.random.default_rng(seed))
    z = complex(x, y)
    assert flow_composed(d, 0.0, t, 64)(z).imag > y
    assert flow_ode(d, 0.0, t, z).imag > y


def test_capacity_of_composed_flow():
    d = random_drive(np.random.default_rng(2), speed=2.0)
    flow = flow_composed(d, 0.2, 0.7, 5000)
    est = estimate_laurent(flow, radius=100.0, n_max=4)
    assert est.c1 == pytest.approx(-2.0 * 0.5, abs=1e-3)


@pytest.mark.parametrize("shift", [0.0, 5.0])
def test_trace_vertical_slit(shift):
    tr = compute_trace(ZERO.shifted(shift), 64)
    expected = shift + 1j * np.sqrt(2 * (0.5 - tr.t))
    np.testing.assert_allclose(tr.points, expected, atol=1e-12)
    assert tr.points[0] == pytest.approx(shift + 1j)
    assert tr.points[-1] == shift


def test_trace_root_and_interior():
    d = random_drive(np.random.default_rng(8))
    tr = compute_trace(d, 256)
    assert tr.t[-1] == d.T and tr.points[-1] == complex(d(d.T), 0)
    assert np.all(tr.points[:-1].imag > 0)


def test_trace_gaps_shrink():
    d = DrivingFunction.from_function(lambda t: np.sin(2 * np.pi * t) / 2, 1.0)
    gaps = [compute_trace(d, n).max_gap() for n in (128, 256, 512, 1024)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


@pytest.mark.parametrize("a, T", [(1.0, 0.5), (2.0, 0.25)])
def test_hull_support_vertical(a, T):
    d = DrivingFunction.constant(0.0, T, speed=a)
    lo, hi = hull_support(d, 0.0, 16)
    assert lo == pytest.approx(-1, abs=1e-9) and hi == pytest.approx(1, abs=1e-9)


def test_hull_support_contains_drive_and_shrinks():
    d = random_drive(np.random.default_rng(4))
    widths = []
    for s in (0.0, 0.9, 0.99, 0.999):
        n = max(4, int(2000 * (1 - s)))
        lo, hi = hull_support(d, s, n)
        assert lo < d(s) < hi
        widths.append(hi - lo)
    assert all(b < a for a, b in zip(widths, widths[1:]))
    assert widths[-1] < 0.2


def test_support_is_where_imaginary_part_lives():
    d = random_drive(np.random.default_rng(6))
    flow = flow_composed(d, 0.0, 1.0, 400)
    lo, hi = flow_support(flow)
    xi = np.linspace(lo, hi, 2001)[1:-1]
    assert np.all(flow(xi + 0j).imag > 0)
    outside = np.concatenate([lo - np.logspace(-8, 1, 30), hi + np.logspace(-8, 1, 30)])
    assert np.all(flow(outside + 0j).imag == 0)


def test_support_spans_gaps():
    # coarse steps of a fast drive lift disjoint pieces of the axis
    flow = flow_composed(random_drive(np.random.default_rng(227)), 0.0, 1.0, 256)
    lo, hi = flow_support(flow)
    xi = np.linspace(lo, hi, 200_001)
    lifted = flow(xi + 0j).imag > 0
    assert not lifted.all()
    eps = 1e-9
    edges = np.array([lo - eps, lo + eps, hi - eps, hi + eps]) + 0j
    assert np.array_equal(flow(edges).imag > 0, [False, True, True, False])


def test_hull_points_root():
    flow = flow_composed(ZERO, 0.0, 0.5, 10)
    pts = hull_points(flow)
    assert pts[0] == pytest.approx(1j) and pts[-1] == 0
