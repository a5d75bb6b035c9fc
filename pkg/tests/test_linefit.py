import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlcsim import presets, pv
from dlcsim.errors import DegenerateFitError
from dlcsim.linefit import SamplePair, fit_arrays, fit_line


def test_exact_line():
    res = fit_line([(0, 1), (1, 3), (2, 5)])
    assert (res.slope, res.intercept, res.r_squared, res.n_samples) == (2.0, 1.0, 1.0, 3)


def test_hand_case():
    # normal equations: xbar = 1, ybar = 1/3, Sxy = 0 -> slope 0, intercept 1/3
    res = fit_line([SamplePair(0, 0), SamplePair(1, 1), SamplePair(2, 0)])
    assert res.slope == pytest.approx(0.0, abs=1e-15)
    assert res.intercept == pytest.approx(1 / 3, rel=1e-15)
    assert res.r_squared == pytest.approx(0.0, abs=1e-15)


def test_refits_fitted_mpp_line():
    line = pv.mpp_line_at(presets.mpp_lines(810), 25.0)
    res = fit_line([(p, pv.mpp_from_fit(line, p)) for p in (5, 10, 15, 20)])
    assert res.slope == pytest.approx(0.541, abs=1e-9)
    assert res.intercept == pytest.approx(-0.231, abs=1e-9)
    assert res.r_squared == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("samples", [[], [(1, 2)], [(1, 2), (1, 3), (1, 4)]])
def test_degenerate(samples):
    with pytest.raises(DegenerateFitError):
        fit_line(samples)


def test_matches_polyfit():
    rng = np.random.default_rng(7)
    x = rng.uniform(0, 20, 50)
    y = 0.3 * x - 1.2 + rng.normal(0, 0.1, 50)
    res = fit_arrays(x, y)
    slope, intercept = np.polyfit(x, y, 1)
    assert res.slope == pytest.approx(slope, rel=1e-10)
    assert res.intercept == pytest.approx(intercept, rel=1e-10)
    assert res.r_squared == pytest.approx(np.corrcoef(x, y)[0, 1] ** 2, rel=1e-10)


finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
sample_lists = st.lists(st.tuples(finite, finite), min_size=3, max_size=30).filter(
    lambda s: np.ptp([p[0] for p in s]) > 1e-2
)


@given(sample_lists)
def test_residual_orthogonality(samples):
    x, y = map(np.array, zip(*samples))
    res = fit_arrays(x, y)
    resid = y - res.predict(x)
    scale = max(1.0, np.abs(y).max()) * len(x)
    assert abs(resid.sum()) <= 1e-9 * scale
    assert abs((x * resid).sum()) <= 1e-9 * scale * max(1.0, np.abs(x).max())
    assert 0.0 <= res.r_squared <= 1.0


@given(sample_lists, st.floats(min_value=-10, max_value=10).filter(lambda c: abs(c) > 1e-3), finite)
def test_affine_equivariance(samples, c, d):
    x, y = map(np.array, zip(*samples))
    base = fit_arrays(x, y)
    moved = fit_arrays(x, c * y + d)
    tol = 1e-7 * (1 + abs(c) * (abs(base.slope) + abs(base.intercept)) + abs(d))
    assert moved.slope == pytest.approx(c * base.slope, abs=tol)
    assert moved.intercept == pytest.approx(c * base.intercept + d, abs=tol)


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_collinear_r_squared_is_one(slope, intercept):
    x = np.linspace(0, 10, 11)
    assert fit_arrays(x, slope * x + intercept).r_squared == pytest.approx(1.0, abs=1e-12)
