import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omnisynth.metrics import compare_models, compare_points, mae, rmse
from omnisynth.synthesis import CiModel, distance_grid

GRID = distance_grid(20, 200, 1)


def test_identical_models():
    m = CiModel.anchored(2.0, 38e9)
    r = compare_models(m, m, GRID)
    assert r.rmse_db == 0.0 and r.mae_db == 0.0


def test_constant_offset():
    a = CiModel(1.0, 64.0, 2.0)
    b = CiModel(1.0, 67.0, 2.0)
    r = compare_models(a, b, GRID)
    assert r.rmse_db == pytest.approx(3.0, abs=1e-12)
    assert r.mae_db == pytest.approx(3.0, abs=1e-12)


def test_grid_size():
    assert compare_models(CiModel(1, 60, 2), CiModel(1, 60, 3), GRID).M == 181


def test_empty_grid():
    with pytest.raises(ValueError):
        compare_models(CiModel(1, 60, 2), CiModel(1, 60, 2), [])


def test_exponent_gap_closed_form():
    # Anchored models differing only in n differ by 10*dn*log10(D).
    a, b = CiModel.anchored(2.7, 38e9), CiModel.anchored(2.5, 38e9)
    r = compare_models(a, b, GRID)
    assert r.mae_db == pytest.approx(np.mean(2.0 * np.log10(GRID)), rel=1e-12)


def test_compare_points():
    m = CiModel(1.0, 60.0, 2.0)
    r = compare_points(m, GRID, m(GRID) + 1.5)
    assert r.rmse_db == pytest.approx(1.5) and r.mae_db == pytest.approx(1.5)
    with pytest.raises(ValueError):
        compare_points(m, GRID, [1.0, 2.0])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=50))
def test_rmse_dominates_mae(resid):
    assert rmse(resid) >= mae(resid) - 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 5), st.floats(0, 5), st.floats(60, 80), st.floats(60, 80))
def test_symmetric(n1, n2, p1, p2):
    a, b = CiModel(1.0, p1, n1), CiModel(1.0, p2, n2)
    r1, r2 = compare_models(a, b, GRID), compare_models(b, a, GRID)
    assert (r1.rmse_db, r1.mae_db) == pytest.approx((r2.rmse_db, r2.mae_db), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-4, 4), st.floats(0.1, 3))
def test_residual_scaling(offset, k):
    ref = CiModel(1.0, 60.0, 2.0)
    r1 = compare_models(ref, CiModel(1.0, 60.0 + offset, 2.0 + 0.3), GRID)
    r2 = compare_models(ref, CiModel(1.0, 60.0 + k * offset, 2.0 + k * 0.3), GRID)
    assert r2.rmse_db == pytest.approx(k * r1.rmse_db, rel=1e-9, abs=1e-12)
    assert r2.mae_db == pytest.approx(k * r1.mae_db, rel=1e-9, abs=1e-12)
