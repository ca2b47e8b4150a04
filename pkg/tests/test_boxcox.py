import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from intreg.boxcox import (
    LAMBDA_GRID,
    BoxCoxTransform,
    apply,
    invert,
    ranges_nonnegative,
    select_lambda,
)
from intreg.datasets import load_bundled
from intreg.exceptions import BoxCoxInfeasible, NonPositiveDomain, OutOfImage
from intreg.interval import Interval, IntervalDataset
from intreg.validation import bound_design

# Fails the range pre-check untransformed; lambda = 0.7 restores it.
NEEDS_BOX_COX = IntervalDataset(
    np.array([[4.3], [4.9], [3.7], [6.3], [5.8]]), np.array([[5.7], [6.5], [4.6], [6.6], [7.5]]),
    np.array([3.4, 6.4, 8.9, 6.5, 8.2]), np.array([3.5, 7.9, 9.2, 8.7, 10.6]))
# No power on the grid helps.
INFEASIBLE = IntervalDataset(
    np.array([[5.8], [3.8], [5.4], [3.6], [1.8]]), np.array([[5.9], [5.5], [7.1], [3.9], [2.4]]),
    np.array([4.4, 8.5, 3.6, 5.2, 0.6]), np.array([4.6, 10.4, 4.9, 5.5, 2.4]))


def test_grid_order():
    assert LAMBDA_GRID[0] == 1.0 and LAMBDA_GRID[-1] == -1.0 and len(LAMBDA_GRID) == 21
    assert 0.0 in LAMBDA_GRID
    assert all(a > b for a, b in zip(LAMBDA_GRID, LAMBDA_GRID[1:]))


def test_apply_hand_cases():
    assert apply(BoxCoxTransform(1.0), Interval(2, 5)) == Interval(1, 4)
    v = apply(BoxCoxTransform(0.0), Interval(1, math.e))
    assert v.lo == 0.0 and v.hi == pytest.approx(1.0)
    assert apply(BoxCoxTransform(0.5), Interval(4, 9)) == Interval(2, 4)


def test_invert_hand_cases():
    v = invert(BoxCoxTransform(0.0), Interval(0, 1))
    assert v.lo == 1.0 and v.hi == pytest.approx(math.e)
    assert invert(BoxCoxTransform(1.0, shift=0.5), Interval(2, 3)) == Interval(2.5, 3.5)


def test_domain_and_image_errors():
    with pytest.raises(NonPositiveDomain):
        apply(BoxCoxTransform(0.5), Interval(-1, 2))
    with pytest.raises(OutOfImage):
        invert(BoxCoxTransform(0.5), Interval(-3, 0))
    with pytest.raises(OutOfImage):
        invert(BoxCoxTransform(-0.5), Interval(1, 2.5))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(LAMBDA_GRID), st.floats(1e-3, 50), st.floats(0, 50))
def test_round_trip(lmbda, lo, width):
    t = BoxCoxTransform(lmbda)
    v = Interval(lo, lo + width)
    w = apply(t, v)
    assert w.lo <= w.hi
    back = invert(t, w)
    assert back.lo == pytest.approx(v.lo, abs=1e-10, rel=1e-10)
    assert back.hi == pytest.approx(v.hi, abs=1e-10, rel=1e-10)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(LAMBDA_GRID), st.floats(1e-3, 100), st.floats(1e-6, 10))
def test_strictly_increasing(lmbda, a, gap):
    t = BoxCoxTransform(lmbda)
    lo, hi = t.forward([a, a + gap + 1e-6 * a])
    assert lo < hi


@pytest.mark.parametrize("lmbda", [0.5, 0.0, -0.7])
def test_round_trip_bundled_regressand(lmbda):
    ds = load_bundled("set-12")
    t = BoxCoxTransform(lmbda)
    for lo, hi in zip(ds.y_lo, ds.y_hi):
        back = invert(t, apply(t, Interval(lo, hi)))
        assert abs(back.lo - lo) < 1e-10 and abs(back.hi - hi) < 1e-10


def test_select_lambda_identity_when_precheck_passes():
    t = select_lambda(load_bundled("set-1"))
    assert t.lmbda == 1.0 and t.shift == 0.0


def test_select_lambda_equal_intervals():
    ds = IntervalDataset(np.array([[1.0], [2.0], [4.0]]), np.array([[2.0], [2.5], [5.0]]),
                         np.full(3, 3.0), np.full(3, 4.0))
    assert select_lambda(ds).lmbda == 1.0


def test_select_lambda_restores_ranges():
    design = bound_design(NEEDS_BOX_COX.x_lo, NEEDS_BOX_COX.x_hi)
    assert not ranges_nonnegative(design, NEEDS_BOX_COX.y_hi - NEEDS_BOX_COX.y_lo)[0]
    t = select_lambda(NEEDS_BOX_COX)
    assert t.lmbda == 0.7
    w = t.forward(NEEDS_BOX_COX.y_hi) - t.forward(NEEDS_BOX_COX.y_lo)
    assert ranges_nonnegative(design, w)[0]


def test_select_lambda_shift_for_nonpositive_data():
    ds = IntervalDataset(NEEDS_BOX_COX.x_lo, NEEDS_BOX_COX.x_hi,
                         NEEDS_BOX_COX.y_lo - 10, NEEDS_BOX_COX.y_hi - 10)
    t = select_lambda(ds)
    assert t.shift == pytest.approx(1e-6 - (3.4 - 10))
    assert np.all(ds.y_lo + t.shift > 0)


def test_select_lambda_infeasible():
    with pytest.raises(BoxCoxInfeasible):
        select_lambda(INFEASIBLE)
