import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import enum_all_path_costs, enum_min_cost
from warpquant.dtw import (AlignmentResult, DtwParams, TimeSeries, WarpPath,
                           dtw_align, path_cost, pointwise_cost)
from warpquant.errors import BandTooNarrow, EmptyInput, InvalidInput


def test_pointwise_cost_examples():
    assert pointwise_cost(1, 3, 2) == 4
    assert pointwise_cost(7.5, 7.5, 0.7) == 0
    assert pointwise_cost(0.5, -0.5, 1) == 1


def test_pointwise_cost_rejects_bad_input():
    with pytest.raises(InvalidInput):
        pointwise_cost(float("nan"), 0, 1)
    with pytest.raises(InvalidInput):
        pointwise_cost(0, float("inf"), 2)
    with pytest.raises(InvalidInput):
        pointwise_cost(1, 2, 0)


def test_identical_inputs_align_diagonally():
    res = dtw_align([1, 2, 3], [1, 2, 3], DtwParams(3, 1.0))
    assert res.distance == 0
    assert res.path.pairs == [(1, 1), (2, 2), (3, 3)]


def test_tiebreak_prefers_diagonal_from_the_start():
    # two cost-1 optima exist; the diagonal-first preference applied from
    # the start selects the one whose first step is diagonal
    res = dtw_align([0, 1, 2], [0, 2], DtwParams(2, 1.0))
    assert res.distance == 1
    assert res.path.pairs == [(1, 1), (2, 2), (3, 2)]


def test_constant_offset_pair():
    res = dtw_align([0, 0], [1, 1], DtwParams(2, 1.0))
    assert res.distance == 2
    assert res.path.pairs == [(1, 1), (2, 2)]


def test_band_too_narrow():
    with pytest.raises(BandTooNarrow):
        dtw_align([1, 2, 3, 4, 5], [1], DtwParams(1, 1.0))


def test_empty_input():
    with pytest.raises(EmptyInput):
        dtw_align([], [1, 2], DtwParams(2, 1.0))
    with pytest.raises(EmptyInput):
        TimeSeries([])


def test_timeseries_validation():
    with pytest.raises(InvalidInput):
        TimeSeries([1.0, float("nan")])
    with pytest.raises(InvalidInput):
        TimeSeries([1.0], sample_period=0.0)
    with pytest.raises(InvalidInput):
        DtwParams(-1, 1.0)
    with pytest.raises(InvalidInput):
        DtwParams(3, 0.0)


def test_warp_path_validation():
    with pytest.raises(InvalidInput):
        WarpPath([2, 3], [1, 2])  # does not start at (1, 1)
    with pytest.raises(InvalidInput):
        WarpPath([1, 3], [1, 1])  # step larger than one
    with pytest.raises(InvalidInput):
        WarpPath([1, 1], [1, 1])  # no step at all


def test_single_sample_alignment():
    res = dtw_align([2.0], [5.0], DtwParams(0, 2.0))
    assert res.distance == 9.0
    assert res.path.pairs == [(1, 1)]


def test_matches_enumeration_on_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(2, 8))
        m = int(rng.integers(2, 8))
        w = int(rng.integers(abs(n - m), max(n, m) + 1))
        gamma = float(rng.choice([1.0, 2.0]))
        x = rng.normal(size=n)
        y = rng.normal(size=m)
        res = dtw_align(x, y, DtwParams(w, gamma))
        assert res.distance == enum_min_cost(x, y, w, gamma)
        # re-summed path cost agrees to float tolerance
        resum = path_cost(x, y, res.path, gamma)
        assert resum == pytest.approx(res.distance, rel=1e-12)
        # path invariants
        p = res.path
        assert (p.i[0], p.j[0]) == (1, 1)
        assert (p.i[-1], p.j[-1]) == (n, m)
        assert p.max_band_offset() <= w
        assert max(n, m) <= len(p) <= n + m - 1


def test_returned_path_is_among_enumerated_optima():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(2, 6))
        w = int(rng.integers(abs(n - m), max(n, m) + 1))
        x = rng.normal(size=n)
        y = rng.normal(size=m)
        res = dtw_align(x, y, DtwParams(w, 1.0))
        costs = enum_all_path_costs(x, y, w, 1.0)
        assert res.distance == min(costs)


def test_distance_symmetry_exact():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(1, 12))
        m = int(rng.integers(1, 12))
        w = abs(n - m) + int(rng.integers(0, 5))
        x = rng.normal(size=n)
        y = rng.normal(size=m)
        params = DtwParams(w, float(rng.choice([1.0, 2.0, 0.5])))
        assert dtw_align(x, y, params).distance == dtw_align(y, x, params).distance


def test_distance_nonincreasing_in_window():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(2, 15))
        m = int(rng.integers(2, 15))
        x = rng.normal(size=n)
        y = rng.normal(size=m)
        prev = None
        for w in range(abs(n - m), max(n, m) + 1):
            d = dtw_align(x, y, DtwParams(w, 1.0)).distance
            if prev is not None:
                assert d <= prev + 1e-12
            prev = d


@settings(max_examples=60, deadline=None)
@given(
    x=st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=8),
    y=st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=8),
    extra=st.integers(0, 4),
)
def test_property_alignment_invariants(x, y, extra):
    w = abs(len(x) - len(y)) + extra
    res = dtw_align(x, y, DtwParams(w, 1.0))
    p = res.path
    assert res.distance >= 0
    assert (p.i[0], p.j[0]) == (1, 1)
    assert (p.i[-1], p.j[-1]) == (len(x), len(y))
    assert p.max_band_offset() <= w
    assert max(len(x), len(y)) <= len(p) <= len(x) + len(y) - 1
    assert path_cost(x, y, p, 1.0) == pytest.approx(res.distance, rel=1e-12, abs=1e-12)


def test_alignment_result_fields():
    res = dtw_align([1.0, 2.0], [1.0, 2.0], DtwParams(1, 1.0))
    assert isinstance(res, AlignmentResult)
    assert isinstance(res.path, WarpPath)
    assert res.path.n == 2 and res.path.m == 2
