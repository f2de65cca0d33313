import json

import numpy as np
import pytest

from warpquant.dtw import DtwParams, TimeSeries, dtw_align
from warpquant.errors import ConstraintViolation, InvalidInput
from warpquant.signals import (BandLimits, ScenarioSpec, WarpField,
                               default_grid, gen_bandlimited_gaussian,
                               interp_monotone_cubic, make_scenario,
                               scenario_spec_for, validate_scenario,
                               warp_resample)

BAND = BandLimits(0.01, 0.1)


def test_generator_deterministic():
    a = gen_bandlimited_gaussian(1000, 1.0, BAND, 42)
    b = gen_bandlimited_gaussian(1000, 1.0, BAND, 42)
    assert np.array_equal(a.samples, b.samples)
    c = gen_bandlimited_gaussian(1000, 1.0, BAND, 43)
    assert not np.array_equal(a.samples, c.samples)


def test_generator_standardized():
    for seed in range(5):
        s = gen_bandlimited_gaussian(500, 1.0, BAND, seed).samples
        assert np.mean(s) == pytest.approx(0, abs=1e-9)
        assert np.std(s, ddof=1) == pytest.approx(1, abs=1e-9)


def test_generator_band_limited():
    s = gen_bandlimited_gaussian(1000, 1.0, BAND, 3).samples
    power = np.abs(np.fft.rfft(s)) ** 2
    freqs = np.fft.rfftfreq(1000, 1.0)
    outside = power[(freqs < BAND.f_lo) | (freqs > BAND.f_hi)].sum()
    assert outside / power.sum() < 0.01


def test_generator_validates_band():
    with pytest.raises(InvalidInput):
        gen_bandlimited_gaussian(100, 1.0, BandLimits(0.3, 0.6), 0)
    with pytest.raises(InvalidInput):
        gen_bandlimited_gaussian(8, 1.0, BAND, 0)
    with pytest.raises(InvalidInput):
        # no DFT bin inside an ultra-narrow band
        gen_bandlimited_gaussian(32, 1.0, BandLimits(0.011, 0.012), 0)


def test_interp_passes_through_knots():
    rng = np.random.default_rng(0)
    y = rng.normal(size=30)
    at = np.arange(30, dtype=float)
    assert np.array_equal(interp_monotone_cubic(y, at), y)


def test_interp_shape_preserving():
    # between any two knots the interpolant stays inside the knot range
    rng = np.random.default_rng(4)
    for _ in range(20):
        y = rng.normal(size=25)
        q = rng.uniform(0, 24, size=400)
        v = interp_monotone_cubic(y, q)
        seg = np.minimum(q.astype(int), 23)
        lo = np.minimum(y[seg], y[seg + 1])
        hi = np.maximum(y[seg], y[seg + 1])
        assert np.all(v >= lo - 1e-12)
        assert np.all(v <= hi + 1e-12)


def test_interp_monotone_on_monotone_data():
    y = np.array([0.0, 0.1, 0.2, 3.0, 3.1, 9.0, 9.05, 9.1])
    q = np.linspace(0, 7, 500)
    v = interp_monotone_cubic(y, q)
    assert np.all(np.diff(v) >= -1e-12)


def test_interp_clamps_outside_range():
    y = np.array([1.0, 2.0, 3.0])
    assert interp_monotone_cubic(y, np.array([-5.0]))[0] == 1.0
    assert interp_monotone_cubic(y, np.array([99.0]))[0] == 3.0


def test_warp_identity():
    x = gen_bandlimited_gaussian(200, 1.0, BAND, 1)
    y = warp_resample(x, WarpField(np.zeros(200)))
    assert np.array_equal(y.samples, x.samples)


def test_warp_integer_shift_and_clamp():
    x = gen_bandlimited_gaussian(200, 1.0, BAND, 2)
    y = warp_resample(x, WarpField(np.full(200, 3.0)))
    assert np.allclose(y.samples[:-3], x.samples[3:], atol=1e-12)
    assert np.allclose(y.samples[-3:], x.samples[-1], atol=1e-12)
    # displacement far beyond the last sample pins the output there
    y = warp_resample(x, WarpField(np.full(200, 1e6)))
    assert np.allclose(y.samples, x.samples[-1])


def test_warp_respects_sample_period():
    x = TimeSeries(np.arange(50, dtype=float), sample_period=0.5)
    y = warp_resample(x, WarpField(np.full(50, 1.0)))  # 1 s = 2 samples
    assert np.allclose(y.samples[:-2], x.samples[2:], atol=1e-12)


def test_warp_length_mismatch():
    x = gen_bandlimited_gaussian(100, 1.0, BAND, 0)
    with pytest.raises(InvalidInput):
        warp_resample(x, WarpField(np.zeros(99)))


def test_scenario_determinism():
    for kind in ("S1", "S2", "S3", "S4", "S5", "S6"):
        grid = default_grid(kind)
        a = make_scenario(scenario_spec_for(kind, grid[4], seed=11))
        b = make_scenario(scenario_spec_for(kind, grid[4], seed=11))
        assert np.array_equal(a.x.samples, b.x.samples)
        assert np.array_equal(a.y.samples, b.y.samples)
        assert a.driver == b.driver


def test_s1_zero_frequency_is_identity():
    inst = make_scenario(scenario_spec_for("S1", 0.0, seed=5))
    assert np.array_equal(inst.x.samples, inst.y.samples)


def test_s6_zero_alpha_is_identity():
    inst = make_scenario(scenario_spec_for("S6", 0.0, seed=5))
    assert np.array_equal(inst.x.samples, inst.y.samples)


def test_s2_zero_offset_matches_shared_block():
    spec = ScenarioSpec("S2", {"P": 300, "s": 350, "mu": 0.0}, seed=9)
    inst = make_scenario(spec)
    assert np.array_equal(inst.y.samples[349:649], inst.x.samples[349:649])
    # outside the block the channels are independent noise
    assert not np.allclose(inst.y.samples[:349], inst.x.samples[:349])


def test_s4_shared_block_bitwise():
    spec = ScenarioSpec("S4", {"P": 250, "s": 100}, seed=9)
    inst = make_scenario(spec)
    assert np.array_equal(inst.y.samples[99:349], inst.x.samples[99:349])


def test_s1_constraint_violation():
    with pytest.raises(ConstraintViolation):
        validate_scenario(ScenarioSpec("S1", {"A": 20.0, "f": 0.02}))


def test_s3_s5_constraint_violations():
    with pytest.raises(ConstraintViolation):
        validate_scenario(ScenarioSpec("S3", {"mu": 40.0, "A": 10.0, "c": 0.2}))
    with pytest.raises(ConstraintViolation):
        validate_scenario(ScenarioSpec("S5", {"A": 30.0, "f": 0.01}))


def test_block_out_of_range():
    with pytest.raises(InvalidInput):
        validate_scenario(ScenarioSpec("S2", {"P": 900, "s": 200, "mu": 0.0}))
    with pytest.raises(InvalidInput):
        validate_scenario(ScenarioSpec("S4", {"P": 100, "s": 0}))


def test_warp_monotonicity_for_warped_scenarios():
    for kind in ("S1", "S3", "S5"):
        grid = default_grid(kind)
        for value in (grid[0], grid[-1]):
            spec = scenario_spec_for(kind, value, seed=2)
            p = spec.parameters
            n, ts = spec.n, spec.Ts
            t = np.arange(n) * ts
            if kind == "S1":
                u = (p["A"] * ts / 2) * (1 - np.cos(2 * np.pi * p["f"] * t))
            elif kind == "S3":
                u = ts * (p["mu"] + p["A"] * np.cos(2 * np.pi * (p["c"] / p["A"]) * t))
            else:
                from warpquant.signals import _triangle_wave
                u = p["A"] * ts * _triangle_wave(p["f"] * t)
            assert WarpField(u).is_strictly_increasing(ts)


def test_s6_metrics_stay_near_diagonal():
    # mild distortion: offsets exist but the path hugs the diagonal in the
    # median sense, keeping the median-based descriptors at zero
    inst = make_scenario(scenario_spec_for("S6", 0.5, seed=14))
    res = dtw_align(inst.x, inst.y, DtwParams(200, 1.0))
    wd = np.abs(res.path.i - res.path.j)
    assert np.median(wd) == 0


def test_scenario_spec_json_round_trip():
    spec = scenario_spec_for("S3", 17.5, seed=77)
    doc = json.loads(json.dumps(spec.to_json_dict()))
    back = ScenarioSpec.from_json_dict(doc)
    assert back == spec


def test_default_grids_satisfy_constraints():
    for kind in ("S1", "S2", "S3", "S4", "S5", "S6"):
        grid = default_grid(kind)
        assert grid.size == 12
        assert np.all(np.diff(grid) > 0)
        for value in grid:
            validate_scenario(scenario_spec_for(kind, value))


def test_timeseries_csv_round_trip(tmp_path):
    from warpquant.csvio import load_timeseries_csv, write_timeseries_csv
    x = gen_bandlimited_gaussian(64, 1.0, BAND, 8)
    path = tmp_path / "x.csv"
    write_timeseries_csv(path, x)
    assert path.read_text().startswith("value\n")
    back = load_timeseries_csv(path)
    assert np.array_equal(back.samples, x.samples)
