"""Band-limited signal generation, warp resampling, and test scenarios.

A base signal is drawn as white Gaussian noise, band-limited with a hard
frequency-domain mask, and z-scored.  Warped counterparts are produced by
evaluating a shape-preserving (monotone piecewise-cubic) interpolant of
the base signal at displaced times ``t' = t + u(t)``.

Six scenario constructions each isolate one ground-truth driver:

* S1 -- lifted-cosine displacement; sweeping the frequency inflates path
  length (targets ``wdr``).
* S2 -- a shared block embedded with a fixed temporal offset inside
  otherwise-independent noise (targets ``cwd``).
* S3 -- oscillatory displacement around a fixed offset, amplitude swept
  with frequency scaled inversely (targets ``wdv``).
* S4 -- an identical shared block of swept length (targets the diagonal
  run length).
* S5 -- triangle-wave displacement with swept frequency (targets ``dcr``).
* S6 -- pointwise nonlinear distortion with no timing change (targets the
  alignment distance).
"""

from dataclasses import dataclass, field

import numpy as np

from .dtw import TimeSeries
from .errors import ConstraintViolation, InvalidInput
from .stats import zscore

SCENARIO_KINDS = ("S1", "S2", "S3", "S4", "S5", "S6")

# derived-stream seed offset so block scenarios get independent noise
_NOISE_SEED_SALT = 0x9E3779B97F4A7C15


@dataclass
class BandLimits:
    """Passband [f_lo, f_hi] in Hz; must sit below the Nyquist frequency."""

    f_lo: float
    f_hi: float

    def validate(self, sample_period):
        nyquist = 0.5 / sample_period
        if not (0.0 <= self.f_lo < self.f_hi < nyquist):
            raise InvalidInput(
                f"band [{self.f_lo}, {self.f_hi}] invalid for Nyquist {nyquist}")


@dataclass
class WarpField:
    """Displacement u(t) in seconds, one value per sample: t' = t + u(t)."""

    u: np.ndarray

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.float64)
        if self.u.ndim != 1 or not np.all(np.isfinite(self.u)):
            raise InvalidInput("warp displacements must be a finite 1-D sequence")

    def is_strictly_increasing(self, sample_period):
        t = np.arange(self.u.size) * sample_period
        return bool(np.all(np.diff(t + self.u) > 0))


def gen_bandlimited_gaussian(n, sample_period, band, seed):
    """Seeded band-limited Gaussian signal, z-scored to mean 0 / std 1.

    White noise is masked in the frequency domain (bins outside
    [f_lo, f_hi] zeroed), transformed back, and standardized, so the
    out-of-band power of the result is zero up to rounding.
    """
    if n < 16:
        raise InvalidInput("need at least 16 samples for band-limited generation")
    band.validate(sample_period)
    freqs = np.fft.rfftfreq(n, d=sample_period)
    mask = (freqs >= band.f_lo) & (freqs <= band.f_hi)
    if not mask.any():
        raise InvalidInput(
            f"no DFT bins fall inside [{band.f_lo}, {band.f_hi}] Hz for n={n}")
    rng = np.random.default_rng(seed)
    spectrum = np.fft.rfft(rng.standard_normal(n))
    spectrum[~mask] = 0.0
    return TimeSeries(zscore(np.fft.irfft(spectrum, n)), sample_period)


def _monotone_slopes(y):
    # Fritsch-Carlson style tangents on a uniform unit grid: mean of the
    # adjacent secants, zeroed at local extrema and capped at three times
    # the smaller neighboring secant so no segment overshoots its knots.
    n = y.size
    d = np.diff(y)
    m = np.empty(n)
    m[0] = d[0]
    m[-1] = d[-1]
    m[1:-1] = np.where(np.sign(d[:-1]) * np.sign(d[1:]) > 0,
                       0.5 * (d[:-1] + d[1:]), 0.0)
    cap = np.full(n, np.inf)
    cap[:-1] = 3.0 * np.abs(d)
    cap[1:] = np.minimum(cap[1:], 3.0 * np.abs(d))
    return np.sign(m) * np.minimum(np.abs(m), cap)


def interp_monotone_cubic(values, at):
    """Evaluate the shape-preserving cubic interpolant of uniformly spaced
    values at fractional sample positions, clamped to [0, n-1]."""
    y = np.asarray(values, dtype=np.float64)
    if y.size < 2:
        return np.full(np.shape(at), y[0] if y.size else np.nan)
    q = np.clip(np.asarray(at, dtype=np.float64), 0.0, y.size - 1.0)
    seg = np.minimum(q.astype(np.int64), y.size - 2)
    t = q - seg
    m = _monotone_slopes(y)
    t2 = t * t
    t3 = t2 * t
    h00 = 2.0 * t3 - 3.0 * t2 + 1.0
    h10 = t3 - 2.0 * t2 + t
    h01 = -2.0 * t3 + 3.0 * t2
    h11 = t3 - t2
    return h00 * y[seg] + h10 * m[seg] + h01 * y[seg + 1] + h11 * m[seg + 1]


def warp_resample(x: TimeSeries, field: WarpField):
    """Resample a series at displaced times via the monotone interpolant.

    Query times outside the sampled range are clamped to the first/last
    sample, and no new local extrema appear between original knots.
    """
    if len(field.u) != len(x):
        raise InvalidInput(
            f"warp field length {len(field.u)} != series length {len(x)}")
    positions = np.arange(len(x)) + field.u / x.sample_period
    return TimeSeries(interp_monotone_cubic(x.samples, positions),
                      x.sample_period)


@dataclass
class ScenarioSpec:
    """Parameterization of one scenario instance.

    ``parameters`` holds the kind-specific record: S1 {A, f}, S2 {P, s, mu},
    S3 {mu, A, c}, S4 {P, s}, S5 {A, f}, S6 {alpha}.  Amplitudes and
    offsets are in samples, frequencies in Hz, s is a 1-based start index.
    """

    kind: str
    parameters: dict
    n: int = 1000
    Ts: float = 1.0
    band: BandLimits = field(default_factory=lambda: BandLimits(0.01, 0.1))
    seed: int = 0

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "n": self.n,
            "Ts": self.Ts,
            "band": {"f_lo": self.band.f_lo, "f_hi": self.band.f_hi},
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, doc):
        band = doc.get("band", {})
        return cls(kind=doc["kind"], parameters=dict(doc["parameters"]),
                   n=int(doc.get("n", 1000)), Ts=float(doc.get("Ts", 1.0)),
                   band=BandLimits(float(band.get("f_lo", 0.01)),
                                   float(band.get("f_hi", 0.1))),
                   seed=int(doc.get("seed", 0)))


@dataclass
class ScenarioInstance:
    """A generated pair plus the ground-truth driver value."""

    x: TimeSeries
    y: TimeSeries
    driver: float


# fixed parameters, swept parameter, sweep range, integer grid flag
SCENARIO_DEFAULTS = {
    "S1": ({"A": 20.0}, "f", 0.001, 0.012, False),
    "S2": ({"P": 600, "s": 200}, "mu", 0.0, 80.0, False),
    "S3": ({"mu": 40.0, "c": 0.1}, "A", 5.0, 40.0, False),
    "S4": ({"s": 200}, "P", 50, 600, True),
    "S5": ({}, "f", 0.002, 0.01, False),
    "S6": ({}, "alpha", 0.0, 1.0, False),
}

# In the default S5 sweep the triangle amplitude scales inversely with the
# swept frequency so the displacement's total variation, and with it the
# path-length overhead, stays constant across the grid; only the crossing
# rate then responds to the driver.
S5_AMPLITUDE_SCALE = 0.12

DESIGNED_MEASURE = {
    "S1": "wdr",
    "S2": "cwd",
    "S3": "wdv",
    "S4": "one_minus_drl",
    "S5": "dcr",
    "S6": "dtw_distance",
}


def _require(params, kind, *names):
    missing = [k for k in names if k not in params]
    if missing:
        raise InvalidInput(f"scenario {kind} requires parameters {missing}")
    return [float(params[k]) for k in names]


def validate_scenario(spec: ScenarioSpec):
    """Check parameter constraints without generating any data."""
    if spec.kind not in SCENARIO_KINDS:
        raise InvalidInput(f"unknown scenario kind {spec.kind!r}")
    if spec.n < 16:
        raise InvalidInput("scenario length n must be at least 16")
    spec.band.validate(spec.Ts)
    p = spec.parameters
    if spec.kind == "S1":
        amp, f = _require(p, "S1", "A", "f")
        if abs(amp * np.pi * f * spec.Ts) >= 1.0:
            raise ConstraintViolation(
                f"S1 requires A*pi*f < 1 (got {abs(amp * np.pi * f * spec.Ts):.4g})")
    elif spec.kind == "S2":
        block, start, mu = _require(p, "S2", "P", "s", "mu")
        if not (start >= 1 and start + block <= spec.n):
            raise InvalidInput(
                f"S2 block [s={start:g}, s+P={start + block:g}] out of range for n={spec.n}")
        if mu < 0:
            raise InvalidInput("S2 offset mu must be nonnegative")
    elif spec.kind == "S3":
        mu, amp, c = _require(p, "S3", "mu", "A", "c")
        if amp <= 0:
            raise InvalidInput("S3 amplitude A must be positive")
        if abs(2.0 * np.pi * c * spec.Ts) >= 1.0:
            raise ConstraintViolation(
                f"S3 requires 2*pi*c < 1 (got {abs(2.0 * np.pi * c * spec.Ts):.4g})")
    elif spec.kind == "S4":
        block, start = _require(p, "S4", "P", "s")
        if not (start >= 1 and start + block <= spec.n):
            raise InvalidInput(
                f"S4 block [s={start:g}, s+P={start + block:g}] out of range for n={spec.n}")
    elif spec.kind == "S5":
        amp, f = _require(p, "S5", "A", "f")
        if abs(4.0 * amp * f * spec.Ts) >= 1.0:
            raise ConstraintViolation(
                f"S5 requires 4*A*f < 1 (got {abs(4.0 * amp * f * spec.Ts):.4g})")
    elif spec.kind == "S6":
        (alpha,) = _require(p, "S6", "alpha")
        if alpha < 0:
            raise InvalidInput("S6 exponent alpha must be nonnegative")


def _triangle_wave(cycles):
    """Unit triangle wave in cycle units: 0 at phase 0, rising first,
    peaks +-1, 50% duty cycle."""
    phase = np.mod(cycles, 1.0)
    return np.where(phase < 0.25, 4.0 * phase,
                    np.where(phase < 0.75, 2.0 - 4.0 * phase, 4.0 * phase - 4.0))


def make_scenario(spec: ScenarioSpec):
    """Generate one scenario instance; deterministic in the seed."""
    validate_scenario(spec)
    p = spec.parameters
    n, ts = spec.n, spec.Ts
    x = gen_bandlimited_gaussian(n, ts, spec.band, spec.seed)
    t = np.arange(n) * ts

    if spec.kind == "S1":
        amp, f = _require(p, "S1", "A", "f")
        u = (amp * ts / 2.0) * (1.0 - np.cos(2.0 * np.pi * f * t))
        return ScenarioInstance(x, warp_resample(x, WarpField(u)), f)

    if spec.kind == "S2":
        block, start, mu = _require(p, "S2", "P", "s", "mu")
        eta = gen_bandlimited_gaussian(n, ts, spec.band,
                                       spec.seed ^ _NOISE_SEED_SALT)
        y = eta.samples.copy()
        lo = int(start) - 1
        hi = lo + int(block)
        y[lo:hi] = interp_monotone_cubic(x.samples, np.arange(lo, hi) - mu)
        return ScenarioInstance(x, TimeSeries(y, ts), mu)

    if spec.kind == "S3":
        mu, amp, c = _require(p, "S3", "mu", "A", "c")
        u = ts * (mu + amp * np.cos(2.0 * np.pi * (c / amp) * t))
        return ScenarioInstance(x, warp_resample(x, WarpField(u)), amp)

    if spec.kind == "S4":
        block, start = _require(p, "S4", "P", "s")
        eta = gen_bandlimited_gaussian(n, ts, spec.band,
                                       spec.seed ^ _NOISE_SEED_SALT)
        y = eta.samples.copy()
        lo = int(start) - 1
        hi = lo + int(block)
        y[lo:hi] = x.samples[lo:hi]
        return ScenarioInstance(x, TimeSeries(y, ts), block)

    if spec.kind == "S5":
        amp, f = _require(p, "S5", "A", "f")
        u = amp * ts * _triangle_wave(f * t)
        return ScenarioInstance(x, warp_resample(x, WarpField(u)), f)

    # S6: pointwise distortion, no timing change
    (alpha,) = _require(p, "S6", "alpha")
    y = np.sign(x.samples) * np.abs(x.samples) ** (1.0 + alpha)
    return ScenarioInstance(x, TimeSeries(y, ts), alpha)


def default_grid(kind, points=12):
    """Default sweep grid for a scenario's driver parameter."""
    if kind not in SCENARIO_DEFAULTS:
        raise InvalidInput(f"unknown scenario kind {kind!r}")
    _, _, lo, hi, integer = SCENARIO_DEFAULTS[kind]
    grid = np.linspace(lo, hi, points)
    if integer:
        grid = np.unique(np.round(grid).astype(np.int64)).astype(np.float64)
        if grid.size != points:
            raise InvalidInput(
                f"integer grid for {kind} collapses to {grid.size} points")
    return grid


def scenario_spec_for(kind, driver_value, n=1000, sample_period=1.0,
                      band=None, seed=0):
    """Build a ScenarioSpec with default fixed parameters and one swept value."""
    if kind not in SCENARIO_DEFAULTS:
        raise InvalidInput(f"unknown scenario kind {kind!r}")
    fixed, driver_name, _, _, integer = SCENARIO_DEFAULTS[kind]
    params = dict(fixed)
    params[driver_name] = int(driver_value) if integer else float(driver_value)
    if kind == "S5":
        if not driver_value > 0:
            raise InvalidInput("S5 sweep frequency must be positive")
        params["A"] = S5_AMPLITUDE_SCALE / float(driver_value)
    return ScenarioSpec(kind=kind, parameters=params, n=n, Ts=sample_period,
                        band=band or BandLimits(0.01, 0.1), seed=seed)
