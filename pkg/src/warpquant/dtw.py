"""Banded dynamic time warping with full warping-path recovery.

The aligner restricts admissible paths to a Sakoe-Chiba band of radius
``window_radius`` around the main diagonal and uses the generalized
pointwise cost ``|a - b| ** gamma``.  Ties between equal-cost optima are
broken deterministically: the path prefers diagonal steps, then steps that
advance the second series, then steps that advance the first, with the
preference applied from the start of the path.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BandTooNarrow, EmptyInput, InvalidInput


@dataclass
class TimeSeries:
    """Uniformly sampled real-valued sequence.

    Parameters
    ----------
    samples : array-like
        Sequence values; must be finite and non-empty.
    sample_period : float
        Seconds between consecutive samples, > 0.
    """

    samples: np.ndarray
    sample_period: float = 1.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise InvalidInput("samples must be one-dimensional")
        if self.samples.size == 0:
            raise EmptyInput("time series must contain at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidInput("time series contains non-finite samples")
        if not (self.sample_period > 0):
            raise InvalidInput("sample_period must be positive")

    def __len__(self):
        return self.samples.size


@dataclass
class DtwParams:
    """Alignment parameters: band radius (samples) and cost exponent."""

    window_radius: int
    gamma: float = 1.0

    def __post_init__(self):
        if self.window_radius < 0 or int(self.window_radius) != self.window_radius:
            raise InvalidInput("window_radius must be a nonnegative integer")
        self.window_radius = int(self.window_radius)
        if not (self.gamma > 0):
            raise InvalidInput("gamma must be positive")


class WarpPath:
    """Monotone sequence of 1-based index pairs from (1,1) to (N,M).

    Each step advances one or both indices by exactly one, so the length L
    satisfies max(N, M) <= L <= N + M - 1.
    """

    def __init__(self, i_indices, j_indices):
        self.i = np.asarray(i_indices, dtype=np.int64)
        self.j = np.asarray(j_indices, dtype=np.int64)
        if self.i.size == 0 or self.i.size != self.j.size:
            raise InvalidInput("path index arrays must be non-empty and equal length")
        if self.i[0] != 1 or self.j[0] != 1:
            raise InvalidInput("path must start at (1, 1)")
        di = np.diff(self.i)
        dj = np.diff(self.j)
        if not (np.all((di == 0) | (di == 1)) and np.all((dj == 0) | (dj == 1))
                and np.all(di + dj >= 1)):
            raise InvalidInput("path steps must be (+1,0), (0,+1) or (+1,+1)")

    def __len__(self):
        return self.i.size

    @property
    def n(self):
        return int(self.i[-1])

    @property
    def m(self):
        return int(self.j[-1])

    @property
    def pairs(self):
        return list(zip(self.i.tolist(), self.j.tolist()))

    def max_band_offset(self):
        return int(np.max(np.abs(self.i - self.j)))


@dataclass
class AlignmentResult:
    """Cumulative alignment cost and the path that attains it."""

    distance: float
    path: WarpPath


def pointwise_cost(a, b, gamma):
    """Generalized pointwise distance ``|a - b| ** gamma`` for gamma > 0."""
    if not (np.isfinite(a) and np.isfinite(b)):
        raise InvalidInput("pointwise cost requires finite inputs")
    if not (gamma > 0):
        raise InvalidInput("gamma must be positive")
    d = abs(a - b)
    if gamma == 1.0:
        return d
    if gamma == 2.0:
        return d * d
    return d ** gamma


@njit(cache=True, nogil=True)
def _cost_to_go(x, y, w, gamma):
    # r[i, j - i + w] = minimal cost of a path from (i, j) to (n-1, m-1),
    # including the cost at (i, j) itself.  Filled back to front.
    n = x.shape[0]
    m = y.shape[0]
    width = 2 * w + 1
    r = np.full((n, width), np.inf)
    for i in range(n - 1, -1, -1):
        jlo = i - w
        if jlo < 0:
            jlo = 0
        jhi = i + w
        if jhi > m - 1:
            jhi = m - 1
        for j in range(jhi, jlo - 1, -1):
            d = x[i] - y[j]
            if d < 0:
                d = -d
            if gamma == 1.0:
                c = d
            elif gamma == 2.0:
                c = d * d
            else:
                c = d ** gamma
            if i == n - 1 and j == m - 1:
                r[i, j - i + w] = c
                continue
            best = np.inf
            if i + 1 < n and j + 1 < m:
                v = r[i + 1, j - i + w]
                if v < best:
                    best = v
            if j + 1 < m and j + 1 - i <= w:
                v = r[i, j + 1 - i + w]
                if v < best:
                    best = v
            if i + 1 < n and j - i - 1 >= -w:
                v = r[i + 1, j - i - 1 + w]
                if v < best:
                    best = v
            r[i, j - i + w] = c + best
    return r


@njit(cache=True, nogil=True)
def _walk_path(r, n, m, w):
    # Greedy walk from (0, 0) along minimal cost-to-go; ties prefer the
    # diagonal step, then advancing j, then advancing i.
    max_len = n + m - 1
    pi = np.empty(max_len, np.int64)
    pj = np.empty(max_len, np.int64)
    i = 0
    j = 0
    pi[0] = 0
    pj[0] = 0
    t = 1
    while i < n - 1 or j < m - 1:
        best = np.inf
        di = 0
        dj = 0
        if i + 1 < n and j + 1 < m:
            v = r[i + 1, j - i + w]
            if v < best:
                best = v
                di = 1
                dj = 1
        if j + 1 < m and j + 1 - i <= w:
            v = r[i, j + 1 - i + w]
            if v < best:
                best = v
                di = 0
                dj = 1
        if i + 1 < n and j - i - 1 >= -w:
            v = r[i + 1, j - i - 1 + w]
            if v < best:
                best = v
                di = 1
                dj = 0
        i += di
        j += dj
        pi[t] = i
        pj[t] = j
        t += 1
    return pi[:t], pj[:t]


def _as_samples(series):
    if isinstance(series, TimeSeries):
        return series.samples
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInput("expected a one-dimensional sequence")
    if arr.size == 0:
        raise EmptyInput("cannot align an empty sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("sequence contains non-finite samples")
    return arr


def dtw_align(x, y, params):
    """Align two sequences inside a Sakoe-Chiba band.

    Parameters
    ----------
    x, y : TimeSeries or array-like
        Sequences to align (lengths N and M, both >= 1).
    params : DtwParams
        Band radius ``w`` (must satisfy w >= |N - M|) and cost exponent.

    Returns
    -------
    AlignmentResult
        Minimal cumulative cost over all admissible monotone paths, and a
        path attaining it.  Deterministic for fixed inputs.

    Raises
    ------
    BandTooNarrow
        If ``w < |N - M|`` so no admissible path reaches (N, M).
    EmptyInput
        If either sequence is empty.
    """
    xs = _as_samples(x)
    ys = _as_samples(y)
    n = xs.size
    m = ys.size
    w = params.window_radius
    if abs(n - m) > w:
        raise BandTooNarrow(
            f"window radius {w} < length gap {abs(n - m)} (N={n}, M={m})")
    r = _cost_to_go(xs, ys, w, float(params.gamma))
    pi, pj = _walk_path(r, n, m, w)
    path = WarpPath(pi + 1, pj + 1)
    return AlignmentResult(distance=float(r[0, w]), path=path)


def path_cost(x, y, path, gamma):
    """Re-sum the pointwise cost along an explicit path."""
    xs = _as_samples(x)
    ys = _as_samples(y)
    d = np.abs(xs[path.i - 1] - ys[path.j - 1])
    if gamma == 1.0:
        c = d
    elif gamma == 2.0:
        c = d * d
    else:
        c = d ** gamma
    return float(np.sum(c))
