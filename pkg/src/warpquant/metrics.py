"""Warping-path descriptors.

Five unitless measures computed from a warping path:

* ``wdr``  -- warp distortion ratio: excess path length over the minimal
  diagonal, relative to the worst admissible excess.  Range [0, 1).
* ``cwd``  -- central warp deviation: typical absolute offset of the path
  from the diagonal, normalized by the band radius.  Range [0, 1].
* ``wdv``  -- warp deviation variability: dispersion of the absolute
  offset around its central value, normalized by the band radius.
* ``drl``  -- diagonal run length: central length of contiguous diagonal
  runs surviving a dwell threshold, normalized by the step count.
  Reported alongside as ``1 - drl`` so larger always means weaker synchrony.
* ``dcr``  -- diagonal crossing rate: dwell-qualified rate of sign
  reversals of the path offset.

``cwd``, ``wdv`` and ``drl`` accept a central-tendency mode of ``"median"``
(default) or ``"mean"``; in mean mode ``wdv`` uses the sample standard
deviation of the absolute offset.
"""

from dataclasses import dataclass

import numpy as np

from .dtw import WarpPath, dtw_align
from .errors import InvalidInput

MEASURE_NAMES = ("wdr", "cwd", "wdv", "one_minus_drl", "dcr", "dtw_distance")


@dataclass
class WqaReport:
    """The five path descriptors plus alignment distance for one pair."""

    wdr: float
    cwd: float
    wdv: float
    drl: float
    one_minus_drl: float
    dcr: float
    dtw_distance: float

    def to_dict(self):
        return {
            "wdr": self.wdr,
            "cwd": self.cwd,
            "wdv": self.wdv,
            "drl": self.drl,
            "one_minus_drl": self.one_minus_drl,
            "dcr": self.dcr,
            "dtw_distance": self.dtw_distance,
        }


def _central(values, mode):
    if mode == "median":
        return float(np.median(values))
    if mode == "mean":
        return float(np.mean(values))
    raise InvalidInput(f"unknown central-tendency mode {mode!r}")


def _check_dwell(k):
    if int(k) != k or k < 1:
        raise InvalidInput("dwell threshold k must be a positive integer")
    return int(k)


def warp_deviation(path: WarpPath):
    """Signed offset i - j of the path from the diagonal, one value per step."""
    return path.i - path.j


def compute_wdr(path: WarpPath, n, m):
    """Warp distortion ratio (L - max(N,M)) / (N + M - max(N,M))."""
    if path.n != n or path.m != m:
        raise InvalidInput(f"path ends at ({path.n}, {path.m}), not ({n}, {m})")
    top = max(n, m)
    return (len(path) - top) / (n + m - top)


def compute_cwd(path: WarpPath, window_radius, mode="median"):
    """Central tendency of |offset|, normalized by the band radius.

    A zero radius forces the exact diagonal, so the value is 0 by
    definition rather than a division by zero.
    """
    if window_radius == 0:
        return 0.0
    offset = np.abs(warp_deviation(path))
    return _central(offset, mode) / window_radius


def compute_wdv(path: WarpPath, window_radius, mode="median"):
    """Dispersion of |offset| around its central value, normalized by radius.

    Median mode uses the median absolute deviation from the median; mean
    mode uses the sample standard deviation (clamped to 1).
    """
    if window_radius == 0:
        return 0.0
    offset = np.abs(warp_deviation(path)).astype(np.float64)
    if mode == "median":
        med = np.median(offset)
        return float(np.median(np.abs(offset - med))) / window_radius
    if mode == "mean":
        spread = float(np.std(offset, ddof=1)) if offset.size > 1 else 0.0
        return min(1.0, spread / window_radius)
    raise InvalidInput(f"unknown central-tendency mode {mode!r}")


def _run_lengths(flags):
    # lengths of maximal runs of True values
    padded = np.concatenate(([False], flags, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    return edges[1::2] - edges[0::2]


def _rle(values):
    # run-length encode: (run values, run lengths)
    change = np.flatnonzero(values[1:] != values[:-1]) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [values.size]))
    return values[starts], ends - starts


def compute_drl(path: WarpPath, k, mode="median"):
    """Normalized central length of diagonal runs at least k steps long.

    Returns 0 when no run survives the dwell filter.
    """
    k = _check_dwell(k)
    if len(path) < 2:
        raise InvalidInput("diagonal run length is undefined for a single-point path")
    diag = (np.diff(path.i) == 1) & (np.diff(path.j) == 1)
    runs = _run_lengths(diag)
    kept = runs[runs >= k]
    if kept.size == 0:
        return 0.0
    return _central(kept, mode) / (len(path) - 1)


def _resolve_zero_signs(signs):
    # propagate the most recent nonzero sign forward; leading zeros take
    # the first subsequent nonzero sign (caller guarantees one exists)
    nonzero = signs != 0
    idx = np.where(nonzero, np.arange(signs.size), -1)
    np.maximum.accumulate(idx, out=idx)
    idx[idx < 0] = np.flatnonzero(nonzero)[0]
    return signs[idx]


def compute_dcr(path: WarpPath, k):
    """Dwell-qualified rate of sign reversals of the path offset.

    Sign runs are taken after zero-resolution; a crossing counts only when
    both adjacent runs persist for at least k steps.  The rate is clamped
    to 1 because adjacent crossings sharing a middle run can exceed the
    nominal maximum density.
    """
    k = _check_dwell(k)
    if len(path) < 2:
        raise InvalidInput("crossing rate is undefined for a single-point path")
    signs = np.sign(warp_deviation(path))
    if not np.any(signs):
        return 0.0
    values, lengths = _rle(_resolve_zero_signs(signs))
    qualified = ((values[:-1] * values[1:] == -1)
                 & (lengths[:-1] >= k) & (lengths[1:] >= k))
    crossings = int(np.sum(qualified))
    return min(1.0, 2.0 * k / (len(path) - 1) * crossings)


def compute_report(x, y, params, k=3, mode="median"):
    """Align two sequences and compute all five descriptors on the path.

    Parameters
    ----------
    x, y : TimeSeries or array-like
    params : DtwParams
    k : int
        Dwell threshold for the run-based descriptors.
    mode : str
        Central-tendency mode, "median" or "mean".

    Returns
    -------
    WqaReport
    """
    result = dtw_align(x, y, params)
    path = result.path
    drl = compute_drl(path, k, mode)
    return WqaReport(
        wdr=compute_wdr(path, path.n, path.m),
        cwd=compute_cwd(path, params.window_radius, mode),
        wdv=compute_wdv(path, params.window_radius, mode),
        drl=drl,
        one_minus_drl=1.0 - drl,
        dcr=compute_dcr(path, k),
        dtw_distance=result.distance,
    )
