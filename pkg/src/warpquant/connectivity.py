"""Pairwise alignment matrices over multichannel recordings.

Channels are detrended, band-pass filtered with a hard frequency-domain
mask, and z-scored; every unordered channel pair is then aligned and the
six measures fill symmetric channel-by-channel matrices.  Group-level
display matrices follow the conventional polarity (z-scored across pairs
and sign-inverted so stronger coupling is positive), and per-pair
covariate-adjusted regressions relate pair values to a subject score with
joint FDR correction.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dtw import DtwParams
from .errors import FlaggedChannelError, InvalidInput
from .metrics import MEASURE_NAMES, compute_report
from .signals import BandLimits
from .stats import bh_fdr, ols_fit, zscore

# connectivity-flavored alignment defaults
DEFAULT_PARAMS = DtwParams(window_radius=50, gamma=2.0)
DEFAULT_DWELL = 3
DEFAULT_BAND = BandLimits(0.01, 0.15)


@dataclass
class ChannelSet:
    """T x C multichannel recording with named channels."""

    data: np.ndarray
    sample_period: float
    channel_names: list

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.ndim != 2:
            raise InvalidInput("channel data must be a T x C matrix")
        if self.data.shape[1] < 2:
            raise InvalidInput("need at least two channels")
        if not np.all(np.isfinite(self.data)):
            raise InvalidInput("channel data contains non-finite values")
        if len(self.channel_names) != self.data.shape[1]:
            raise InvalidInput("channel_names must match the number of columns")
        if not (self.sample_period > 0):
            raise InvalidInput("sample_period must be positive")

    @property
    def n_channels(self):
        return self.data.shape[1]

    @property
    def n_samples(self):
        return self.data.shape[0]


@dataclass
class PairMetricsMatrix:
    """One symmetric C x C matrix per measure for a single subject."""

    subject: str
    channel_names: list
    matrices: dict


@dataclass
class AssociationRow:
    pair_a: str
    pair_b: str
    measure: str
    beta: float
    t: float
    p: float
    fdr_significant: bool
    sign: int


def _detrend(column):
    t = np.arange(column.size, dtype=np.float64)
    design = np.column_stack([np.ones_like(t), t])
    coef, *_ = np.linalg.lstsq(design, column, rcond=None)
    return column - design @ coef


def preprocess_channels(cs: ChannelSet, band: BandLimits = DEFAULT_BAND):
    """Detrend, band-pass, and z-score every channel.

    Raises
    ------
    FlaggedChannelError
        Listing every channel that is constant after detrending.
    """
    band.validate(cs.sample_period)
    freqs = np.fft.rfftfreq(cs.n_samples, d=cs.sample_period)
    mask = (freqs >= band.f_lo) & (freqs <= band.f_hi)
    if not mask.any():
        raise InvalidInput(
            f"no DFT bins fall inside [{band.f_lo}, {band.f_hi}] Hz")
    out = np.empty_like(cs.data)
    flagged = []
    for c in range(cs.n_channels):
        resid = _detrend(cs.data[:, c])
        scale = max(1.0, float(np.std(cs.data[:, c])))
        if np.std(resid) <= 1e-10 * scale:
            flagged.append(cs.channel_names[c])
            continue
        spectrum = np.fft.rfft(resid)
        spectrum[~mask] = 0.0
        filtered = np.fft.irfft(spectrum, cs.n_samples)
        if np.std(filtered, ddof=1) == 0.0:
            flagged.append(cs.channel_names[c])
            continue
        out[:, c] = zscore(filtered)
    if flagged:
        raise FlaggedChannelError(flagged)
    return ChannelSet(out, cs.sample_period, list(cs.channel_names))


def pair_matrices(cs: ChannelSet, params: DtwParams = DEFAULT_PARAMS,
                  k: int = DEFAULT_DWELL, mode: str = "median",
                  subject: str = "", jobs: int = 1):
    """Compute all six measures for every unordered channel pair.

    Exactly C(C-1)/2 alignments are performed; both triangles are filled
    from the same value and the diagonal holds the identical-signal value.
    Results are bit-identical for any ``jobs``.
    """
    c = cs.n_channels
    pairs = [(i, j) for i in range(c) for j in range(i + 1, c)]

    def one(pair):
        i, j = pair
        rep = compute_report(cs.data[:, i], cs.data[:, j], params, k=k,
                             mode=mode)
        return rep.to_dict()

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, pairs))
    else:
        reports = [one(p) for p in pairs]

    matrices = {}
    for name in MEASURE_NAMES:
        # diagonal stays 0: identical signals give distance 0 and all
        # descriptors 0 in the 1-drl reporting form
        mat = np.zeros((c, c))
        for (i, j), rep in zip(pairs, reports):
            mat[i, j] = mat[j, i] = rep[name]
        matrices[name] = mat
    return PairMetricsMatrix(subject=subject,
                             channel_names=list(cs.channel_names),
                             matrices=matrices)


def group_display_matrix(subject_matrices, measure):
    """Group-mean matrix in display polarity.

    Pair values are averaged across subjects, z-scored jointly across the
    off-diagonal upper-triangle entries, sign-inverted so stronger
    coupling is positive, and mirrored; the diagonal is zero.  A
    zero-variance entry set yields an all-zero matrix.
    """
    if len(subject_matrices) < 2:
        raise InvalidInput("group display requires at least two subjects")
    stack = np.array([sm.matrices[measure] for sm in subject_matrices])
    mean = stack.mean(axis=0)
    c = mean.shape[0]
    iu = np.triu_indices(c, k=1)
    entries = mean[iu]
    z = zscore(entries)
    out = np.zeros_like(mean)
    out[iu] = -z
    out[(iu[1], iu[0])] = -z
    return out


def symptom_association(subject_matrices, scores, covariates, q=0.05,
                        measures=MEASURE_NAMES, joint_fdr=True):
    """Per-pair, per-measure association between pair values and a score.

    For each (pair, measure), fits pair value ~ intercept + score +
    covariates across subjects and records the score coefficient.  FDR
    flags are assigned across all rows jointly (default) or within each
    measure.

    Parameters
    ----------
    subject_matrices : sequence of PairMetricsMatrix
    scores : array-like, one value per subject
    covariates : array-like, shape (n_subjects, n_covariates); may be empty
    q : float
        FDR level.
    measures : sequence of measure names to test.
    joint_fdr : bool
        Correct across measures and pairs jointly; otherwise per measure.

    Returns
    -------
    list of AssociationRow
    """
    n = len(subject_matrices)
    scores = np.asarray(scores, dtype=np.float64)
    covariates = np.asarray(covariates, dtype=np.float64)
    if covariates.size == 0:
        covariates = np.empty((n, 0))
    if covariates.ndim != 2:
        raise InvalidInput("covariates must be a 2-D matrix")
    if scores.shape != (n,) or covariates.shape[0] != n:
        raise InvalidInput("subjects, scores, and covariates must align")
    names = subject_matrices[0].channel_names
    for sm in subject_matrices:
        if sm.channel_names != names:
            raise InvalidInput("subjects have mismatched channel names")
    c = len(names)
    design = np.column_stack([np.ones(n), scores, covariates])

    rows = []
    pvals = []
    for measure in measures:
        values = np.array([sm.matrices[measure] for sm in subject_matrices])
        for i in range(c):
            for j in range(i + 1, c):
                fit = ols_fit(values[:, i, j], design)
                beta = float(fit.coefficients[1])
                rows.append(AssociationRow(
                    pair_a=names[i], pair_b=names[j], measure=measure,
                    beta=beta, t=float(fit.t_statistics[1]),
                    p=float(fit.p_values[1]), fdr_significant=False,
                    sign=int(np.sign(beta))))
                pvals.append(fit.p_values[1])

    pvals = np.asarray(pvals)
    if joint_fdr:
        flags = bh_fdr(pvals, q)
    else:
        flags = np.zeros(len(rows), dtype=bool)
        per = len(rows) // len(measures)
        for mi in range(len(measures)):
            sel = slice(mi * per, (mi + 1) * per)
            flags[sel] = bh_fdr(pvals[sel], q)
    for row, flag in zip(rows, flags):
        row.fdr_significant = bool(flag)
    return rows
