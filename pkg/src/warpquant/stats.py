"""Shared statistical primitives.

z-scoring, RMSE, percentile confidence intervals, ordinary least squares
with t-based p-values, and Benjamini-Hochberg FDR flags.  All functions
use the sample (n-1) standard deviation convention.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .errors import InvalidInput, RankDeficient

# X'X counts as singular when its relative condition number exceeds this
_CONDITION_LIMIT = 1e10


def zscore(values):
    """Standardize to mean 0, sample std 1; constant input maps to zeros."""
    v = np.asarray(values, dtype=np.float64)
    if v.size < 2:
        raise InvalidInput("zscore requires at least two values")
    # exact constancy check: the float mean of identical values need not
    # equal them, which would otherwise standardize pure rounding noise
    if np.all(v == v[0]):
        return np.zeros_like(v)
    sd = np.std(v, ddof=1)
    if sd == 0.0:
        return np.zeros_like(v)
    return (v - np.mean(v)) / sd


def rmse(a, b):
    """Root mean squared error between two equal-length sequences."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0:
        raise InvalidInput("rmse requires non-empty sequences")
    if a.shape != b.shape:
        raise InvalidInput(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.mean((a - b) ** 2)))


def percentile_ci(values, level=0.95):
    """Central percentile interval with linear interpolation.

    Returns the (p, 1-p) percentiles with p = (1 - level) / 2.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size < 2:
        raise InvalidInput("percentile_ci requires at least two values")
    if not (0.0 < level < 1.0):
        raise InvalidInput("level must lie in (0, 1)")
    p = (1.0 - level) / 2.0
    lo, hi = np.percentile(v, [100.0 * p, 100.0 * (1.0 - p)])
    return float(lo), float(hi)


def t_cdf(t, df):
    """CDF of Student's t distribution via the regularized incomplete beta."""
    t = np.asarray(t, dtype=np.float64)
    x = df / (df + t * t)
    tail = 0.5 * betainc(df / 2.0, 0.5, x)
    return np.where(t >= 0, 1.0 - tail, tail)


@dataclass
class LinearModelFit:
    """Ordinary-least-squares fit summary, one entry per predictor."""

    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_statistics: np.ndarray
    p_values: np.ndarray
    residual_variance: float


def ols_fit(y, design):
    """Fit y = X @ beta by least squares with two-sided t-test p-values.

    Parameters
    ----------
    y : array-like, shape (n,)
    design : array-like, shape (n, p)
        Design matrix including the intercept column; requires n > p and
        full column rank.

    Raises
    ------
    RankDeficient
        When X'X is numerically singular.
    """
    y = np.asarray(y, dtype=np.float64)
    x = np.asarray(design, dtype=np.float64)
    if x.ndim != 2:
        raise InvalidInput("design must be a 2-D matrix")
    n, p = x.shape
    if y.shape != (n,):
        raise InvalidInput("response length must match design rows")
    if n <= p:
        raise InvalidInput(f"need more observations than predictors (n={n}, p={p})")

    u, s, vt = np.linalg.svd(x, full_matrices=False)
    if s[0] == 0.0 or (s[-1] / s[0]) ** 2 * _CONDITION_LIMIT < 1.0:
        raise RankDeficient("design matrix is rank deficient")

    beta = vt.T @ ((u.T @ y) / s)
    resid = y - x @ beta
    df = n - p
    sigma2 = float(resid @ resid) / df
    xtx_inv_diag = np.einsum("ji,j->i", vt ** 2, 1.0 / s ** 2)
    se = np.sqrt(sigma2 * xtx_inv_diag)

    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / np.where(se > 0, se, 1.0),
                     np.where(beta == 0, 0.0, np.inf * np.sign(beta)))
    finite_t = np.where(np.isfinite(t), t, 0.0)
    pvals = betainc(df / 2.0, 0.5, df / (df + finite_t * finite_t))
    pvals = np.where(np.isfinite(t), pvals, 0.0)

    return LinearModelFit(
        coefficients=beta,
        standard_errors=se,
        t_statistics=t,
        p_values=pvals,
        residual_variance=sigma2,
    )


def bh_fdr(p_values, q):
    """Benjamini-Hochberg step-up significance flags at level q.

    Sorts the p-values, finds the largest rank i with p_(i) <= i*q/m, and
    flags every p-value at or below that critical value.
    """
    p = np.asarray(p_values, dtype=np.float64)
    if p.size == 0:
        return np.zeros(0, dtype=bool)
    if np.any((p < 0) | (p > 1)) or not np.all(np.isfinite(p)):
        raise InvalidInput("p-values must lie in [0, 1]")
    if not (0.0 < q < 1.0):
        raise InvalidInput("q must lie in (0, 1)")
    m = p.size
    order = np.sort(p)
    passing = np.flatnonzero(order <= np.arange(1, m + 1) * q / m)
    if passing.size == 0:
        return np.zeros(m, dtype=bool)
    critical = order[passing[-1]]
    return p <= critical
