"""Shared test oracles: exhaustive path search, from-definition metric
implementations, and random path construction.

The oracles deliberately avoid the package's numpy-vectorized code paths:
the search enumerates paths by recursion, and the metric formulas use the
statistics module over plain lists.
"""

import math
import statistics

from warpquant.dtw import WarpPath


def enum_min_cost(x, y, w, gamma):
    """Minimum path cost by exhaustive recursion over all admissible paths.

    Costs accumulate back to front (cost of cell plus best suffix), so per
    path the summation order matches a right-nested sum.
    """
    n, m = len(x), len(y)

    def cost(i, j):
        d = abs(x[i] - y[j])
        if gamma == 1.0:
            return d
        if gamma == 2.0:
            return d * d
        return d ** gamma

    def rec(i, j):
        c = cost(i, j)
        if i == n - 1 and j == m - 1:
            return c
        best = math.inf
        for di, dj in ((1, 1), (0, 1), (1, 0)):
            ii, jj = i + di, j + dj
            if ii < n and jj < m and abs(ii - jj) <= w:
                s = rec(ii, jj)
                if s < best:
                    best = s
        return c + best

    return rec(0, 0)


def enum_all_path_costs(x, y, w, gamma):
    """Cost of every admissible path (tiny instances only)."""
    n, m = len(x), len(y)
    out = []

    def cost(i, j):
        d = abs(x[i] - y[j])
        if gamma == 1.0:
            return d
        if gamma == 2.0:
            return d * d
        return d ** gamma

    def rec(i, j, acc):
        acc = acc + [cost(i, j)]
        if i == n - 1 and j == m - 1:
            total = 0.0
            for c in reversed(acc):
                total = c + total
            out.append(total)
            return
        for di, dj in ((1, 1), (0, 1), (1, 0)):
            ii, jj = i + di, j + dj
            if ii < n and jj < m and abs(ii - jj) <= w:
                rec(ii, jj, acc)

    rec(0, 0, [])
    return out


def random_valid_path(rng, max_len=40):
    """Random monotone in-band path via an unbiased admissible walk."""
    n = int(rng.integers(1, max_len))
    m = int(rng.integers(1, max_len))
    w = int(rng.integers(abs(n - m), max(n, m) + 1))
    i, j = 1, 1
    pi, pj = [1], [1]
    while (i, j) != (n, m):
        options = []
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            ii, jj = i + di, j + dj
            if ii <= n and jj <= m and abs(ii - jj) <= w:
                options.append((ii, jj))
        i, j = options[int(rng.integers(len(options)))]
        pi.append(i)
        pj.append(j)
    return WarpPath(pi, pj), n, m, w


def path_from_offsets(offsets):
    """Build a path whose successive i-j offsets equal the given sequence.

    The first offset must be 0; consecutive offsets may differ by at most 1
    (offset +1 step advances i, -1 advances j, 0 is diagonal).
    """
    assert offsets[0] == 0
    i, j = 1, 1
    pi, pj = [1], [1]
    for prev, cur in zip(offsets, offsets[1:]):
        d = cur - prev
        assert d in (-1, 0, 1)
        if d == 1:
            i += 1
        elif d == -1:
            j += 1
        else:
            i += 1
            j += 1
        pi.append(i)
        pj.append(j)
    return WarpPath(pi, pj)


def oracle_wdr(pairs, n, m):
    top = max(n, m)
    return (len(pairs) - top) / (n + m - top)


def oracle_cwd(pairs, w, mode="median"):
    if w == 0:
        return 0.0
    vals = [abs(i - j) for i, j in pairs]
    c = statistics.median(vals) if mode == "median" else sum(vals) / len(vals)
    return c / w


def oracle_wdv(pairs, w, mode="median"):
    if w == 0:
        return 0.0
    vals = [abs(i - j) for i, j in pairs]
    if mode == "median":
        med = statistics.median(vals)
        return statistics.median([abs(v - med) for v in vals]) / w
    sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
    return min(1.0, sd / w)


def oracle_drl(pairs, k, mode="median"):
    length = len(pairs)
    runs = []
    current = 0
    for t in range(1, length):
        diag = (pairs[t][0] - pairs[t - 1][0] == 1
                and pairs[t][1] - pairs[t - 1][1] == 1)
        if diag:
            current += 1
        elif current:
            runs.append(current)
            current = 0
    if current:
        runs.append(current)
    kept = [r for r in runs if r >= k]
    if not kept:
        return 0.0
    c = statistics.median(kept) if mode == "median" else sum(kept) / len(kept)
    return c / (length - 1)


def oracle_dcr(pairs, k):
    length = len(pairs)
    signs = [(i > j) - (i < j) for i, j in pairs]
    if not any(signs):
        return 0.0
    last = next(v for v in signs if v != 0)
    resolved = []
    for v in signs:
        if v != 0:
            last = v
        resolved.append(last)
    runs = []
    for v in resolved:
        if runs and runs[-1][0] == v:
            runs[-1][1] += 1
        else:
            runs.append([v, 1])
    crossings = sum(1 for a, b in zip(runs, runs[1:])
                    if a[0] * b[0] == -1 and a[1] >= k and b[1] >= k)
    return min(1.0, 2.0 * k / (length - 1) * crossings)


def bh_oracle(p_values, q):
    """Literal step-up definition over a plain list."""
    m = len(p_values)
    ranked = sorted(p_values)
    k = 0
    for rank, p in enumerate(ranked, start=1):
        if p <= rank * q / m:
            k = rank
    if k == 0:
        return [False] * m
    critical = ranked[k - 1]
    return [p <= critical for p in p_values]
