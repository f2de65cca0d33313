"""CSV loading and writing for series, channel sets, and result tables.

Every file carries a header row.  A single-column file loads as a
TimeSeries, a multi-column file as a ChannelSet with the header entries
as channel names.  Parse errors cite the 1-based file line.
"""

import csv
import math

from .connectivity import ChannelSet
from .dtw import TimeSeries
from .errors import InvalidInput


def _parse_cell(text, line_no, col_no, path):
    try:
        value = float(text)
    except ValueError:
        raise InvalidInput(
            f"{path}: non-numeric cell {text!r} at row {line_no}, column {col_no}")
    if not math.isfinite(value):
        raise InvalidInput(
            f"{path}: non-finite cell {text!r} at row {line_no}, column {col_no}")
    return value


def load_timeseries_csv(path, sample_period=1.0):
    """Load a CSV file as a TimeSeries (one column) or ChannelSet (several).

    The first row is the header; rows must be rectangular and all cells
    numeric and finite.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInput(f"{path}: file is empty")
        header = [h.strip() for h in header]
        n_cols = len(header)
        if n_cols == 0:
            raise InvalidInput(f"{path}: header row is empty")
        rows = []
        for line_no, cells in enumerate(reader, start=2):
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue
            if len(cells) != n_cols:
                raise InvalidInput(
                    f"{path}: row {line_no} has {len(cells)} cells, expected {n_cols}")
            rows.append([_parse_cell(c.strip(), line_no, ci + 1, path)
                         for ci, c in enumerate(cells)])
    if not rows:
        raise InvalidInput(f"{path}: no data rows")
    if n_cols == 1:
        return TimeSeries([r[0] for r in rows], sample_period)
    return ChannelSet([list(r) for r in rows], sample_period, header)


def write_timeseries_csv(path, series: TimeSeries):
    with open(path, "w", newline="") as fh:
        fh.write("value\n")
        for v in series.samples:
            fh.write(repr(float(v)) + "\n")


def write_matrix_csv(path, matrix, names):
    """Square matrix with the channel names as both header row and column."""
    with open(path, "w", newline="") as fh:
        fh.write("," + ",".join(names) + "\n")
        for name, row in zip(names, matrix):
            fh.write(name + "," + ",".join(repr(float(v)) for v in row) + "\n")


def write_association_csv(path, rows):
    with open(path, "w", newline="") as fh:
        fh.write("pair_a,pair_b,measure,beta,t,p,fdr_significant,sign\n")
        for r in rows:
            fh.write(f"{r.pair_a},{r.pair_b},{r.measure},{r.beta!r},{r.t!r},"
                     f"{r.p!r},{str(r.fdr_significant).lower()},{r.sign}\n")


def load_scores_csv(path, score_column="score", subject_column="subject"):
    """Load per-subject scores and covariates.

    Returns (subject ids, score array-as-list, covariate column names,
    covariate rows).  Every column except the subject and score columns is
    treated as a covariate.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise InvalidInput(f"{path}: file is empty")
        for required in (subject_column, score_column):
            if required not in header:
                raise InvalidInput(f"{path}: missing column {required!r}")
        subj_idx = header.index(subject_column)
        score_idx = header.index(score_column)
        cov_idx = [i for i in range(len(header))
                   if i not in (subj_idx, score_idx)]
        subjects, scores, cov_rows = [], [], []
        for line_no, cells in enumerate(reader, start=2):
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue
            if len(cells) != len(header):
                raise InvalidInput(
                    f"{path}: row {line_no} has {len(cells)} cells, "
                    f"expected {len(header)}")
            subjects.append(cells[subj_idx].strip())
            scores.append(_parse_cell(cells[score_idx].strip(), line_no,
                                      score_idx + 1, path))
            cov_rows.append([_parse_cell(cells[i].strip(), line_no, i + 1, path)
                             for i in cov_idx])
    if not subjects:
        raise InvalidInput(f"{path}: no data rows")
    return subjects, scores, [header[i] for i in cov_idx], cov_rows
