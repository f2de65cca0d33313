"""Command-line interface.

Subcommands: align, metrics, simulate, connect, assoc.  Exit codes:
0 success, 1 usage error, 2 data or validation error.  The default seed
comes from the WARPQUANT_SEED environment variable when set; a JSON
config file (--config) supplies flag defaults that explicit flags
override.  Output is byte-identical across reruns with the same flags
and seed, for any --jobs value.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import csvio
from .connectivity import (DEFAULT_BAND, DEFAULT_DWELL, DEFAULT_PARAMS,
                           group_display_matrix, pair_matrices,
                           preprocess_channels, symptom_association)
from .dtw import DtwParams, TimeSeries, dtw_align
from .errors import InvalidInput, WarpQuantError
from .metrics import MEASURE_NAMES, compute_report
from .signals import SCENARIO_KINDS, BandLimits, default_grid
from .svg import heatmap, line_chart
from .sweep import SweepSpec, run_sweep, sweep_to_csv, sweep_to_json


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; data problems exit 2 (see main)
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _env_seed():
    raw = os.environ.get("WARPQUANT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"WARPQUANT_SEED must be an integer, got {raw!r}")


def _add_common(parser, seed=False):
    parser.add_argument("--out-dir", default=".", help="output directory "
                        "(created if missing; default: current directory)")
    parser.add_argument("--config", default=None, metavar="FILE.json",
                        help="JSON file of flag defaults; explicit flags win")
    if seed:
        parser.add_argument("--seed", type=int, default=None,
                            help="base seed (default: WARPQUANT_SEED or 0)")


def _add_alignment_flags(parser, gamma, window_help):
    parser.add_argument("--window", type=int, default=None, help=window_help)
    parser.add_argument("--gamma", type=float, default=gamma,
                        help=f"pointwise cost exponent (default {gamma})")


def _add_metric_flags(parser):
    parser.add_argument("--dwell", type=int, default=DEFAULT_DWELL,
                        help="dwell threshold k for run-based measures "
                        f"(default {DEFAULT_DWELL})")
    parser.add_argument("--mode", choices=("median", "mean"), default="median",
                        help="central tendency for cwd/wdv/drl (default median)")


def build_parser():
    parser = _Parser(prog="warpquant",
                     description="Warping-path descriptors, banded DTW, "
                                 "simulation sweeps, and pairwise connectivity.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("align", parents=[], help="align two series, write "
                       "distance and warping path as JSON")
    p.add_argument("x_csv")
    p.add_argument("y_csv")
    p.add_argument("--sample-period", type=float, default=1.0,
                   help="seconds per sample (default 1.0)")
    _add_alignment_flags(p, 1.0, "band radius in samples "
                         "(default: 20%% of the longer series)")
    _add_common(p)

    p = sub.add_parser("metrics", help="align two series and write the "
                       "descriptor report as JSON")
    p.add_argument("x_csv")
    p.add_argument("y_csv")
    p.add_argument("--sample-period", type=float, default=1.0,
                   help="seconds per sample (default 1.0)")
    _add_alignment_flags(p, 1.0, "band radius in samples "
                         "(default: 20%% of the longer series)")
    _add_metric_flags(p)
    _add_common(p)

    p = sub.add_parser("simulate", help="run scenario sweeps and write "
                       "JSON/CSV (and optional SVG) per scenario")
    p.add_argument("--scenario", default="all",
                   choices=SCENARIO_KINDS + ("all",),
                   help="scenario to sweep (default all)")
    p.add_argument("--n-sims", type=int, default=100,
                   help="simulations per sweep (default 100)")
    p.add_argument("--grid-points", type=int, default=12,
                   help="driver grid size (default 12)")
    p.add_argument("--signal-length", type=int, default=1000,
                   help="samples per signal (default 1000)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; output is identical for any value "
                        "(default 1)")
    p.add_argument("--svg", action="store_true",
                   help="also write a line chart per scenario")
    p.add_argument("--rmse-of-mean", action="store_true",
                   help="score the RMSE of the mean curve with a bootstrap "
                        "CI instead of the per-simulation RMSE distribution")
    _add_common(p, seed=True)

    p = sub.add_parser("connect", help="compute pairwise measure matrices "
                       "for every subject CSV in a directory")
    p.add_argument("subjects_dir")
    p.add_argument("--sample-period", type=float, default=1.0,
                   help="seconds per sample (default 1.0)")
    p.add_argument("--band", type=float, nargs=2, metavar=("LO", "HI"),
                   default=(DEFAULT_BAND.f_lo, DEFAULT_BAND.f_hi),
                   help="band-pass limits in Hz (default 0.01 0.15)")
    p.add_argument("--skip-preprocess", action="store_true",
                   help="treat inputs as already detrended/filtered/z-scored")
    _add_alignment_flags(p, DEFAULT_PARAMS.gamma,
                         f"band radius in samples (default "
                         f"{DEFAULT_PARAMS.window_radius})")
    _add_metric_flags(p)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; output is identical for any "
                        "value (default 1)")
    p.add_argument("--svg", action="store_true",
                   help="also write a heatmap per group display matrix")
    _add_common(p)

    p = sub.add_parser("assoc", help="test per-pair associations with a "
                       "subject score, FDR-corrected")
    p.add_argument("subjects_dir")
    p.add_argument("--scores", required=True, metavar="SCORES.csv",
                   help="CSV with subject, score, and covariate columns")
    p.add_argument("--score-col", default="score",
                   help="score column name (default score)")
    p.add_argument("--subject-col", default="subject",
                   help="subject id column name (default subject)")
    p.add_argument("--q", type=float, default=0.05,
                   help="FDR level (default 0.05)")
    p.add_argument("--per-measure-fdr", action="store_true",
                   help="correct within each measure instead of jointly")
    p.add_argument("--sample-period", type=float, default=1.0,
                   help="seconds per sample (default 1.0)")
    p.add_argument("--band", type=float, nargs=2, metavar=("LO", "HI"),
                   default=(DEFAULT_BAND.f_lo, DEFAULT_BAND.f_hi),
                   help="band-pass limits in Hz (default 0.01 0.15)")
    p.add_argument("--skip-preprocess", action="store_true",
                   help="treat inputs as already detrended/filtered/z-scored")
    _add_alignment_flags(p, DEFAULT_PARAMS.gamma,
                         f"band radius in samples (default "
                         f"{DEFAULT_PARAMS.window_radius})")
    _add_metric_flags(p)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; output is identical for any "
                        "value (default 1)")
    _add_common(p)

    return parser, sub


def _apply_config(parser_tree, argv):
    # a config file provides defaults for the invoked subcommand; flags
    # given on the command line still win because explicit args override
    # parser defaults
    if "--config" not in argv:
        return
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return
    path = argv[idx + 1]
    try:
        with open(path) as fh:
            values = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}")
    if not isinstance(values, dict):
        raise InvalidInput(f"config {path} must hold a JSON object")
    command = next((a for a in argv if a in parser_tree), None)
    if command is None:
        return
    sub = parser_tree[command]
    known = {a.dest for a in sub._actions}
    unknown = [k for k in values if k.replace("-", "_") not in known]
    if unknown:
        raise InvalidInput(f"config {path} has unknown keys: {unknown}")
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in values.items()})


def _default_window(n, m, explicit):
    if explicit is not None:
        return explicit
    return int(round(0.2 * max(n, m)))


def _load_series(path, sample_period):
    loaded = csvio.load_timeseries_csv(path, sample_period)
    if not isinstance(loaded, TimeSeries):
        raise InvalidInput(f"{path}: expected a single-column series file")
    return loaded


def _write_text(directory, name, text):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    target = out / name
    target.write_text(text)
    return target


def _cmd_align(args):
    x = _load_series(args.x_csv, args.sample_period)
    y = _load_series(args.y_csv, args.sample_period)
    w = _default_window(len(x), len(y), args.window)
    result = dtw_align(x, y, DtwParams(w, args.gamma))
    pairs = ",\n    ".join(f"[{int(i)}, {int(j)}]" for i, j in result.path.pairs)
    text = ("{\n"
            f'  "distance": {json.dumps(result.distance)},\n'
            f'  "window_radius": {w},\n'
            f'  "gamma": {json.dumps(args.gamma)},\n'
            f'  "path": [\n    {pairs}\n  ]\n'
            "}\n")
    _write_text(args.out_dir, "alignment.json", text)
    return 0


def _cmd_metrics(args):
    x = _load_series(args.x_csv, args.sample_period)
    y = _load_series(args.y_csv, args.sample_period)
    w = _default_window(len(x), len(y), args.window)
    report = compute_report(x, y, DtwParams(w, args.gamma), k=args.dwell,
                            mode=args.mode)
    doc = report.to_dict()
    doc.update({"window_radius": w, "gamma": args.gamma, "dwell": args.dwell,
                "mode": args.mode})
    _write_text(args.out_dir, "metrics.json", json.dumps(doc, indent=2) + "\n")
    return 0


def _cmd_simulate(args):
    seed = args.seed if args.seed is not None else _env_seed()
    kinds = SCENARIO_KINDS if args.scenario == "all" else (args.scenario,)
    for kind in kinds:
        spec = SweepSpec(scenario=kind,
                         grid=default_grid(kind, args.grid_points),
                         n_sims=args.n_sims, base_seed=seed,
                         n=args.signal_length,
                         rmse_of_mean=args.rmse_of_mean)
        result = run_sweep(spec, jobs=args.jobs)
        _write_text(args.out_dir, f"sweep_{kind}.json",
                    sweep_to_json(result) + "\n")
        _write_text(args.out_dir, f"sweep_{kind}.csv", sweep_to_csv(result))
        if args.svg:
            series = {"driver": result.driver_z.tolist()}
            for name in MEASURE_NAMES:
                series[name] = result.measures[name].mean_curve.tolist()
            _write_text(args.out_dir, f"sweep_{kind}.svg",
                        line_chart(result.grid.tolist(), series,
                                   title=f"{kind} sweep (z-scored responses)",
                                   x_label="driver",
                                   y_label="z-scored response"))
    return 0


def _load_subjects(args):
    root = Path(args.subjects_dir)
    if not root.is_dir():
        raise InvalidInput(f"{root} is not a directory")
    files = sorted(root.glob("*.csv"))
    if not files:
        raise InvalidInput(f"no subject CSV files in {root}")
    band = BandLimits(*args.band)
    subjects = []
    for path in files:
        loaded = csvio.load_timeseries_csv(path, args.sample_period)
        if isinstance(loaded, TimeSeries):
            raise InvalidInput(f"{path}: subject files need several channels")
        if not args.skip_preprocess:
            loaded = preprocess_channels(loaded, band)
        subjects.append((path.stem, loaded))
    return subjects


def _subject_matrices(args, subjects):
    params = DtwParams(args.window if args.window is not None
                       else DEFAULT_PARAMS.window_radius, args.gamma)
    return [pair_matrices(cs, params, k=args.dwell, mode=args.mode,
                          subject=name, jobs=args.jobs)
            for name, cs in subjects]


def _cmd_connect(args):
    subjects = _load_subjects(args)
    mats = _subject_matrices(args, subjects)
    for sm in mats:
        for name in MEASURE_NAMES:
            csvio.write_matrix_csv(
                Path(args.out_dir) / f"{sm.subject}__{name}.csv",
                sm.matrices[name], sm.channel_names)
    if len(mats) >= 2:
        for name in MEASURE_NAMES:
            display = group_display_matrix(mats, name)
            csvio.write_matrix_csv(Path(args.out_dir) / f"group_{name}.csv",
                                   display, mats[0].channel_names)
            if args.svg:
                _write_text(args.out_dir, f"group_{name}.svg",
                            heatmap(display, mats[0].channel_names,
                                    title=f"group display: {name}"))
    return 0


def _cmd_assoc(args):
    subjects = _load_subjects(args)
    ids = [name for name, _ in subjects]
    subj, scores, _, cov_rows = csvio.load_scores_csv(
        args.scores, score_column=args.score_col,
        subject_column=args.subject_col)
    table = dict(zip(subj, range(len(subj))))
    missing = [s for s in ids if s not in table]
    if missing:
        raise InvalidInput(f"{args.scores}: missing rows for subjects {missing}")
    order = [table[s] for s in ids]
    mats = _subject_matrices(args, subjects)
    rows = symptom_association(
        mats, [scores[i] for i in order],
        np.asarray([cov_rows[i] for i in order], dtype=np.float64),
        q=args.q, joint_fdr=not args.per_measure_fdr)
    csvio.write_association_csv(Path(args.out_dir) / "associations.csv", rows)
    return 0


_COMMANDS = {
    "align": _cmd_align,
    "metrics": _cmd_metrics,
    "simulate": _cmd_simulate,
    "connect": _cmd_connect,
    "assoc": _cmd_assoc,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, sub = build_parser()
    parser_tree = dict(sub.choices)
    try:
        _apply_config(parser_tree, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a subcommand is required")
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except WarpQuantError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
