"""Command-line entry point: ``sbmfrechet <command> [options]``.

Commands
  sample      draw N networks from G(n, p, q) into a sample directory
  distance    Hamming / delta / resistance distance between two matrix files
  barycenter  resistance Frechet mean of a sample directory
  median      majority-rule median (and, for n <= 6, the exact Hamming mean)
  experiment  run a seeded Monte-Carlo experiment and write CSV + JSON

Global options (accepted before or after the command): ``--seed``,
``--config FILE``, ``--out DIR``, ``--format csv|json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .experiments import DEFAULTS, EXPERIMENTS, ConfigError, ExperimentConfig, load_config, report_csv, report_json, run_experiment
from .frechet import BRUTE_FORCE_MAX_N, brute_force_frechet_mean, majority_median, resistance_barycenter
from .graph import GraphError, SbmParams, as_binary, edge_count, sample_sbm
from .io import read_matrix, read_sample, write_barycenter, write_matrix, write_sample
from .metrics import delta, hamming, resistance_distance, resistance_distance_sq


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=default, help="RNG seed (default 0)")
    p.add_argument("--config", type=Path, default=default, help="YAML config file (experiment)")
    p.add_argument("--out", type=Path, default=default, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default=default, help="stdout format (default json)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbmfrechet",
        description="Frechet means of two-community stochastic block model samples.",
        parents=[_global_options(False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    glob = [_global_options(True)]

    p = sub.add_parser("sample", parents=glob, help="draw a sample from G(n, p, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("-N", "--count", type=int, default=1)

    p = sub.add_parser("distance", parents=glob, help="distance between two matrix files")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument(
        "--metric",
        choices=("hamming", "delta", "resistance", "resistance-sq"),
        default="hamming",
        help="resistance-sq is the sum of squared resistance differences; resistance is its square root",
    )

    p = sub.add_parser("barycenter", parents=glob, help="resistance Frechet mean of a sample directory")
    p.add_argument("sample", type=Path)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--binary", action="store_true", help=f"also report the best unweighted minimizer (n <= {BRUTE_FORCE_MAX_N})")

    p = sub.add_parser("median", parents=glob, help="majority-rule median of a sample directory")
    p.add_argument("sample", type=Path)
    p.add_argument("--brute-force", action="store_true", help=f"also compute the exact Hamming Frechet mean (n <= {BRUTE_FORCE_MAX_N})")

    lines = []
    for name in EXPERIMENTS:
        d = DEFAULTS[name]
        extra = {k: d[k] for k in ("n_values", "sample_sizes") if k in d}
        lines.append(f"  {name}: params={d['params']} N={d['sample_size']} trials={d['trials']} {extra or ''}")
        lines.append(f"      tolerances={d['tolerances']}")
    p = sub.add_parser(
        "experiment",
        parents=glob,
        help="run a Monte-Carlo experiment",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="defaults:\n" + "\n".join(lines),
    )
    p.add_argument("name", nargs="?", choices=EXPERIMENTS, help="experiment (or give it in --config)")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("-N", "--sample-size", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--workers", type=int, help="worker processes for the trial map")
    p.add_argument("--timing", action="store_true", help="fill the wall_ms column (breaks byte-identical reruns)")
    return parser


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "csv":
        keys = list(obj)
        print(",".join(keys))
        print(",".join(str(obj[k]) for k in keys))
    else:
        print(json.dumps(obj, indent=2))


def _cmd_sample(args) -> int:
    params = SbmParams(args.n, args.p, args.q)
    s = sample_sbm(params, args.count, args.seed)
    out = args.out or Path(f"sample_n{params.n}_N{s.N}_seed{s.seed}")
    write_sample(out, s, params)
    _emit({"directory": str(out), "n": params.n, "p": params.p, "q": params.q, "N": s.N, "seed": s.seed}, args.format)
    return 0


def _cmd_distance(args) -> int:
    a, b = read_matrix(args.a), read_matrix(args.b)
    fn = {
        "hamming": lambda: hamming(as_binary(a), as_binary(b)),
        "delta": lambda: delta(a, b),
        "resistance": lambda: resistance_distance(a, b),
        "resistance-sq": lambda: resistance_distance_sq(a, b),
    }[args.metric]
    _emit({"metric": args.metric, "value": fn()}, args.format)
    return 0


def _cmd_barycenter(args) -> int:
    s = read_sample(args.sample)
    res = resistance_barycenter(s, alpha=args.alpha)
    out = args.out or args.sample
    mpath, spath = write_barycenter(out, res)
    info = {"matrix": str(mpath), "sidecar": str(spath), **res.sidecar()}
    if args.binary:
        fm = brute_force_frechet_mean(s, "resistance_sq")
        for k, m in enumerate(fm.minimizers):
            write_matrix(Path(out) / f"binary_minimizer_{k}.txt", m)
        info.update(binary_minimizers=len(fm.minimizers), binary_value=fm.value, skipped_disconnected=fm.n_skipped)
    _emit(info, args.format)
    return 0


def _cmd_median(args) -> int:
    s = read_sample(args.sample)
    med = majority_median(s)
    out = Path(args.out or args.sample)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "median.txt", med)
    info = {"matrix": str(out / "median.txt"), "N": s.N, "n": s.n, "median_edges": edge_count(med)}
    if args.brute_force:
        fm = brute_force_frechet_mean(s, "hamming")
        for k, m in enumerate(fm.minimizers):
            write_matrix(out / f"frechet_mean_{k}.txt", m)
        info.update(frechet_minimizers=len(fm.minimizers), frechet_value=fm.value, mean_equals_median=fm.unique and fm.contains(med))
    _emit(info, args.format)
    return 0


def _cmd_experiment(args) -> int:
    overrides = {
        "experiment": args.name,
        "seed": args.seed,
        "sample_size": args.sample_size,
        "trials": args.trials,
        "workers": args.workers,
        "output_dir": str(args.out) if args.out else None,
        "record_timing": True if args.timing else None,
        "params": {k: v for k, v in (("n", args.n), ("p", args.p), ("q", args.q)) if v is not None} or None,
    }
    if args.config is not None:
        cfg = load_config(args.config, **overrides)
    else:
        if args.name is None:
            raise ConfigError("name an experiment or pass --config")
        data = {k: v for k, v in overrides.items() if v is not None}
        cfg = ExperimentConfig.from_dict(data)
    report = run_experiment(cfg)
    if args.format == "csv":
        sys.stdout.write(report_csv(report))
    else:
        sys.stdout.write(report_json(report))
    for name, ok in report.criteria.items():
        print(f"[{'PASS' if ok else 'FAIL'}] {report.experiment} {name}", file=sys.stderr)
    return 0 if report.passed else 1


_COMMANDS = {
    "sample": _cmd_sample,
    "distance": _cmd_distance,
    "barycenter": _cmd_barycenter,
    "median": _cmd_median,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = 0 if args.command != "experiment" else None
    if args.format is None:
        args.format = "json"
    try:
        return _COMMANDS[args.command](args)
    except (GraphError, ConfigError, ValueError, FileNotFoundError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
