"""Command-line front end.

Subcommands: exact, sweep, asymptotic, simulate, verify.  Every file-writing
command drops a JSON run manifest next to its output (command, parameters,
config hash, seed, RNG family, timestamp) so results can be reproduced.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from importlib import metadata

from .analysis import sweep
from .asymptotics import covariance_report
from .exact import CovarianceQuery, FoldScheme, PrecisionMode, exact_cv_mse, exact_fold_covariance
from .rational import format_rational
from .sim import RNG_FAMILY, AlgorithmSpec, DataSpec, TiePolicy, run_cv_mse
from .verify import format_report, run_suite

__all__ = ["main"]


def _version() -> str:
    try:
        return metadata.version("cvlab")
    except metadata.PackageNotFoundError:
        return "unknown"


def _float(x: float) -> str:
    return f"{x:.12g}"


def _config_hash(params: dict) -> str:
    blob = json.dumps(params, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _write_manifest(out_path: str, command: str, params: dict) -> None:
    manifest = {
        "command": command,
        "params": params,
        "config_hash": _config_hash(params),
        "version": _version(),
        "rng_family": RNG_FAMILY if command == "simulate" else None,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)
        fh.write("\n")


def _cmd_exact(args: argparse.Namespace) -> int:
    scheme = FoldScheme(args.n, args.k)
    mode = PrecisionMode(args.mode)
    cov = exact_fold_covariance(CovarianceQuery(scheme.n, scheme.m, mode))
    mse = exact_cv_mse(scheme, mode)
    holdout = Fraction(1, 4 * scheme.n) if mode is PrecisionMode.EXACT_RATIONAL else 0.25 / scheme.n
    fmt = format_rational if mode is PrecisionMode.EXACT_RATIONAL else _float
    print(f"n={scheme.n} k={scheme.k} m={scheme.m} mode={mode.value}")
    print(f"fold_covariance = {fmt(cov)}")
    print(f"cv_mse          = {fmt(mse)}")
    print(f"holdout_mse     = {fmt(holdout)}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    mode = PrecisionMode(args.mode) if args.mode else None
    rows = sweep(args.n, mode)
    rational = isinstance(rows[0].cov_exact, Fraction)
    fmt = format_rational if rational else _float
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n", "k", "m", "cov_exact", "mse_exact", "cov_leading", "rel_err_leading", "mse_holdout"]
        )
        for r in rows:
            writer.writerow(
                [
                    r.n,
                    r.k,
                    r.m,
                    fmt(r.cov_exact),
                    fmt(r.mse_exact),
                    "" if r.cov_leading is None else _float(r.cov_leading),
                    "" if r.rel_err_leading is None else _float(r.rel_err_leading),
                    fmt(r.mse_holdout),
                ]
            )
    _write_manifest(args.out, "sweep", {"n": args.n, "mode": args.mode})
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_asymptotic(args: argparse.Namespace) -> int:
    rep = covariance_report(args.n, args.m)
    print(f"n={args.n} m={args.m}")
    print(f"exact_log_space = {_float(rep.exact)}")
    print(f"leading_term    = {_float(rep.leading)}")
    print(f"sublinear       = {_float(rep.sublinear)}")
    print(f"theta_corrected = {_float(rep.theta_corrected)}")
    print(f"rel_err_leading = {_float(rep.rel_err_leading)}")
    print(f"rel_err_subl    = {_float(rep.rel_err_sublinear)}")
    return 0


def _read_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and '#' comments ignored."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _build_sim(cfg: dict[str, str], args: argparse.Namespace):
    n = int(cfg["n"])
    k = int(cfg["k"])
    algo_kind = cfg.get("algorithm", "majority")
    tie = TiePolicy(cfg.get("tie_policy", "to_zero"))
    if algo_kind == "majority":
        algo = AlgorithmSpec.majority(tie)
    elif algo_kind == "constant":
        algo = AlgorithmSpec.constant(int(cfg.get("bit", "0")))
    elif algo_kind == "anticorr_interval":
        algo = AlgorithmSpec.anticorr_interval()
    else:
        raise ValueError(f"unknown algorithm {algo_kind!r}: use majority|constant|anticorr_interval")
    data_kind = cfg.get("data", "point_mass")
    if data_kind not in ("point_mass", "uniform_threshold"):
        raise ValueError(f"unknown data distribution {data_kind!r}: use point_mass|uniform_threshold")
    data = DataSpec(data_kind, n, q=float(cfg.get("q", "0.5")))
    trials = args.trials if args.trials is not None else int(cfg.get("trials", "10000"))
    seed = args.seed if args.seed is not None else int(cfg.get("seed", "0"))
    return data, algo, k, trials, seed


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _read_config(args.config)
    data, algo, k, trials, seed = _build_sim(cfg, args)
    est = run_cv_mse(data, algo, k, trials, seed)
    params = {
        "config": dict(cfg),
        "n": data.n,
        "k": k,
        "trials": trials,
        "seed": seed,
        "algorithm": algo.description,
    }
    row = [_config_hash(params), _float(est.mean), _float(est.std_error), trials, seed]
    header = ["config_hash", "mean", "std_error", "trials", "seed"]
    if args.out:
        new_file = not os.path.exists(args.out)
        with open(args.out, "a", newline="") as fh:
            writer = csv.writer(fh)
            if new_file:
                writer.writerow(header)
            writer.writerow(row)
        _write_manifest(args.out, "simulate", params)
        print(f"appended run {row[0]} to {args.out}")
    else:
        print(", ".join(f"{h}={v}" for h, v in zip(header, row)))
    print(f"mse_mean = {_float(est.mean)} +/- {_float(est.std_error)} ({trials} trials, seed {seed})")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite)
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvlab",
        description="Exact, asymptotic, and simulated k-fold cross-validation risk for majority vote under random labels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact fold covariance and CV MSE for one (n, k)")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--k", type=int, required=True, help="number of folds (must divide n)")
    p.add_argument("--mode", choices=[m.value for m in PrecisionMode], default="rational")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("sweep", help="CSV of all admissible fold counts for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in PrecisionMode], default=None)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("asymptotic", help="leading-term and theta-corrected approximations vs exact")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="fold size (2 <= m <= n/3)")
    p.set_defaults(func=_cmd_asymptotic)

    p = sub.add_parser("simulate", help="Monte Carlo CV MSE from a key=value config file")
    p.add_argument("--config", required=True, help="flat key=value config file")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--trials", type=int, default=None, help="override config trials")
    p.add_argument("--out", default=None, help="CSV to append the run row to")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run acceptance criteria")
    p.add_argument("--suite", choices=["exact", "asymptotic", "simulate", "all"], default="all")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
