"""Command-line entry point.

    baker spectrum|weyl-scan|nu-scan|delta-zero|perturb|propagate|eigvec|verify-identity

Each subcommand carries reference defaults and writes one CSV (or
JSON for verify-identity) plus a metadata sidecar into --out.  A JSON
file passed via --config overrides any flag.  Exit codes: 0 success,
1 precondition failure, 2 partial failure (>= 10% of grid points),
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import (DESK_K_GRID, FULL_K_GRID, NU_SCAN_GRID, WEYL_NU_GRID,
                          ExperimentConfig, run_delta_zero, run_eigvec_dump,
                          run_identity_check, run_nu_scan, run_perturbation,
                          run_propagation_figure, run_spectrum, run_weyl_scan)


class _Parser(argparse.ArgumentParser):
    # usage problems are precondition failures, not internal errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _float_list(text: str) -> tuple:
    return tuple(float(x) for x in text.split(",") if x.strip())


_RUNNERS = {
    "spectrum": run_spectrum,
    "weyl-scan": run_weyl_scan,
    "nu-scan": run_nu_scan,
    "delta-zero": run_delta_zero,
    "perturb": run_perturbation,
    "propagate": run_propagation_figure,
    "eigvec": run_eigvec_dump,
    "verify-identity": run_identity_check,
}

# (base, alphabet, tau, K_list, nu_list, perturb_norm) per subcommand
_DEFAULTS = {
    "spectrum": (5, (1, 2, 3), 0.05, (125,), WEYL_NU_GRID, 0.0),
    "weyl-scan": (5, (1, 2, 3), 0.05, DESK_K_GRID, WEYL_NU_GRID, 0.0),
    "nu-scan": (5, (1, 2, 3), 0.05, (625,), NU_SCAN_GRID, 1e-10),
    "delta-zero": (3, (1,), 0.1, (81, 243), WEYL_NU_GRID, 0.0),
    "perturb": (5, (1, 2, 3), 0.05, DESK_K_GRID, WEYL_NU_GRID, 1e-5),
    "propagate": (3, (0, 2), 0.05, (729,), WEYL_NU_GRID, 0.0),
    "eigvec": (4, (1, 2), 0.1, (1024,), WEYL_NU_GRID, 0.0),
    "verify-identity": (3, (0, 2), 0.05, (9, 27, 81), (1.0,), 0.0),
}


def _add_common(sub: argparse.ArgumentParser, name: str) -> None:
    base, alphabet, tau, k_list, nu_list, pnorm = _DEFAULTS[name]
    sub.add_argument("--base", type=int, default=base, help="expansion base M")
    sub.add_argument("--alphabet", type=_int_list, default=alphabet,
                     help="comma-separated digits, e.g. 1,2,3")
    sub.add_argument("--tau", type=float, default=tau, help="cutoff tightness")
    sub.add_argument("--K-list", dest="K_list", type=_int_list, default=k_list,
                     help="comma-separated K = N/M values")
    sub.add_argument("--nu-list", dest="nu_list", type=_float_list, default=nu_list,
                     help="comma-separated nu values")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--perturb-norm", dest="perturb_norm", type=float, default=pnorm,
                     help="operator norm of the random perturbation")
    sub.add_argument("--out", default="results", help="output directory")
    sub.add_argument("--full", action="store_true",
                     help="restore the full K grid (K up to 625)")
    sub.add_argument("--workers", type=int, default=1,
                     help="worker processes for independent grid points")
    sub.add_argument("--config", default=None,
                     help="JSON file whose entries override all flags")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="baker",
                     description="quantum open baker's map experiments")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in _RUNNERS:
        sub = subs.add_parser(name)
        _add_common(sub, name)
        if name == "propagate":
            sub.add_argument("--steps", type=int, default=3)
        if name == "eigvec":
            sub.add_argument("--k", type=int, default=50,
                             help="rank of the requested eigenvalue (1 = largest)")
        if name == "verify-identity":
            sub.add_argument("--lambdas", type=_float_list, default=(0.4, 0.7, 4.0))
    return parser


def _config_from_args(args) -> ExperimentConfig:
    k_list = args.K_list
    if args.full and args.command in ("weyl-scan", "perturb"):
        k_list = FULL_K_GRID if k_list == DESK_K_GRID else k_list
    values = {
        "kind": args.command,
        "M": args.base,
        "alphabet": tuple(args.alphabet),
        "tau": args.tau,
        "K_list": tuple(k_list),
        "nu_list": tuple(args.nu_list),
        "seed": args.seed,
        "perturbation_norm": args.perturb_norm,
        "output_dir": args.out,
        "full": bool(args.full),
        "workers": args.workers,
    }
    if getattr(args, "steps", None) is not None:
        values["steps"] = args.steps
    if getattr(args, "k", None) is not None:
        values["k_index"] = args.k
    if getattr(args, "lambdas", None) is not None:
        values["lambdas"] = tuple(args.lambdas)
    if args.config:
        with open(args.config) as fh:
            overrides = json.load(fh)
        for key, val in overrides.items():
            if key not in ExperimentConfig.__dataclass_fields__:
                raise ValueError(f"unknown config key: {key}")
            values[key] = tuple(val) if isinstance(val, list) else val
    return ExperimentConfig(**values)


def _print_summary(record) -> None:
    print(f"[{record.kind}] wrote {record.csv_path}")
    print(f"[{record.kind}] metadata {record.meta_path}")
    for key, val in record.summary.items():
        if isinstance(val, dict):
            continue
        print(f"  {key}: {val}")
    if record.failures:
        print(f"  failed points: {len(record.failures)}/{record.points_total}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        record = _RUNNERS[args.command](cfg)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit:
        raise
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    _print_summary(record)
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
