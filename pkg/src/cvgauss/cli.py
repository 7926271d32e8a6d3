"""Command-line entry point.

Subcommands:
    run              analyze the configured state, write a run report
    sweep            map regions over a (delta1, delta2) grid
    oracle-check     cross-check closed forms against the truncated
                     number-basis build
    validate-config  parse and validate a config file, then stop

Exit codes: 0 success, 2 runtime or physics failure (unphysical state,
truncation overflow, failed oracle check), 3 config error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import report as report_io
from .config import FORMATS, load_config
from .errors import ConfigError, CVGaussError
from .pipeline import oracle_experiment, run_experiment, sweep_experiment

EXIT_OK = 0
EXIT_RUNTIME = 2
EXIT_CONFIG = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvgauss",
        description="Gaussian-state analysis: entanglement, purity, fidelity, "
                    "loss robustness, and simulated homodyne detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="YAML config file")
    common.add_argument("--seed", type=int, default=None,
                        help="override the config seed")
    common.add_argument("--out", default="cvgauss-out",
                        help="output directory (created if missing)")
    common.add_argument("--format", choices=FORMATS, default="json",
                        dest="fmt", help="report format")
    common.add_argument("--no-figures", action="store_true",
                        help="skip PNG figure rendering")

    sub.add_parser("run", parents=[common],
                   help="analyze the configured state")
    sub.add_parser("sweep", parents=[common],
                   help="scan the (delta1, delta2) plane from the config grid")
    sub.add_parser("oracle-check", parents=[common],
                   help="compare closed forms against the number-basis build")

    vc = sub.add_parser("validate-config", help="validate a config file and exit")
    vc.add_argument("--config", required=True, help="YAML config file")
    return parser


def _write_report(report: dict, out_dir: str, stem: str, fmt: str,
                  sweep: bool = False) -> str:
    path = os.path.join(out_dir, f"{stem}.{fmt}")
    if fmt == "json":
        report_io.write_json(report, path)
    elif sweep:
        report_io.write_sweep_csv(report, path)
    else:
        report_io.write_flat_csv(report, path)
    return path


def _run_summary_line(report: dict) -> str:
    bits = []
    pur = report["analyses"].get("purity")
    if pur and pur.get("applicable"):
        bits.append(f"purity={pur['purity']:.6g}")
    ent = report["analyses"].get("entanglement")
    if ent and ent.get("applicable"):
        bits.append(f"E={ent['E_sympl']:.6g}")
        bits.append(f"separable={ent['separable']}")
    reg = report["analyses"].get("region")
    if reg and reg.get("applicable"):
        bits.append(f"region={reg['region']}")
    return "  ".join(bits) if bits else "done"


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "validate-config":
            kinds = [k for k in ("state", "reference", "sweep") if cfg.raw.get(k)]
            print(f"config OK ({', '.join(kinds) if kinds else 'no state or sweep'})")
            return EXIT_OK

        if args.seed is not None:
            cfg.seed = args.seed
        os.makedirs(args.out, exist_ok=True)

        if args.command == "run":
            report = run_experiment(cfg)
            path = _write_report(report, args.out, "run", args.fmt)
            print(f"run: {_run_summary_line(report)}")
            print(f"wrote {path}")
            if not args.no_figures:
                from .plots import plot_run_summary
                fig_path = os.path.join(args.out, "run_summary.png")
                plot_run_summary(report, fig_path)
                print(f"wrote {fig_path}")
            if report["oracle"] is not None and not report["oracle"]["passed"]:
                print("oracle cross-check FAILED", file=sys.stderr)
                return EXIT_RUNTIME
            return EXIT_OK

        if args.command == "sweep":
            report = sweep_experiment(cfg)
            path = _write_report(report, args.out, "sweep", args.fmt, sweep=True)
            counts = {}
            for row in report["rows"]:
                counts[row["region"]] = counts.get(row["region"], 0) + 1
            print("sweep: " + "  ".join(f"{k}={v}" for k, v in sorted(counts.items())))
            print(f"wrote {path}")
            if not args.no_figures:
                from .plots import plot_region_map
                fig_path = os.path.join(args.out, "sweep_map.png")
                plot_region_map(report, fig_path)
                print(f"wrote {fig_path}")
            return EXIT_OK

        # oracle-check
        report = oracle_experiment(cfg)
        path = _write_report(report, args.out, "oracle", args.fmt)
        for check in report["checks"]:
            status = check.get("status") or ("ok" if check.get("ok", True) else "FAIL")
            oks = [f"{name}={'ok' if block.get('ok') else 'FAIL'}"
                   for name, block in check.items() if isinstance(block, dict)]
            tail = ("  " + "  ".join(oks)) if oks else ""
            print(f"oracle {check['target']}: {status}{tail}")
        print(f"wrote {path}")
        if not report["passed"]:
            print("oracle cross-check FAILED", file=sys.stderr)
            return EXIT_RUNTIME
        print("oracle cross-check passed")
        return EXIT_OK

    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CVGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
