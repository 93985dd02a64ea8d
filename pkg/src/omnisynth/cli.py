"""Command-line front end.

    omnisynth run <config> [--out-dir DIR] [--quiet]
    omnisynth check <config>
    omnisynth compare <config> [--out-dir DIR] [--quiet]

A bundled scenario can be named as ``builtin:38ghz_los`` instead of a path.
Exit status: 0 success, 1 validation failure, 2 synthesis failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from omnisynth.config import ConfigError, Diagnostic, ScenarioConfig, load_config, parse_config, read_config_file
from omnisynth.metrics import compare_models
from omnisynth.pdp import PdpError
from omnisynth.scenarios import scenario_path
from omnisynth.synthesis import SynthesisError, SynthesisResult, synthesize

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2

logger = logging.getLogger("omnisynth")


def _resolve(path: str) -> Path:
    if path.startswith("builtin:"):
        return scenario_path(path.split(":", 1)[1])
    return Path(path)


def write_points_csv(result: SynthesisResult, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["D_m", "pl_direct_db", "correction_db", "pl_omni_db"])
        for d, pl_dir, corr, pl_omni in zip(
            result.distances, result.pl_direct_db, result.correction_db, result.pl_omni_db
        ):
            writer.writerow([f"{d:g}", f"{pl_dir:.4f}", f"{corr:.4f}", f"{pl_omni:.4f}"])


def build_summary(cfg: ScenarioConfig, result: SynthesisResult) -> dict:
    omni = result.omni_model
    dm = result.scenario.directional_model
    summary = {
        "scenario": cfg.name,
        "frequency_ghz": cfg.frequency_ghz,
        "condition": cfg.condition,
        "gamma": cfg.gamma,
        "grid": {"min_m": cfg.d_min_m, "max_m": cfg.d_max_m, "step_m": cfg.d_step_m, "M": int(result.distances.size)},
        "directional_model": {"n": dm.ple_n, "d0_m": dm.ref_distance_d0, "pl_d0_db": round(dm.pl_at_d0, 6)},
        "omni_model": {
            "n": round(omni.ple_n, 6),
            "d0_m": omni.ref_distance_d0,
            "pl_d0_db": round(omni.pl_at_d0, 6),
            "sigma_db": round(omni.sigma, 6),
        },
        "correction_db": {
            "min": round(float(result.correction_db.min()), 6),
            "max": round(float(result.correction_db.max()), 6),
        },
        "config": cfg.raw,
    }
    ref = cfg.reference_model()
    if ref is not None:
        report = compare_models(ref, omni, result.distances)
        summary["comparison"] = {
            "reference_n": ref.ple_n,
            "rmse_db": round(report.rmse_db, 6),
            "mae_db": round(report.mae_db, 6),
            "M": report.M,
        }
    return summary


def _print_diagnostics(diags: list[Diagnostic]) -> None:
    for d in diags:
        print(f"error: {d}", file=sys.stderr)


def cmd_check(args) -> int:
    path = _resolve(args.config)
    try:
        data = read_config_file(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # yaml.YAMLError and friends
        print(f"error: {path}: not valid YAML: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _, diags = parse_config(data)
    if diags:
        _print_diagnostics(diags)
        return EXIT_INVALID
    if not args.quiet:
        print("ok")
    return EXIT_OK


def cmd_run(args, require_reference: bool = False) -> int:
    path = _resolve(args.config)
    try:
        cfg = load_config(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConfigError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_INVALID
    if require_reference and cfg.reference is None:
        _print_diagnostics([Diagnostic("reference_model", "compare needs a reference model block")])
        return EXIT_INVALID

    try:
        result = synthesize(cfg.scenario())
    except (SynthesisError, PdpError, ValueError) as exc:
        print(f"error: synthesis failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = build_summary(cfg, result)
    write_points_csv(result, out / "points.csv")
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")

    if not args.quiet:
        print(f"{cfg.name}: n_omni = {result.omni_model.ple_n:.3f} (directional n = {cfg.directional.n}), "
              f"sigma = {result.omni_model.sigma:.3f} dB")
        if "comparison" in summary:
            c = summary["comparison"]
            print(f"vs reference n = {c['reference_n']}: RMSE = {c['rmse_db']:.2f} dB, "
                  f"MAE = {c['mae_db']:.2f} dB over M = {c['M']} distances")
        print(f"wrote {out / 'points.csv'} and {out / 'summary.json'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omnisynth",
        description="Synthesize an omnidirectional close-in path-loss model from a directional one.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="scenario YAML file, or builtin:<name>")
    common.add_argument("--quiet", action="store_true", help="suppress console output")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out-dir", default=".", help="directory for points.csv and summary.json")

    sub.add_parser("run", parents=[common, out], help="synthesize and write outputs")
    sub.add_parser("check", parents=[common], help="validate a config without running")
    sub.add_parser("compare", parents=[common, out], help="run and compare against the reference model")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.command == "check":
        return cmd_check(args)
    return cmd_run(args, require_reference=(args.command == "compare"))


if __name__ == "__main__":
    sys.exit(main())
