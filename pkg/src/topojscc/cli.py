"""Command-line entry point.

Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

import argparse
import csv
import io
import logging
import sys
from dataclasses import replace
from pathlib import Path

from topojscc import __version__
from topojscc.data import SyntheticSpec, gen_synthetic, load_images, read_pgm, save_pgm
from topojscc.errors import TopoJSCCError, diagnose_exception, format_diagnosis
from topojscc.metrics import diagram_distances
from topojscc.ph import cubical_diagram, read_diagram_csv, write_diagram_csv
from topojscc.presets import PRESET_CATALOG, apply_preset
from topojscc.training import (
    BANDWIDTH_SWEEP_SNR_DB,
    TrainConfig,
    ablation,
    calibrate,
    dump_config,
    evaluate_sweep,
    load_config,
    load_dataset,
    train,
    write_sweep_csv,
)
from topojscc.utils.paths import diagram_path, find_checkpoint
from topojscc.utils.sanitize import (
    ValidationError,
    parse_value_list,
    validate_input_path,
    validate_output_dir,
)
from topojscc.validators import PreflightContext, run_preflight

logger = logging.getLogger("topojscc")

DEFAULT_OUT = "topojscc-out"
EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
EVAL_SEED_OFFSET = 1


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Base seed")
    common.add_argument("--config", default=argparse.SUPPRESS, help="Flat key = value config file")
    common.add_argument("--out", default=argparse.SUPPRESS, help=f"Output directory (default: {DEFAULT_OUT})")
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="Debug logging")
    common.add_argument("--dump-config", action="store_true", default=argparse.SUPPRESS,
                        help="Print the effective config and exit")
    return common


def _dataset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", help="PGM file/directory or synthetic:<kind>")
    parser.add_argument("--channel", choices=["awgn", "rayleigh"], help="Channel kind")
    parser.add_argument("--csi", action="store_true", default=None, help="Perfect-CSI receiver (y/h)")
    parser.add_argument("--workers", type=int, help="Worker threads")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="topojscc",
        description="Topology-aware deep joint source-channel coding",
        parents=[common],
    )
    parser.add_argument("-V", "--version", action="version", version=f"topojscc {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("train", parents=[common], help="Train a model (config -> checkpoint + log)")
    _dataset_flags(p)
    p.add_argument("--preset", choices=sorted(PRESET_CATALOG), help="Ablation preset for the loss weights")
    p.add_argument("--rho", type=float, help="Bandwidth ratio k/n")
    p.add_argument("--epochs", type=int, dest="max_epochs", help="Maximum epochs")
    p.add_argument("--batch-size", type=int, help="Mini-batch size")
    p.add_argument("--lambda-img", type=float, help="Image topological loss weight")
    p.add_argument("--lambda-lat", type=float, help="Latent topological loss weight")

    p = sub.add_parser("eval", parents=[common], help="Evaluate checkpoint(s) along an SNR or bandwidth axis")
    _dataset_flags(p)
    p.add_argument("--checkpoint", help="Checkpoint for an SNR sweep")
    p.add_argument("--checkpoint-dir", help="Directory with one checkpoint per rho for a bandwidth sweep")
    p.add_argument("--axis", choices=["snr", "bw"], default="snr")
    p.add_argument("--values", required=True, help="Comma-separated SNRs (dB) or rho values")
    p.add_argument("--runs", type=int, default=1, help="Noise realizations per value")
    p.add_argument("--snr", type=float, default=BANDWIDTH_SWEEP_SNR_DB,
                   help="Fixed SNR of a bandwidth sweep")
    p.add_argument("--count", type=int, default=64, help="Synthetic test images")
    p.add_argument("--levels", type=int, default=64, help="Threshold grid levels")

    p = sub.add_parser("ph", parents=[common], help="Cubical persistence diagram of PGM image(s)")
    p.add_argument("images", nargs="+", help="PGM images")
    p.add_argument("--max-dim", type=int, choices=[0, 1], default=1)

    p = sub.add_parser("wdist", parents=[common], help="Wasserstein distance between two diagram CSVs")
    p.add_argument("diagram_a")
    p.add_argument("diagram_b")
    p.add_argument("--p", type=float, default=2.0, help="Wasserstein order")
    p.add_argument("--finite-only", action="store_true", help="Ignore essential points")

    p = sub.add_parser("gen", parents=[common], help="Generate a synthetic PGM dataset")
    p.add_argument("--kind", choices=["blobs", "rings", "grid-roads"], default="rings")
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--shapes", type=int, default=2, help="Blobs or rings per image")

    p = sub.add_parser("calibrate", parents=[common], help="Recommend loss weights for a checkpoint")
    _dataset_flags(p)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--snr", type=float, default=10.0)
    p.add_argument("--fraction", type=float, default=0.01, help="Target share of each term in the MSE")
    p.add_argument("--count", type=int, default=32, help="Synthetic calibration images")

    p = sub.add_parser("ablation", parents=[common], help="Train and evaluate every preset")
    _dataset_flags(p)
    p.add_argument("--seeds", default="0", help="Comma-separated seeds")
    p.add_argument("--snr", type=float, default=0.0)
    p.add_argument("--epochs", type=int, dest="max_epochs")

    sub.add_parser("gradcheck", parents=[common], help="Run the finite-difference suites")
    sub.add_parser("serve", parents=[common], help="Run the MCP server on stdio")
    return parser


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _config(args: argparse.Namespace) -> TrainConfig:
    """Config file, then preset, then explicit flags."""
    config = load_config(args.config) if getattr(args, "config", None) else TrainConfig()
    if getattr(args, "preset", None):
        config = apply_preset(config, args.preset)
    return config.with_overrides(
        seed=getattr(args, "seed", None),
        dataset=getattr(args, "dataset", None),
        channel=getattr(args, "channel", None),
        csi=getattr(args, "csi", None),
        workers=getattr(args, "workers", None),
        rho=getattr(args, "rho", None),
        max_epochs=getattr(args, "max_epochs", None),
        batch_size=getattr(args, "batch_size", None),
        lambda_img=getattr(args, "lambda_img", None),
        lambda_lat=getattr(args, "lambda_lat", None),
    )


def _out(args: argparse.Namespace) -> Path:
    return validate_output_dir(getattr(args, "out", DEFAULT_OUT))


def _preflight(ctx: PreflightContext) -> None:
    result = run_preflight(ctx)
    for issue in result.issues:
        if issue not in result.errors:
            logger.warning(issue.message)
    if not result.valid:
        raise ValidationError(f"Pre-flight checks failed:\n\n{result.format_issues()}")


def _test_set(config: TrainConfig, count: int):
    if config.is_synthetic:
        return load_dataset(replace(config, seed=config.seed + EVAL_SEED_OFFSET, synthetic_count=count))
    return load_images(config.dataset, config.seed)


def cmd_train(args: argparse.Namespace, config: TrainConfig) -> int:
    out = getattr(args, "out", DEFAULT_OUT)
    _preflight(PreflightContext(config=config, dataset_path=config.dataset, output_dir=out))
    result = train(config, out_dir=_out(args))
    print(result.checkpoint_path)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, config: TrainConfig) -> int:
    values = parse_value_list(args.values)
    if args.axis == "snr":
        if not args.checkpoint:
            raise ValidationError("an SNR sweep needs --checkpoint")
        checkpoints = validate_input_path(args.checkpoint, "file")
    else:
        if not args.checkpoint_dir:
            raise ValidationError("a bandwidth sweep needs --checkpoint-dir")
        directory = validate_input_path(args.checkpoint_dir, "dir")
        checkpoints = {}
        for rho in values:
            found = find_checkpoint(directory, rho)
            if found is None:
                raise ValidationError(f"no checkpoint for rho={rho} in {directory}")
            checkpoints[rho] = found
    _preflight(PreflightContext(dataset_path=config.dataset))
    records = evaluate_sweep(
        checkpoints, args.axis, values, _test_set(config, args.count), config.channel,
        args.runs, config.seed, args.snr, config.csi, config.topo_p, args.levels, config.workers,
    )
    print(write_sweep_csv(_out(args) / f"sweep-{args.axis}.csv", records))
    return EXIT_OK


def cmd_ph(args: argparse.Namespace, config: TrainConfig) -> int:
    out = _out(args)
    for image in args.images:
        path = validate_input_path(image, "file")
        diagram = cubical_diagram(read_pgm(path) / 255.0, args.max_dim)
        print(write_diagram_csv(diagram_path(out, path), diagram))
    return EXIT_OK


def cmd_wdist(args: argparse.Namespace, config: TrainConfig) -> int:
    a = read_diagram_csv(validate_input_path(args.diagram_a, "file"))
    b = read_diagram_csv(validate_input_path(args.diagram_b, "file"))
    dims = tuple(sorted(a.dims() | b.dims())) or (0,)
    per_dim = diagram_distances(a, b, args.p, dims, include_essential=not args.finite_only)
    for m, d in per_dim.items():
        print(f"dim{m} = {d!r}")
    print(f"total = {sum(per_dim.values())!r}")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, config: TrainConfig) -> int:
    out = _out(args)
    dataset = gen_synthetic(SyntheticSpec(args.kind, args.count, args.size, args.size,
                                          config.seed, args.shapes))
    for name, image in zip(dataset.names, dataset.images):
        save_pgm(out / name, image)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["file", "betti0", "betti1"])
    writer.writerows([name, b0, b1] for name, (b0, b1) in zip(dataset.names, dataset.betti))
    (out / "betti.csv").write_text(buf.getvalue())
    print(f"{len(dataset)} images written to {out}")
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace, config: TrainConfig) -> int:
    from topojscc.model import load_checkpoint

    model = load_checkpoint(validate_input_path(args.checkpoint, "file")).model
    report = calibrate(model, _test_set(config, args.count), config.channel, args.snr,
                       config.seed, args.fraction, config.batch_size, config.topo_p)
    text = "".join(f"{line}\n" for line in report.as_lines())
    (_out(args) / "calibration.txt").write_text(text)
    print(text, end="")
    return EXIT_OK


def cmd_ablation(args: argparse.Namespace, config: TrainConfig) -> int:
    seeds = [int(s) for s in parse_value_list(args.seeds)]
    _preflight(PreflightContext(config=config, dataset_path=config.dataset))
    rows = ablation(config, load_dataset(config), seeds, args.snr)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["preset", "seed", "psnr_db", "wdist0", "wdist1", "wdist_total"])
    for r in rows:
        writer.writerow([r.preset, r.seed, *r.record.row()[2:6]])
    path = _out(args) / "ablation.csv"
    path.write_text(buf.getvalue())
    print(path)
    return EXIT_OK


def cmd_gradcheck(args: argparse.Namespace, config: TrainConfig) -> int:
    from topojscc.gradchecks import run_gradchecks

    results = run_gradchecks(config.seed)
    for r in results:
        print(f"{'ok  ' if r.passed else 'FAIL'} {r.name}: {r.error:.3e} (tol {r.tolerance:.0e})")
    return EXIT_OK if all(r.passed for r in results) else EXIT_DOMAIN


def cmd_serve(args: argparse.Namespace, config: TrainConfig) -> int:
    from topojscc.server import mcp

    mcp.run()
    return EXIT_OK


COMMANDS = {
    "train": cmd_train,
    "eval": cmd_eval,
    "ph": cmd_ph,
    "wdist": cmd_wdist,
    "gen": cmd_gen,
    "calibrate": cmd_calibrate,
    "ablation": cmd_ablation,
    "gradcheck": cmd_gradcheck,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)
    _setup_logging(getattr(args, "verbose", False))
    try:
        config = _config(args)
        if getattr(args, "dump_config", False):
            print(dump_config(config), end="")
            return EXIT_OK
        return COMMANDS[args.command](args, config)
    except (TopoJSCCError, ValidationError) as e:
        print(format_diagnosis(diagnose_exception(e), str(e)), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
