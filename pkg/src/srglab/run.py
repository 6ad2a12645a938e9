"""srglab CLI entry point.

Usage:
    srglab build --family no-even2 --q 2 --r 2 --eps -1       # Build + parameter check
    srglab construct --method I --t 1 --family no-even2 --q 2 --r 2 --eps -1
    srglab verify output/reports/<set file>                   # Re-check a set file
    srglab tables                                             # Full acceptance grid
    srglab lemmas --lemma nonvanishing                        # Lemma checks
    srglab scan --family no-perp --q 3 --r 2 --eps 1          # Orbit-union scan
    srglab fields list                                        # Default moduli
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from srglab.config import Config
from srglab.construct import LEMMAS, GroupKind
from srglab.exceptions import SrgLabError
from srglab.geometry import Family, FormModel
from srglab.process.commands import FORMATS, METHODS, RunConfig, run_command

logger = logging.getLogger(__name__)


def _graph_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--family",
        choices=[f.value for f in Family],
        required=required,
        help="Graph family",
    )
    parser.add_argument("--q", type=int, required=required, help="Base field order")
    parser.add_argument("--r", type=int, required=required, help="Rank parameter")
    parser.add_argument(
        "--eps", type=int, choices=[1, -1], help="Quadric type (omit for nu)"
    )
    parser.add_argument(
        "--model",
        choices=[m.value for m in FormModel],
        help="Coordinate model (default: split for group constructions, else standard)",
    )
    parser.add_argument(
        "--part", type=int, choices=[1, 2], default=1, help="no-even3 vertex class Q = part"
    )
    parser.add_argument(
        "--modulus",
        help="Coordinate field modulus, coefficients low-to-high (e.g. 2,1,1 for x^2 + x + 2)",
    )
    parser.add_argument("--max-vertices", type=int, help="Override the vertex cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srglab",
        description="srglab: strongly regular graphs on nonisotropic points and intriguing sets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  srglab build --family no-perp --q 5 --r 2 --eps 1
  srglab construct --method III --family no-perp --q 5 --r 2 --eps 1 --seed 7
  srglab construct --method II --family no-odd --q 5 --r 2 --eps 1 --k-index 1
  srglab build --family no-even2 --q 2 --r 2 --eps -1 --format dot > petersen.dot
        """,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument("--output-dir", type=Path, help="Override SRGLAB_OUTPUT_DIR")
    parser.add_argument("--no-cache", action="store_true", help="Do not read or write the graph cache")
    parser.add_argument("--no-progress", action="store_true", help="Disable progress bars")
    parser.add_argument(
        "--ignore-caps", action="store_true", help="Lift the parameter and vertex caps"
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    common.add_argument("--output", type=Path, help="Write the report (construct: the set file) here")
    common.add_argument("--seed", type=int, help="Seed for sampled checks")

    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="Build a graph and check its parameters")
    _graph_arguments(build)

    construct = sub.add_parser("construct", parents=[common], help="Emit an intriguing set")
    _graph_arguments(construct)
    construct.add_argument("--method", choices=METHODS, required=True)
    construct.add_argument("--t", type=int, help="Flag dimension for the I methods")
    construct.add_argument("--group", choices=[k.value for k in GroupKind])
    construct.add_argument("--y", help="Point for method III, e.g. '([1],[0],[0],[0],[2])'")
    construct.add_argument("--k-index", type=int, default=0, help="Which method II set")

    verify = sub.add_parser("verify", parents=[common], help="Re-check a set file")
    verify.add_argument("set_file", type=Path)

    sub.add_parser("tables", parents=[common], help="Run the full acceptance grid")

    lemmas = sub.add_parser("lemmas", parents=[common], help="Run lemma checks")
    lemmas.add_argument("--lemma", choices=LEMMAS, help="One check (default: all)")
    lemmas.add_argument("--q", type=int)
    lemmas.add_argument("--r", type=int)

    scan = sub.add_parser("scan", parents=[common], help="Intriguing unions of group orbits")
    _graph_arguments(scan)
    scan.add_argument("--group", choices=[k.value for k in GroupKind])
    scan.add_argument("--max-subsets", type=int, help="Scan only the first masks")
    scan.add_argument("--max-scan-orbits", type=int, help="Override the full-scan orbit limit")

    fields = sub.add_parser("fields", parents=[common], help="Field tables")
    fields.add_argument("action", nargs="?", choices=["list"], default="list")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    names = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in names})


def config_from_args(args: argparse.Namespace) -> Config:
    config = Config()
    if args.output_dir is not None:
        config.output_dir = args.output_dir
    if args.no_cache:
        config.use_cache = False
    if args.no_progress or args.quiet:
        config.show_progress = False
    if args.ignore_caps:
        config.ignore_caps = True
    return config


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )

    rc = run_config_from_args(args)
    try:
        result = run_command(rc, config_from_args(args))
    except SrgLabError as e:
        logger.error(f"{args.command} failed: {e}")
        record = {**e.to_record(), "command": args.command}
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
        return 2

    if rc.output is None or rc.command == "construct":
        sys.stdout.write(result.render(rc.output_format))
    if result.status != 0:
        logger.warning(f"{args.command}: a check did not pass")
    return result.status


if __name__ == "__main__":
    sys.exit(main())
