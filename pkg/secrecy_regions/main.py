"""secrecy-regions command-line entrypoint."""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from secrecy_regions import __version__
from secrecy_regions.config import settings
from secrecy_regions.schemas.run import RunConfig
from secrecy_regions.services.runner import EXIT_CONFIG, describe_error, run

logger = logging.getLogger(__name__)

COMMANDS = ("region", "sum-rate", "dm-region", "reduce", "fig3", "fig4")


def _aux_sizes(text: str) -> tuple[int, int, int]:
    parts = text.lower().replace(",", "x").split("x")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected |U|x|V1|x|V2|, e.g. 2x2x2, got {text!r}")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"alphabet sizes must be integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="secrecy-regions",
        description="Secrecy rate regions and sum rates of the two-user MAC with generalized feedback.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--out", type=Path, help="output file (directory for fig3/fig4); stdout if omitted")
        c.add_argument("--format", choices=("csv", "json"), default=None)
        c.add_argument("--steps", type=int, default=None, help="grid points per power fraction")
        c.add_argument("--angles", type=int, default=None, help="weight directions recorded for tracing")
        if name in ("fig3", "fig4"):
            continue
        c.add_argument("--mode", required=True)
        c.add_argument("--channel", type=Path, required=True, help="channel JSON file")
        if name in ("dm-region", "reduce"):
            c.add_argument("--seed", type=int, default=None, help="sampler or Monte Carlo seed")
        if name == "dm-region":
            c.add_argument("--samples", type=int, default=None, help="input laws to sample")
            c.add_argument("--sampler", choices=("grid", "random"), default="random")
            c.add_argument("--aux-sizes", type=_aux_sizes, default=(2, 2, 2), help="|U|x|V1|x|V2|")
        if name == "reduce":
            c.add_argument("--rho", type=float, default=None, help="input correlation; searched if omitted")
            c.add_argument("--validate", action="store_true", help="add Monte Carlo estimates")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Flags override settings; settings override built-in defaults.

    Grid flags stay None when absent so a channel file can supply them.
    """

    def pick(name: str, default):
        value = getattr(args, name, None)
        return default if value is None else value

    return RunConfig(
        command=args.command,
        mode=getattr(args, "mode", None),
        channel=getattr(args, "channel", None),
        steps=args.steps,
        angles=args.angles,
        samples=pick("samples", settings.default_samples),
        seed=pick("seed", settings.default_seed),
        sampler=pick("sampler", "random"),
        aux_sizes=pick("aux_sizes", (2, 2, 2)),
        rho=getattr(args, "rho", None),
        validate_mc=bool(getattr(args, "validate", False)),
        out=args.out,
        format=pick("format", settings.default_format),
    )


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=settings.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (ValidationError, ValueError) as exc:
        logger.error("Invalid configuration: %s", describe_error(exc))
        print(f"error: {describe_error(exc)}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
