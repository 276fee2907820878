"""Dispatch for CLI runs and the cooperation-level presets."""
from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable
from functools import partial
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from secrecy_regions.config import settings
from secrecy_regions.core.errors import ConfigError, NumericError
from secrecy_regions.schemas.channel import CorrelatedGaussianInput, GaussianChannel, SweepSpec
from secrecy_regions.schemas.discrete import DiscreteMacGf, LawSampler
from secrecy_regions.schemas.region import Region2D
from secrecy_regions.schemas.run import REGION_LABELS, RunConfig, RunMetadata
from secrecy_regions.services import dm_region, gaussian_region, reductions
from secrecy_regions.services.monte_carlo import estimate_reductions
from secrecy_regions.services.output import Format, render, write_output

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# Cooperation study channel: symmetric main links, weaker eavesdropper links, unit powers.
PRESET_CHANNEL = GaussianChannel(h1=0.6, h2=0.6, g1=0.2, g2=0.1, h12=0.0, h21=0.0, p1=1.0, p2=1.0)
FIG3_COOPERATION = (0.0, 0.6, 1.0)
FIG4_COOPERATION = (0.2, 0.55, 1.0)

Payload = Region2D | dict[str, float]


def _read_json(path: Path) -> dict:
    doc = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ConfigError(f"{path} must hold a JSON object", field="channel")
    return doc


FILE_RUN_KEYS = ("rho", "steps", "angles")


def load_gaussian_channel(path: Path) -> tuple[GaussianChannel, dict[str, Any]]:
    """Channel gains and powers, plus whichever of "rho", "steps", "angles" the file sets."""
    doc = _read_json(path)
    extras = {key: doc.pop(key) for key in FILE_RUN_KEYS if key in doc}
    return GaussianChannel(**doc), extras


def load_dm_channel(path: Path) -> DiscreteMacGf:
    doc = _read_json(path)
    if "sizes" not in doc or "transition" not in doc:
        raise ConfigError(f"{path} needs 'sizes' and 'transition'", field="channel")
    return DiscreteMacGf.from_flat(doc["sizes"], doc["transition"])


def _dm_echo(ch: DiscreteMacGf) -> dict[str, Any]:
    return {"sizes": ch.sizes, "transition": [float(v) for v in ch.transition.reshape(-1)]}


def _sweep_spec(config: RunConfig) -> SweepSpec:
    steps = config.steps if config.steps is not None else settings.default_steps
    angles = config.angles if config.angles is not None else settings.default_angles
    return SweepSpec(steps_per_fraction=steps, angles=angles)


def _with_file_grid(config: RunConfig, extras: dict[str, Any]) -> RunConfig:
    """Fill grid values the flags left unset from the channel file."""
    update = {k: extras[k] for k in ("steps", "angles") if getattr(config, k) is None and k in extras}
    if not update:
        return config
    return RunConfig.model_validate({**config.model_dump(), **update})


def _gaussian_region(config: RunConfig, ch: GaussianChannel) -> Region2D:
    spec = _sweep_spec(config)
    if config.mode == "partial":
        return gaussian_region.region_partial(ch, spec)
    if config.mode == "full":
        return gaussian_region.region_full(ch, spec)
    if config.mode == "regular":
        return gaussian_region.regular_region(ch, spec, "partial")
    return reductions.mac_wiretap_region(ch, spec)


def _sum_rate(config: RunConfig, ch: GaussianChannel) -> dict[str, float]:
    value, split = gaussian_region.max_sum_rate(ch, config.mode, _sweep_spec(config))
    return {"sum_rate": value, **split.model_dump()}


def _dm_region(config: RunConfig, ch: DiscreteMacGf) -> Region2D:
    sampler = LawSampler(mode=config.sampler, samples=config.samples, seed=config.seed)
    if config.mode == "partial":
        return dm_region.region_partial_dm(ch, sampler, config.aux_sizes)
    if config.mode == "regular":
        return dm_region.regular_region_dm(ch, sampler, config.aux_sizes)
    return dm_region.region_full_dm(ch, sampler, config.aux_sizes[0])


def _reduce(config: RunConfig, ch: GaussianChannel, rho: float | None) -> dict[str, float]:
    if config.mode == "mac-wt":
        r1, r2, rs = reductions.mac_wiretap_bounds(ch)
        values = {"r1_bound": r1, "r2_bound": r2, "sum_bound": rs}
    else:
        single = reductions.relay_eavesdropper_rate if config.mode == "relay" else reductions.miso_sum_rate
        best = (
            reductions.best_relay_eavesdropper_rate
            if config.mode == "relay"
            else reductions.best_miso_sum_rate
        )
        if rho is None:
            value, rho = best(ch, ch.p1, ch.p2)
        else:
            value = single(ch, CorrelatedGaussianInput(p1=ch.p1, p2=ch.p2, rho=rho))
        values = {"rate": value, "rho": rho}
    if config.validate_mc:
        inp = CorrelatedGaussianInput(p1=ch.p1, p2=ch.p2, rho=rho or 0.0)
        estimates = estimate_reductions(ch, inp, settings.mc_samples, config.seed)
        keys = {
            "mac-wt": ("mac_wiretap_r1", "mac_wiretap_r2", "mac_wiretap_sum"),
            "relay": ("relay_eavesdropper",),
            "miso": ("miso_sum",),
        }[config.mode]
        values.update({f"monte_carlo_{k}": estimates[k] for k in keys})
    return values


def _metadata(config: RunConfig, channel: dict[str, Any], **extra: Any) -> dict[str, str]:
    fields = {"command": config.command, "mode": config.mode, "evaluates": config.label, "channel": channel}
    fields.update(extra)
    return RunMetadata(**fields).as_header()


def _emit(config: RunConfig, payload: Payload, metadata: dict[str, str]) -> None:
    if config.out is not None:
        write_output(config.out, render(payload, metadata, config.format))
    elif isinstance(payload, Region2D):
        sys.stdout.write(render(payload, metadata, config.format))
    else:
        # primary value on stdout, the rest (split, rho, estimates) to the log
        value = next(iter(payload.values()))
        print(float(f"{value:.12g}"))
        for key, other in list(payload.items())[1:]:
            logger.info("%s = %.12g", key, other)


def _write_preset(
    command: str,
    levels: tuple[float, ...],
    kinds: tuple[tuple[str, str, Callable[[GaussianChannel], Region2D]], ...],
    out_dir: Path,
    spec: SweepSpec,
    fmt: Format,
) -> list[Path]:
    written = []
    for h in levels:
        ch = PRESET_CHANNEL.with_cooperation(h)
        for kind, label, evaluate in kinds:
            metadata = RunMetadata(
                command=command,
                mode=kind,
                evaluates=label,
                channel=ch.model_dump(),
                steps=spec.steps_per_fraction,
                angles=spec.angles,
            ).as_header()
            path = out_dir / f"{command}_{kind}_h{h:g}.{fmt}"
            written.append(write_output(path, render(evaluate(ch), metadata, fmt)))
    return written


def fig3_preset(out_dir: Path = Path("."), spec: SweepSpec | None = None, fmt: Format = "csv") -> list[Path]:
    """Regular and secrecy partial decode-and-forward regions at h12 = h21 in (0, 0.6, 1.0)."""
    spec = spec or SweepSpec()
    kinds = (
        ("regular", REGION_LABELS[("region", "regular")], partial(gaussian_region.regular_region, spec=spec)),
        ("secrecy", REGION_LABELS[("region", "partial")], partial(gaussian_region.region_partial, spec=spec)),
    )
    return _write_preset("fig3", FIG3_COOPERATION, kinds, out_dir, spec, fmt)


def fig4_preset(out_dir: Path = Path("."), spec: SweepSpec | None = None, fmt: Format = "csv") -> list[Path]:
    """Partial and full decode-and-forward secrecy regions at h12 = h21 in (0.2, 0.55, 1.0)."""
    spec = spec or SweepSpec()
    kinds = (
        ("partial", REGION_LABELS[("region", "partial")], partial(gaussian_region.region_partial, spec=spec)),
        ("full", REGION_LABELS[("region", "full")], partial(gaussian_region.region_full, spec=spec)),
    )
    return _write_preset("fig4", FIG4_COOPERATION, kinds, out_dir, spec, fmt)


def execute(config: RunConfig) -> Payload | list[Path]:
    """Do the work of one run; raises on bad input or numeric failure."""
    if config.command in ("fig3", "fig4"):
        preset = fig3_preset if config.command == "fig3" else fig4_preset
        return preset(config.out or Path("."), _sweep_spec(config), config.format)
    if config.command == "dm-region":
        ch = load_dm_channel(config.channel)
        aux = config.aux_sizes if config.mode != "full" else (config.aux_sizes[0], 1, 1)
        payload = _dm_region(config, ch)
        metadata = _metadata(
            config, _dm_echo(ch), samples=config.samples, seed=config.seed, sampler=config.sampler, aux_sizes=aux
        )
    else:
        ch, extras = load_gaussian_channel(config.channel)
        config = _with_file_grid(config, extras)
        spec = _sweep_spec(config)
        if config.command == "region":
            payload = _gaussian_region(config, ch)
            metadata = _metadata(config, ch.model_dump(), steps=spec.steps_per_fraction, angles=spec.angles)
        elif config.command == "sum-rate":
            payload = _sum_rate(config, ch)
            metadata = _metadata(config, ch.model_dump(), steps=spec.steps_per_fraction)
        else:
            rho = config.rho if config.rho is not None else extras.get("rho")
            payload = _reduce(config, ch, rho)
            extra = {"rho": rho} if rho is not None else {}
            if config.validate_mc:
                extra.update(samples=settings.mc_samples, seed=config.seed)
            metadata = _metadata(config, ch.model_dump(), **extra)
    _emit(config, payload, metadata)
    return payload


def describe_error(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        parts = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"])
            parts.append(f"{loc}: {err['msg']}" if loc else err["msg"])
        return "; ".join(parts)
    return str(exc)


def run(config: RunConfig) -> int:
    """Exit status: 0 success, 2 bad configuration, 3 numeric or I/O failure."""
    try:
        execute(config)
    except (NumericError, OSError) as exc:
        logger.error("Run failed: %s", describe_error(exc))
        print(f"error: {describe_error(exc)}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        logger.error("Invalid configuration: %s", describe_error(exc))
        print(f"error: {describe_error(exc)}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK
