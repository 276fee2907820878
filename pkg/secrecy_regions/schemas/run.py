"""CLI run configuration and the metadata header written with every result."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from secrecy_regions import __version__
from secrecy_regions.core.errors import ConfigError

Command = Literal["region", "sum-rate", "dm-region", "reduce", "fig3", "fig4"]
Mode = Literal["partial", "full", "regular", "mac-wt", "relay", "miso"]

ALLOWED_MODES: dict[str, frozenset[str]] = {
    "region": frozenset({"partial", "full", "regular", "mac-wt"}),
    "sum-rate": frozenset({"partial", "full"}),
    "dm-region": frozenset({"partial", "full", "regular"}),
    "reduce": frozenset({"mac-wt", "relay", "miso"}),
    "fig3": frozenset(),
    "fig4": frozenset(),
}

# What each (command, mode) evaluates, as written into the metadata header.
REGION_LABELS: dict[tuple[str, str | None], str] = {
    ("region", "partial"): "Gaussian partial decode-and-forward secrecy region",
    ("region", "full"): "Gaussian full decode-and-forward secrecy region",
    ("region", "regular"): "Gaussian partial decode-and-forward region without secrecy",
    ("region", "mac-wt"): "Gaussian MAC wiretap region (no feedback, power backoff)",
    ("sum-rate", "partial"): "Gaussian partial decode-and-forward maximal secrecy sum rate",
    ("sum-rate", "full"): "Gaussian full decode-and-forward maximal secrecy sum rate",
    ("dm-region", "partial"): "discrete partial decode-and-forward secrecy region (sampled laws)",
    ("dm-region", "full"): "discrete full decode-and-forward secrecy region (sampled laws)",
    ("dm-region", "regular"): "discrete partial decode-and-forward region without secrecy (sampled laws)",
    ("reduce", "mac-wt"): "Gaussian MAC wiretap bounds at full power",
    ("reduce", "relay"): "Gaussian relay-eavesdropper secrecy rate",
    ("reduce", "miso"): "Gaussian virtual MISO wiretap secrecy sum rate",
}

FIXED_CHANNEL_COMMANDS = frozenset({"fig3", "fig4"})


class RunConfig(BaseModel):
    """One CLI invocation after flags and settings are merged."""

    model_config = ConfigDict(frozen=True)

    command: Command
    mode: Mode | None = None
    channel: Path | None = None
    # None until resolved: flag, then channel file, then settings
    steps: int | None = Field(None, ge=2)
    angles: int | None = Field(None, ge=2)
    samples: int = Field(200, ge=1)
    seed: int = Field(20080101, ge=0, lt=2**64)
    sampler: Literal["grid", "random"] = "random"
    aux_sizes: tuple[int, int, int] = (2, 2, 2)
    rho: float | None = Field(None, ge=0, le=1)
    validate_mc: bool = False
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def meaningful_pair(self):
        allowed = ALLOWED_MODES[self.command]
        if self.command in FIXED_CHANNEL_COMMANDS:
            if self.mode is not None:
                raise ConfigError(f"{self.command} takes no --mode", field="mode")
            if self.channel is not None:
                raise ConfigError(f"{self.command} uses a fixed channel; drop --channel", field="channel")
            return self
        if self.mode is None:
            raise ConfigError(f"{self.command} needs --mode, one of {sorted(allowed)}", field="mode")
        if self.mode not in allowed:
            raise ConfigError(
                f"mode {self.mode!r} is not available for {self.command}; choose from {sorted(allowed)}",
                field="mode",
            )
        if self.channel is None:
            raise ConfigError(f"{self.command} needs --channel", field="channel")
        if self.validate_mc and self.command != "reduce":
            raise ConfigError("--validate applies only to reduce", field="validate")
        return self

    @property
    def label(self) -> str:
        return REGION_LABELS[(self.command, self.mode)]


class RunMetadata(BaseModel):
    """Header fields; everything needed to regenerate the file, and nothing time-dependent."""

    model_config = ConfigDict(frozen=True)

    command: str
    evaluates: str
    channel: dict[str, Any]
    mode: str | None = None
    steps: int | None = None
    angles: int | None = None
    samples: int | None = None
    seed: int | None = None
    sampler: str | None = None
    aux_sizes: tuple[int, ...] | None = None
    rho: float | None = None
    version: str = __version__

    def as_header(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for key, value in self.model_dump(exclude_none=True).items():
            if key == "channel":
                out[key] = json.dumps(value, sort_keys=True, separators=(",", ":"))
            elif isinstance(value, (tuple, list)):
                out[key] = "x".join(str(v) for v in value)
            else:
                out[key] = str(value)
        return out
