"""Serialization of regions and scalar results.

Numbers carry 12 significant digits in both formats. CSV: ``# key=value`` metadata lines
(sorted by key), then a header row and data rows. JSON: ``{"metadata": ..., "hull": [[r1, r2], ...]}`` or
``{"metadata": ..., "values": {...}}``, indented and key-sorted. Parsing a file and
re-rendering it reproduces the same bytes.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Literal

from secrecy_regions.core.errors import ConfigError
from secrecy_regions.schemas.region import RatePoint, Region2D

logger = logging.getLogger(__name__)

Format = Literal["csv", "json"]

REGION_HEADER = "r1,r2"
VALUES_HEADER = "quantity,value"


def _num(v: float) -> str:
    return format(float(v) + 0.0, ".12g")


def _check_metadata(metadata: dict[str, str]) -> None:
    for key, value in metadata.items():
        if "=" in key or any(ch in key + value for ch in "\r\n"):
            raise ConfigError(f"metadata entry {key!r} cannot be written on one line", field="metadata")


def _csv_lines(metadata: dict[str, str], header: str, rows: list[tuple[str, str]]) -> str:
    _check_metadata(metadata)
    lines = [f"# {k}={metadata[k]}" for k in sorted(metadata)]
    lines.append(header)
    lines.extend(f"{a},{b}" for a, b in rows)
    return "\n".join(lines) + "\n"


def render_region(region: Region2D, metadata: dict[str, str], fmt: Format = "csv") -> str:
    if fmt == "csv":
        rows = [(_num(p.r1), _num(p.r2)) for p in region.hull]
        return _csv_lines(metadata, REGION_HEADER, rows)
    doc = {"metadata": metadata, "hull": [[float(_num(p.r1)), float(_num(p.r2))] for p in region.hull]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_values(values: dict[str, float], metadata: dict[str, str], fmt: Format = "csv") -> str:
    """Named scalar results (sum rates, reduction rates) in row order of ``values``."""
    if fmt == "csv":
        return _csv_lines(metadata, VALUES_HEADER, [(k, _num(v)) for k, v in values.items()])
    doc = {"metadata": metadata, "values": {k: float(_num(v)) for k, v in values.items()}}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_csv(text: str) -> tuple[dict[str, str], Region2D | dict[str, float]]:
    """Inverse of the CSV renderers: (metadata, region or named values)."""
    metadata: dict[str, str] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("# "):
        key, sep, value = lines[i][2:].partition("=")
        if not sep:
            raise ConfigError(f"metadata line {i + 1} has no '='", field="csv")
        metadata[key] = value
        i += 1
    if i >= len(lines):
        raise ConfigError("missing header row", field="csv")
    header, body = lines[i], lines[i + 1 :]
    pairs = [row.split(",", 1) for row in body if row]
    if any(len(p) != 2 for p in pairs):
        raise ConfigError("every data row needs two columns", field="csv")
    if header == REGION_HEADER:
        hull = [RatePoint(r1=float(a), r2=float(b)) for a, b in pairs]
        return metadata, Region2D(hull=hull)
    if header == VALUES_HEADER:
        return metadata, {k: float(v) for k, v in pairs}
    raise ConfigError(f"unknown header {header!r}", field="csv")


def parse_json(text: str) -> tuple[dict[str, str], Region2D | dict[str, float]]:
    doc = json.loads(text)
    metadata = {str(k): str(v) for k, v in doc.get("metadata", {}).items()}
    if "hull" in doc:
        return metadata, Region2D(hull=[RatePoint(r1=a, r2=b) for a, b in doc["hull"]])
    if "values" in doc:
        return metadata, {str(k): float(v) for k, v in doc["values"].items()}
    raise ConfigError("document has neither 'hull' nor 'values'", field="json")


def parse_output(text: str, fmt: Format) -> tuple[dict[str, str], Region2D | dict[str, float]]:
    return parse_csv(text) if fmt == "csv" else parse_json(text)


def render(payload: Region2D | dict[str, float], metadata: dict[str, str], fmt: Format) -> str:
    if isinstance(payload, Region2D):
        return render_region(payload, metadata, fmt)
    return render_values(payload, metadata, fmt)


def write_output(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    logger.info("Wrote %s (%d bytes)", path, len(text.encode("utf-8")))
    return path
