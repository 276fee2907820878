"""Gaussian MAC with generalized feedback and confidential messages: regions and sum rates.

Split arrays are (S, 6) with columns (pu1, p12, p10, pu2, p21, p20). The scalar entry points
evaluate the same array code on a single row so scalar and sweep results agree bit-for-bit.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Literal

import numpy as np

from secrecy_regions.config import settings
from secrecy_regions.core.errors import ConfigError
from secrecy_regions.core.info import cap_array
from secrecy_regions.schemas.channel import (
    GaussianChannel,
    PowerSplit,
    SweepSpec,
    TTerms,
    validate_split,
)
from secrecy_regions.schemas.region import BUNDLE_FIELDS, MutualInfoBundle, Region2D
from secrecy_regions.services.polytope import corner_points, hull2d, project_bundles, reduce_candidates
from secrecy_regions.services.sweep import blocks, fan_out, split_grid

logger = logging.getLogger(__name__)

Strategy = Literal["partial", "full"]


def _columns(splits: np.ndarray) -> tuple[np.ndarray, ...]:
    s = np.asarray(splits, dtype=float).reshape(-1, 6)
    return tuple(s[:, i] for i in range(6))


def _coherent_snr(ga: float, gb: float, ch: GaussianChannel, pu1: np.ndarray, pu2: np.ndarray) -> np.ndarray:
    """ga * P1 + gb * P2 + 2 sqrt(ga gb pu1 pu2): received SNR with U sent coherently."""
    return ga * ch.p1 + gb * ch.p2 + 2.0 * np.sqrt(ga * gb * pu1 * pu2)


def bundle_arrays(ch: GaussianChannel, splits: np.ndarray, *, secrecy: bool = True) -> np.ndarray:
    """(S, 10) information constants, one row per split; ``secrecy=False`` zeroes the eavesdropper."""
    pu1, p12, p10, pu2, p21, p20 = _columns(splits)
    main = cap_array(_coherent_snr(ch.h1, ch.h2, ch, pu1, pu2))
    eve = cap_array(_coherent_snr(ch.g1, ch.g2, ch, pu1, pu2))
    zero = np.zeros_like(pu1)
    cols = [
        cap_array(ch.h1 * p10),
        cap_array(ch.h2 * p20),
        cap_array(ch.h1 * p10 + ch.h2 * p20),
        cap_array(ch.h12 * p12 / (1.0 + ch.h12 * p10)),
        cap_array(ch.h21 * p21 / (1.0 + ch.h21 * p20)),
    ]
    if secrecy:
        cols += [
            main - eve,
            cap_array(ch.g1 * p10),
            cap_array(ch.g2 * p20),
            cap_array(ch.g1 * p10 + ch.g2 * p20),
            eve,
        ]
    else:
        cols += [main, zero, zero, zero, zero]
    return np.column_stack(cols)


def bundle_partial(ch: GaussianChannel, s: PowerSplit) -> MutualInfoBundle:
    """Information constants of the jointly Gaussian input built from split ``s``."""
    validate_split(ch, s)
    row = bundle_arrays(ch, np.array([s.as_tuple()]))[0]
    return MutualInfoBundle(**dict(zip(BUNDLE_FIELDS, (float(v) for v in row))))


def _full_points(ch: GaussianChannel, splits: np.ndarray, *, secrecy: bool = True) -> np.ndarray:
    """Corner points of {R1 <= C(h12 p12), R2 <= C(h21 p21), R1 + R2 <= S} per split."""
    pu1, p12, _, pu2, p21, _ = _columns(splits)
    x = cap_array(ch.h12 * p12)
    y = cap_array(ch.h21 * p21)
    s = np.minimum(x + y, cap_array(_coherent_snr(ch.h1, ch.h2, ch, pu1, pu2)))
    if secrecy:
        s = s - cap_array(_coherent_snr(ch.g1, ch.g2, ch, pu1, pu2))
    return corner_points(x, y, s)


def _sweep(
    ch: GaussianChannel,
    spec: SweepSpec,
    *,
    strategy: Strategy,
    secrecy: bool,
    label: str,
) -> Region2D:
    private = strategy == "partial"
    splits = split_grid(ch, spec.steps_per_fraction, private_power=private)
    parts = blocks(splits.shape[0], settings.sweep_chunk_size)
    workers = settings.worker_count
    logger.info("Sweeping %s: %d splits in %d blocks on %d workers", label, splits.shape[0], len(parts), workers)
    started = time.perf_counter()

    def evaluate(part: slice) -> np.ndarray:
        chunk = splits[part]
        if private:
            pts = project_bundles(bundle_arrays(ch, chunk, secrecy=secrecy))
        else:
            pts = _full_points(ch, chunk, secrecy=secrecy)
        return reduce_candidates(pts)

    pieces = fan_out(evaluate, parts, workers)
    merged = np.vstack([np.zeros((1, 2))] + pieces)
    region = hull2d(merged)
    logger.info("Swept %s in %.2fs: %d hull vertices", label, time.perf_counter() - started, len(region.hull))
    return region


def region_partial(ch: GaussianChannel, spec: SweepSpec) -> Region2D:
    """Partial decode-and-forward secrecy region: hull over the power-split grid."""
    return _sweep(ch, spec, strategy="partial", secrecy=True, label="partial-DF secrecy region")


def region_full(ch: GaussianChannel, spec: SweepSpec) -> Region2D:
    """Full decode-and-forward secrecy region; private power is fixed to zero."""
    return _sweep(ch, spec, strategy="full", secrecy=True, label="full-DF secrecy region")


def regular_region(ch: GaussianChannel, spec: SweepSpec, mode: Strategy = "partial") -> Region2D:
    """Same sweep with the eavesdropper removed (MAC with generalized feedback, no secrecy)."""
    return _sweep(ch, spec, strategy=mode, secrecy=False, label=f"{mode}-DF regular region")


# --- sum rates ---------------------------------------------------------------------------------


def sum_rate_arrays(ch: GaussianChannel, splits: np.ndarray, mode: Strategy) -> np.ndarray:
    pu1, p12, p10, pu2, p21, p20 = _columns(splits)
    main = cap_array(_coherent_snr(ch.h1, ch.h2, ch, pu1, pu2))
    eve = cap_array(_coherent_snr(ch.g1, ch.g2, ch, pu1, pu2))
    if mode == "partial":
        cooperative = (
            cap_array(ch.h12 * p12 / (1.0 + ch.h12 * p10))
            + cap_array(ch.h21 * p21 / (1.0 + ch.h21 * p20))
            + cap_array(ch.h1 * p10 + ch.h2 * p20)
        )
    else:
        cooperative = cap_array(ch.h12 * p12) + cap_array(ch.h21 * p21)
    return np.maximum(np.minimum(main, cooperative) - eve, 0.0)


def sum_rate_partial(ch: GaussianChannel, s: PowerSplit) -> float:
    """Largest R1 + R2 of the partial decode-and-forward region at split ``s``."""
    validate_split(ch, s)
    return float(sum_rate_arrays(ch, np.array([s.as_tuple()]), "partial")[0])


def sum_rate_full(ch: GaussianChannel, s: PowerSplit) -> float:
    """Largest R1 + R2 of the full decode-and-forward region; requires p10 = p20 = 0."""
    validate_split(ch, s)
    if s.p10 != 0.0 or s.p20 != 0.0:
        raise ConfigError(
            f"full decode-and-forward uses no private power, got p10={s.p10!r}, p20={s.p20!r}",
            field="split",
        )
    return float(sum_rate_arrays(ch, np.array([s.as_tuple()]), "full")[0])


def max_sum_rate(ch: GaussianChannel, mode: Strategy, spec: SweepSpec) -> tuple[float, PowerSplit]:
    """Grid maximum of the sum rate and its split; ties go to the least private power."""
    splits = split_grid(ch, spec.steps_per_fraction, private_power=(mode == "partial"))
    values = sum_rate_arrays(ch, splits, mode)
    best = float(values.max())
    tied = np.flatnonzero(values >= best - 1e-12)
    private = splits[tied, 2] + splits[tied, 5]
    idx = int(tied[np.argmin(private)])
    split = PowerSplit(**dict(zip(("pu1", "p12", "p10", "pu2", "p21", "p20"), (float(v) for v in splits[idx]))))
    logger.info("Max %s sum rate %.6f bits over %d splits", mode, best, splits.shape[0])
    return best, split


def t_terms(ch: GaussianChannel, s: PowerSplit) -> TTerms:
    """T1, T2, T3 with R^I = 0.5 * min(log2 T1, log2 T2 + log2 T3)."""
    validate_split(ch, s)
    eve = 1.0 + ch.g1 * ch.p1 + ch.g2 * ch.p2 + 2.0 * math.sqrt(ch.g1 * ch.g2 * s.pu1 * s.pu2)
    main = 1.0 + ch.h1 * ch.p1 + ch.h2 * ch.p2 + 2.0 * math.sqrt(ch.h1 * ch.h2 * s.pu1 * s.pu2)
    t1 = main / eve
    t2 = (1.0 + ch.h12 * (s.p10 + s.p12)) * (1.0 + ch.h21 * (s.p20 + s.p21)) / eve
    t3 = (1.0 + ch.h1 * s.p10 + ch.h2 * s.p20) / ((1.0 + s.p10 * ch.h12) * (1.0 + s.p20 * ch.h21))
    return TTerms(t1=t1, t2=t2, t3=t3)
