"""Closed-form special cases: MAC wiretap, relay-eavesdropper and virtual MISO wiretap.

Gaussian forms take real inputs with unit noise. The discrete forms evaluate the same
mutual-information expressions on a finite channel and serve as cross-checks of the
general evaluators.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from secrecy_regions.core.errors import ConfigError
from secrecy_regions.core.info import JointPmf, cap, cap_array, conditional_mi, mutual_information
from secrecy_regions.schemas.channel import CorrelatedGaussianInput, GaussianChannel, SweepSpec
from secrecy_regions.schemas.discrete import DiscreteMacGf
from secrecy_regions.schemas.region import Region2D
from secrecy_regions.services.polytope import corner_points, hull2d

logger = logging.getLogger(__name__)

CHANNEL_JOINT_AXES: tuple[str, ...] = ("X1", "X2", "Y1", "Y2", "Y", "Z")


def _mac_wiretap_arrays(ch: GaussianChannel, q1: np.ndarray, q2: np.ndarray):
    r1 = cap_array(ch.h1 * q1) - cap_array(ch.g1 * q1 / (1.0 + ch.g2 * q2))
    r2 = cap_array(ch.h2 * q2) - cap_array(ch.g2 * q2 / (1.0 + ch.g1 * q1))
    rs = cap_array(ch.h1 * q1 + ch.h2 * q2) - cap_array(ch.g1 * q1 + ch.g2 * q2)
    return np.maximum(r1, 0.0), np.maximum(r2, 0.0), np.maximum(rs, 0.0)


def mac_wiretap_bounds(ch: GaussianChannel, p1: float | None = None, p2: float | None = None) -> tuple[float, float, float]:
    """(R1 bound, R2 bound, sum bound) with independent inputs at powers p1, p2, each clamped at 0."""
    q1 = ch.p1 if p1 is None else p1
    q2 = ch.p2 if p2 is None else p2
    if q1 < 0 or q2 < 0:
        raise ConfigError(f"powers must be non-negative, got ({q1}, {q2})", field="power")
    r1, r2, rs = _mac_wiretap_arrays(ch, np.array([q1]), np.array([q2]))
    return float(r1[0]), float(r2[0]), float(rs[0])


def mac_wiretap_region(ch: GaussianChannel, spec: SweepSpec) -> Region2D:
    """Hull of the MAC wiretap pentagons over a per-user power backoff grid (feedback gains unused)."""
    levels = np.linspace(0.0, 1.0, spec.steps_per_fraction)
    q1 = np.repeat(levels * ch.p1, levels.size)
    q2 = np.tile(levels * ch.p2, levels.size)
    r1, r2, rs = _mac_wiretap_arrays(ch, q1, q2)
    pts = corner_points(r1, r2, rs)
    return hull2d(np.vstack([np.zeros((1, 2)), pts]))


def _coherent(a: float, b: float, p1: float, p2: float, rho: float) -> float:
    return a * p1 + b * p2 + 2.0 * rho * math.sqrt(a * b * p1 * p2)


def relay_eavesdropper_rate(ch: GaussianChannel, inp: CorrelatedGaussianInput) -> float:
    """Secrecy rate of user 1 when user 2 only relays (decode-and-forward)."""
    relay_link = cap(ch.h12 * inp.p1 * (1.0 - inp.rho**2))
    direct = cap(_coherent(ch.h1, ch.h2, inp.p1, inp.p2, inp.rho))
    eve = cap(_coherent(ch.g1, ch.g2, inp.p1, inp.p2, inp.rho))
    return max(min(relay_link, direct) - eve, 0.0)


def miso_sum_rate(ch: GaussianChannel, inp: CorrelatedGaussianInput) -> float:
    """Secrecy sum rate of the virtual two-antenna wiretap channel formed by perfect feedback."""
    main = cap(_coherent(ch.h1, ch.h2, inp.p1, inp.p2, inp.rho))
    eve = cap(_coherent(ch.g1, ch.g2, inp.p1, inp.p2, inp.rho))
    return max(main - eve, 0.0)


def _best_over_rho(fn, ch: GaussianChannel, p1: float, p2: float, rho_steps: int) -> tuple[float, float]:
    if rho_steps < 2:
        raise ConfigError(f"rho_steps must be at least 2, got {rho_steps}", field="rho_steps")
    best, best_rho = -1.0, 0.0
    for rho in np.linspace(0.0, 1.0, rho_steps):
        value = fn(ch, CorrelatedGaussianInput(p1=p1, p2=p2, rho=float(rho)))
        if value > best + 1e-15:
            best, best_rho = value, float(rho)
    logger.debug("%s: best %.6f bits at rho=%.4f", fn.__name__, best, best_rho)
    return best, best_rho


def best_relay_eavesdropper_rate(
    ch: GaussianChannel, p1: float, p2: float, rho_steps: int = 101
) -> tuple[float, float]:
    """Largest relay-eavesdropper rate over an evenly spaced rho grid, with its rho (smallest on ties)."""
    return _best_over_rho(relay_eavesdropper_rate, ch, p1, p2, rho_steps)


def best_miso_sum_rate(ch: GaussianChannel, p1: float, p2: float, rho_steps: int = 101) -> tuple[float, float]:
    return _best_over_rho(miso_sum_rate, ch, p1, p2, rho_steps)


# --- discrete forms ----------------------------------------------------------------------------


def channel_joint(ch: DiscreteMacGf, px1x2: np.ndarray) -> JointPmf:
    """Joint over (X1, X2, Y1, Y2, Y, Z) for an input law p(x1, x2)."""
    pxx = np.asarray(px1x2, dtype=float)
    if pxx.shape != ch.transition.shape[:2]:
        raise ConfigError(f"input law has shape {pxx.shape}, channel inputs are {ch.transition.shape[:2]}", field="law")
    return JointPmf(probabilities=np.einsum("ab,abpqrs->abpqrs", pxx, ch.transition), axes=CHANNEL_JOINT_AXES)


def mac_wiretap_bounds_dm(ch: DiscreteMacGf, px1: np.ndarray, px2: np.ndarray) -> tuple[float, float, float]:
    """MAC wiretap bounds for independent inputs p(x1) p(x2), clamped at 0."""
    j = channel_joint(ch, np.outer(px1, px2))
    r1 = conditional_mi(j, ["X1"], ["Y"], ["X2"]) - mutual_information(j, ["X1"], ["Z"])
    r2 = conditional_mi(j, ["X2"], ["Y"], ["X1"]) - mutual_information(j, ["X2"], ["Z"])
    rs = mutual_information(j, ["X1", "X2"], ["Y"]) - mutual_information(j, ["X1", "X2"], ["Z"])
    return max(r1, 0.0), max(r2, 0.0), max(rs, 0.0)


def mac_wiretap_region_dm(ch: DiscreteMacGf, px1: np.ndarray, px2: np.ndarray) -> Region2D:
    r1, r2, rs = mac_wiretap_bounds_dm(ch, px1, px2)
    return hull2d(np.vstack([np.zeros((1, 2)), corner_points(r1, r2, rs)]))


def relay_rate_dm(ch: DiscreteMacGf, px1x2: np.ndarray) -> float:
    j = channel_joint(ch, px1x2)
    best = min(conditional_mi(j, ["X1"], ["Y2"], ["X2"]), mutual_information(j, ["X1", "X2"], ["Y"]))
    return max(best - mutual_information(j, ["X1", "X2"], ["Z"]), 0.0)


def miso_rate_dm(ch: DiscreteMacGf, px1x2: np.ndarray) -> float:
    j = channel_joint(ch, px1x2)
    return max(mutual_information(j, ["X1", "X2"], ["Y"]) - mutual_information(j, ["X1", "X2"], ["Z"]), 0.0)
