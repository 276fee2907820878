"""Exact information measures on finite pmfs and the scalar Gaussian capacity function.

All quantities are in bits. Joint laws carry named axes (``"U"``, ``"X1"``, ``"Y"``, ...) so
mutual-information terms can be written the way they read, e.g.
``conditional_mi(j, ["X1"], ["Y"], ["X2", "V1", "U"])``.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.special import entr

from secrecy_regions.core.errors import ConfigError, NumericError

logger = logging.getLogger(__name__)

PMF_TOLERANCE = 1e-12
# Negative information above this is floating noise and clamps to 0; below it is a bug.
MI_NOISE_FLOOR = -1e-10

_LN2 = math.log(2.0)


def _check_normalized(p: np.ndarray, what: str, tol: float = PMF_TOLERANCE) -> None:
    if p.size == 0:
        raise ConfigError("empty probability table", field=what)
    if not np.all(np.isfinite(p)):
        raise ConfigError("probabilities must be finite", field=what)
    if np.any(p < 0):
        raise ConfigError(f"negative probability {float(p.min())!r}", field=what)
    total = float(p.sum())
    if abs(total - 1.0) > tol:
        raise ConfigError(f"probabilities sum to {total!r}, not 1", field=what)


class Pmf(BaseModel):
    """Probability vector over a finite alphabet."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probabilities: np.ndarray

    @field_validator("probabilities", mode="before")
    @classmethod
    def as_vector(cls, v):
        arr = np.array(v, dtype=float).reshape(-1)
        _check_normalized(arr, "probabilities")
        arr.setflags(write=False)
        return arr

    @classmethod
    def normalized(cls, weights: Sequence[float] | np.ndarray) -> Pmf:
        """Build a pmf by explicitly rescaling non-negative weights (the only renormalizing path)."""
        w = np.asarray(weights, dtype=float).reshape(-1)
        if np.any(w < 0) or float(w.sum()) <= 0:
            raise ConfigError("weights must be non-negative with positive total", field="weights")
        return cls(probabilities=w / w.sum())

    @property
    def size(self) -> int:
        return int(self.probabilities.size)


class JointPmf(BaseModel):
    """Dense joint pmf with one named axis per random variable."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probabilities: np.ndarray
    axes: tuple[str, ...]

    @field_validator("probabilities", mode="before")
    @classmethod
    def as_array(cls, v):
        arr = np.array(v, dtype=float)
        _check_normalized(arr, "probabilities")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def axes_match_shape(self):
        if len(self.axes) != self.probabilities.ndim:
            raise ConfigError(
                f"{len(self.axes)} axis names for a {self.probabilities.ndim}-dimensional table",
                field="axes",
            )
        if len(set(self.axes)) != len(self.axes):
            raise ConfigError(f"duplicate axis names in {self.axes}", field="axes")
        return self

    @property
    def alphabet_sizes(self) -> dict[str, int]:
        return dict(zip(self.axes, self.probabilities.shape))

    def marginal(self, axes: Iterable[str]) -> np.ndarray:
        """Marginal table over ``axes`` (kept in the joint's axis order)."""
        keep = self._indices(axes, "axes")
        drop = tuple(i for i in range(len(self.axes)) if i not in keep)
        return self.probabilities.sum(axis=drop) if drop else self.probabilities

    def _indices(self, axes: Iterable[str], what: str) -> set[int]:
        out = set()
        for name in axes:
            if name not in self.axes:
                raise ConfigError(f"unknown axis {name!r}; joint has {self.axes}", field=what)
            out.add(self.axes.index(name))
        return out


def cap(snr: float) -> float:
    """Gaussian capacity C(x) = 0.5 * log2(1 + x) in bits per channel use."""
    if snr < 0 or math.isnan(snr):
        raise ConfigError(f"snr must be non-negative, got {snr!r}", field="snr")
    return 0.5 * math.log2(1.0 + snr)


def cap_array(snr: np.ndarray) -> np.ndarray:
    """Vectorized C(x) for sweeps; callers guarantee non-negative input."""
    return 0.5 * np.log2(1.0 + snr)


def _entropy_bits(table: np.ndarray) -> float:
    return float(entr(table).sum() / _LN2)


def entropy(p: Pmf | Sequence[float] | np.ndarray) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    if not isinstance(p, Pmf):
        p = Pmf(probabilities=p)
    return _entropy_bits(p.probabilities)


def _clamp_information(value: float, what: str) -> float:
    if value < MI_NOISE_FLOOR:
        raise NumericError(f"{what} evaluated to {value!r} bits (below {MI_NOISE_FLOOR})")
    if value < -1e-12:
        logger.warning("Clamped %s = %.3e bits to 0", what, value)
    return max(value, 0.0)


def _disjoint(*groups: Sequence[str]) -> None:
    seen: set[str] = set()
    for g in groups:
        overlap = seen.intersection(g)
        if overlap:
            raise ConfigError(f"axis sets overlap on {sorted(overlap)}", field="axes")
        seen.update(g)


def _joint_entropy(j: JointPmf, axes: Sequence[str]) -> float:
    if not axes:
        return 0.0
    return _entropy_bits(j.marginal(axes))


def mutual_information(j: JointPmf, axes_a: Sequence[str], axes_b: Sequence[str]) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B)."""
    return conditional_mi(j, axes_a, axes_b, ())


def conditional_mi(
    j: JointPmf,
    axes_a: Sequence[str],
    axes_b: Sequence[str],
    axes_c: Sequence[str] = (),
) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C); equals I(A;B) for empty C."""
    a, b, c = list(axes_a), list(axes_b), list(axes_c)
    _disjoint(a, b, c)
    if not a or not b:
        return 0.0
    value = (
        _joint_entropy(j, a + c)
        + _joint_entropy(j, b + c)
        - _joint_entropy(j, a + b + c)
        - _joint_entropy(j, c)
    )
    label = f"I({','.join(a)};{','.join(b)}" + (f"|{','.join(c)})" if c else ")")
    return _clamp_information(value, label)
