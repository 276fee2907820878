"""Discrete memoryless channel and input-law schemas."""
from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from secrecy_regions.core.info import PMF_TOLERANCE

CHANNEL_AXES: tuple[str, ...] = ("x1", "x2", "y1", "y2", "y", "z")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_slices(table: np.ndarray, lead: int, what: str) -> None:
    if np.any(table < 0) or not np.all(np.isfinite(table)):
        raise ValueError(f"{what} must be finite and non-negative")
    sums = table.reshape(table.shape[:lead] + (-1,)).sum(axis=-1)
    worst = float(np.abs(sums - 1.0).max())
    if worst > PMF_TOLERANCE:
        raise ValueError(f"{what} slices are not normalized (worst deviation {worst:.3e})")


class DiscreteMacGf(BaseModel):
    """Transition law p(y1, y2, y, z | x1, x2) as a (|X1|, |X2|, |Y1|, |Y2|, |Y|, |Z|) table."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    transition: np.ndarray

    @field_validator("transition", mode="before")
    @classmethod
    def as_table(cls, v):
        arr = np.array(v, dtype=float)
        if arr.ndim != len(CHANNEL_AXES):
            raise ValueError(f"transition must have {len(CHANNEL_AXES)} axes {CHANNEL_AXES}, got {arr.ndim}")
        _check_slices(arr, 2, "transition")
        return _frozen(arr)

    @property
    def sizes(self) -> dict[str, int]:
        return dict(zip(CHANNEL_AXES, self.transition.shape))

    @classmethod
    def from_flat(cls, sizes: dict[str, int], flat: list[float]) -> DiscreteMacGf:
        """Build from a row-major array ordered by (x1, x2, y1, y2, y, z)."""
        shape = tuple(int(sizes[a]) for a in CHANNEL_AXES)
        arr = np.asarray(flat, dtype=float)
        if arr.size != int(np.prod(shape)):
            raise ValueError(f"transition has {arr.size} entries, sizes {shape} need {int(np.prod(shape))}")
        return cls(transition=arr.reshape(shape))


class InputLaw(BaseModel):
    """p(u) p(v1, x1 | u) p(v2, x2 | u)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pu: np.ndarray  # (|U|,)
    pv1x1_given_u: np.ndarray  # (|U|, |V1|, |X1|)
    pv2x2_given_u: np.ndarray  # (|U|, |V2|, |X2|)

    @field_validator("pu", mode="before")
    @classmethod
    def as_pu(cls, v):
        arr = np.array(v, dtype=float).reshape(-1)
        _check_slices(arr[None, :], 1, "pu")
        return _frozen(arr)

    @field_validator("pv1x1_given_u", "pv2x2_given_u", mode="before")
    @classmethod
    def as_conditional(cls, v, info):
        arr = np.array(v, dtype=float)
        if arr.ndim != 3:
            raise ValueError(f"{info.field_name} must be a (|U|, |V|, |X|) table")
        _check_slices(arr, 1, info.field_name)
        return _frozen(arr)

    @model_validator(mode="after")
    def same_u(self):
        u = self.pu.shape[0]
        if self.pv1x1_given_u.shape[0] != u or self.pv2x2_given_u.shape[0] != u:
            raise ValueError("conditional tables must have one slice per value of U")
        return self

    @property
    def aux_sizes(self) -> tuple[int, int, int]:
        return (self.pu.shape[0], self.pv1x1_given_u.shape[1], self.pv2x2_given_u.shape[1])

    @property
    def input_sizes(self) -> tuple[int, int]:
        return (self.pv1x1_given_u.shape[2], self.pv2x2_given_u.shape[2])


class LawSampler(BaseModel):
    """How input laws are drawn: deterministic vertices plus uniform, or seeded Dirichlet draws."""

    model_config = ConfigDict(frozen=True)

    mode: Literal["grid", "random"] = "random"
    samples: int = Field(200, ge=1)
    seed: int = Field(20080101, ge=0, lt=2**64)
