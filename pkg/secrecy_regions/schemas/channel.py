"""Gaussian channel, power allocation and sweep schemas."""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from secrecy_regions.core.errors import ConfigError

SPLIT_TOLERANCE = 1e-9


class GaussianChannel(BaseModel):
    """Power gains of the four links plus per-user power budgets; all noise variances are 1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    h1: float = Field(..., ge=0)  # user 1 -> receiver
    h2: float = Field(..., ge=0)
    g1: float = Field(..., ge=0)  # user 1 -> eavesdropper
    g2: float = Field(..., ge=0)
    h12: float = Field(..., ge=0)  # user 1 -> user 2 (feedback seen by user 2)
    h21: float = Field(..., ge=0)
    p1: float = Field(..., ge=0)
    p2: float = Field(..., ge=0)

    def with_cooperation(self, h12: float, h21: float | None = None) -> GaussianChannel:
        return self.model_copy(update={"h12": h12, "h21": h12 if h21 is None else h21})


class PowerSplit(BaseModel):
    """Six-way allocation: resolution (U), cooperative and private power for each user."""

    model_config = ConfigDict(frozen=True)

    pu1: float = Field(..., ge=0)
    p12: float = Field(..., ge=0)
    p10: float = Field(..., ge=0)
    pu2: float = Field(..., ge=0)
    p21: float = Field(..., ge=0)
    p20: float = Field(..., ge=0)

    @property
    def total1(self) -> float:
        return self.pu1 + self.p12 + self.p10

    @property
    def total2(self) -> float:
        return self.pu2 + self.p21 + self.p20

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.pu1, self.p12, self.p10, self.pu2, self.p21, self.p20)

    @classmethod
    def from_fractions(
        cls, ch: GaussianChannel, fu1: float, fc1: float, fu2: float, fc2: float
    ) -> PowerSplit:
        """Split each budget as (f_u, f_c, 1 - f_u - f_c) across resolution, cooperative, private."""
        return cls(
            pu1=fu1 * ch.p1,
            p12=fc1 * ch.p1,
            p10=max(0.0, 1.0 - fu1 - fc1) * ch.p1,
            pu2=fu2 * ch.p2,
            p21=fc2 * ch.p2,
            p20=max(0.0, 1.0 - fu2 - fc2) * ch.p2,
        )


def validate_split(ch: GaussianChannel, s: PowerSplit) -> None:
    """Raise ConfigError unless the split spends exactly each user's budget."""
    if abs(s.total1 - ch.p1) > SPLIT_TOLERANCE:
        raise ConfigError(f"pu1 + p12 + p10 = {s.total1!r} but p1 = {ch.p1!r}", field="split")
    if abs(s.total2 - ch.p2) > SPLIT_TOLERANCE:
        raise ConfigError(f"pu2 + p21 + p20 = {s.total2!r} but p2 = {ch.p2!r}", field="split")


class SweepSpec(BaseModel):
    """Grid resolution on each power fraction and number of weight directions for tracing."""

    model_config = ConfigDict(frozen=True)

    steps_per_fraction: int = Field(21, ge=2)
    angles: int = Field(181, ge=2)


class CorrelatedGaussianInput(BaseModel):
    """Jointly Gaussian inputs with powers p1, p2 and correlation coefficient rho."""

    model_config = ConfigDict(frozen=True)

    p1: float = Field(..., ge=0)
    p2: float = Field(..., ge=0)
    rho: float = Field(0.0, ge=0, le=1)


class TTerms(BaseModel):
    """Ratios T1, T2, T3 with R^I = 0.5 * min(log2 T1, log2 T2 + log2 T3)."""

    model_config = ConfigDict(frozen=True)

    t1: float = Field(..., gt=0)
    t2: float = Field(..., gt=0)
    t3: float = Field(..., gt=0)

    @model_validator(mode="after")
    def finite(self):
        for name in ("t1", "t2", "t3"):
            v = getattr(self, name)
            if v != v or v == float("inf"):
                raise ValueError(f"{name} must be finite")
        return self
