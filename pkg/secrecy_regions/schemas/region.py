"""Rate-region schemas: information constants, the eight-variable polytope, 2-D regions."""
from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Column order of every constraint row.
RATE_VARIABLES: tuple[str, ...] = (
    "R10", "R20", "R12", "R21",
    "Rt10", "Rt20", "Rt12", "Rt21",  # binning (sacrificed) rates
)

BUNDLE_FIELDS: tuple[str, ...] = ("a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4")


class MutualInfoBundle(BaseModel):
    """The ten information constants of the partial decode-and-forward polytope (bits).

    a1 = I(X1;Y|X2,V1,U)       a2 = I(X2;Y|X1,V2,U)      a3 = I(X1,X2;Y|V1,V2,U)
    a4 = I(V1;Y2|X2,U)         a5 = I(V2;Y1|X1,U)        a6 = I(X1,X2;Y) - I(X1,X2;Z)
    b1 = I(X1;Z|X2,V1,U)       b2 = I(X2;Z|X1,V2,U)      b3 = I(X1,X2;Z|V1,V2,U)
    b4 = I(X1,X2;Z)
    """

    model_config = ConfigDict(frozen=True)

    a1: float = Field(..., ge=0)
    a2: float = Field(..., ge=0)
    a3: float = Field(..., ge=0)
    a4: float = Field(..., ge=0)
    a5: float = Field(..., ge=0)
    a6: float
    b1: float = Field(..., ge=0)
    b2: float = Field(..., ge=0)
    b3: float = Field(..., ge=0)
    b4: float = Field(..., ge=0)

    @model_validator(mode="after")
    def conditioning_structure(self):
        if self.b1 > self.b3 + 1e-9 or self.b2 > self.b3 + 1e-9:
            raise ValueError(f"b1={self.b1!r}, b2={self.b2!r} must not exceed b3={self.b3!r}")
        return self

    @classmethod
    def zeros(cls) -> MutualInfoBundle:
        return cls(**{k: 0.0 for k in BUNDLE_FIELDS})

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, k) for k in BUNDLE_FIELDS], dtype=float)

    def without_eavesdropper(self, main_sum: float) -> MutualInfoBundle:
        """Same bundle with every eavesdropper term removed; ``main_sum`` = I(X1,X2;Y)."""
        return self.model_copy(update={"a6": main_sum, "b1": 0.0, "b2": 0.0, "b3": 0.0, "b4": 0.0})


class RatePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    r1: float = Field(..., ge=0)
    r2: float = Field(..., ge=0)

    def as_tuple(self) -> tuple[float, float]:
        return (self.r1, self.r2)


class Region2D(BaseModel):
    """Upper-right boundary of a convex, downward-closed region containing the origin.

    Vertices run from (0, R2max) to (R1max, 0) with increasing r1 and non-increasing r2;
    the region that is only the origin is stored as [(0, 0)].
    """

    model_config = ConfigDict(frozen=True)

    hull: list[RatePoint]

    @field_validator("hull")
    @classmethod
    def ordered(cls, v: list[RatePoint]):
        if not v:
            raise ValueError("hull must contain at least one vertex")
        for prev, cur in zip(v, v[1:]):
            if cur.r1 < prev.r1 - 1e-12 or cur.r2 > prev.r2 + 1e-12:
                raise ValueError("hull vertices must have increasing r1 and non-increasing r2")
        return v

    @classmethod
    def origin(cls) -> Region2D:
        return cls(hull=[RatePoint(r1=0.0, r2=0.0)])

    @property
    def is_origin(self) -> bool:
        return len(self.hull) == 1 and self.hull[0].r1 == 0.0 and self.hull[0].r2 == 0.0

    @property
    def r1_max(self) -> float:
        return max(p.r1 for p in self.hull)

    @property
    def r2_max(self) -> float:
        return max(p.r2 for p in self.hull)

    def vertices(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.hull], dtype=float).reshape(-1, 2)


class Constraint(BaseModel):
    """One row ``coefficients . x  (<= | =)  rhs`` over RATE_VARIABLES."""

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[float, ...]
    relation: Literal["<=", "="]
    rhs: float
    label: str = ""

    @field_validator("coefficients")
    @classmethod
    def eight_columns(cls, v):
        if len(v) != len(RATE_VARIABLES):
            raise ValueError(f"expected {len(RATE_VARIABLES)} coefficients, got {len(v)}")
        return v

    @field_validator("rhs")
    @classmethod
    def finite_rhs(cls, v):
        if not np.isfinite(v):
            raise ValueError("right-hand side must be finite")
        return v


class RatePolytope(BaseModel):
    """Linear system over the eight rate variables; every variable is bounded below by 0."""

    model_config = ConfigDict(frozen=True)

    constraints: list[Constraint]

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(A_ub, b_ub, A_eq, b_eq) as dense arrays, empty blocks shaped (0, 8)."""
        n = len(RATE_VARIABLES)
        ub = [c for c in self.constraints if c.relation == "<="]
        eq = [c for c in self.constraints if c.relation == "="]
        a_ub = np.array([c.coefficients for c in ub], dtype=float).reshape(-1, n)
        b_ub = np.array([c.rhs for c in ub], dtype=float)
        a_eq = np.array([c.coefficients for c in eq], dtype=float).reshape(-1, n)
        b_eq = np.array([c.rhs for c in eq], dtype=float)
        return a_ub, b_ub, a_eq, b_eq


class LpResult(BaseModel):
    """Outcome of a weighted-sum LP; ``point`` is None when the system is infeasible."""

    model_config = ConfigDict(frozen=True)

    feasible: bool
    value: float = 0.0
    point: RatePoint | None = None
