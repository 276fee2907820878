"""Pydantic schemas for channels, input laws, regions and runs."""
from secrecy_regions.schemas.channel import (
    CorrelatedGaussianInput,
    GaussianChannel,
    PowerSplit,
    SweepSpec,
    TTerms,
)
from secrecy_regions.schemas.discrete import DiscreteMacGf, InputLaw, LawSampler
from secrecy_regions.schemas.region import (
    Constraint,
    LpResult,
    MutualInfoBundle,
    RatePoint,
    RatePolytope,
    Region2D,
)
from secrecy_regions.schemas.run import RunConfig, RunMetadata
