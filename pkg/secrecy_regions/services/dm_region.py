"""Regions of small discrete memoryless channels from sampled input laws.

Each input law p(u) p(v1, x1 | u) p(v2, x2 | u) gives one MutualInfoBundle; the reported
region is the hull of the union of their projections. Finite auxiliary alphabets make every
result an inner bound, so the sizes used are always reported alongside the region.
"""
from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Callable
from typing import Literal

import numpy as np

from secrecy_regions.config import settings
from secrecy_regions.core.errors import ConfigError
from secrecy_regions.core.info import JointPmf, conditional_mi, mutual_information
from secrecy_regions.schemas.discrete import DiscreteMacGf, InputLaw, LawSampler
from secrecy_regions.schemas.region import BUNDLE_FIELDS, MutualInfoBundle, Region2D
from secrecy_regions.services.polytope import (
    corner_points,
    hull2d,
    max_sum_on_region,
    project_bundle,
    project_bundles,
    reduce_candidates,
)
from secrecy_regions.services.sweep import blocks, fan_out

logger = logging.getLogger(__name__)

JOINT_AXES: tuple[str, ...] = ("U", "V1", "V2", "X1", "X2", "Y1", "Y2", "Y", "Z")
DEFAULT_AUX_SIZES: tuple[int, int, int] = (2, 2, 2)

# Laws evaluated per worker task.
_LAW_BLOCK = 64

Strategy = Literal["partial", "full"]


def joint_law(ch: DiscreteMacGf, law: InputLaw) -> JointPmf:
    """Full joint over (U, V1, V2, X1, X2, Y1, Y2, Y, Z)."""
    sizes = ch.sizes
    if law.input_sizes != (sizes["x1"], sizes["x2"]):
        raise ConfigError(
            f"law has |X1|, |X2| = {law.input_sizes}, channel has ({sizes['x1']}, {sizes['x2']})",
            field="law",
        )
    table = np.einsum(
        "u,uax,ubw,xwpqrs->uabxwpqrs",
        law.pu,
        law.pv1x1_given_u,
        law.pv2x2_given_u,
        ch.transition,
    )
    return JointPmf(probabilities=table, axes=JOINT_AXES)


def _bundle_values(j: JointPmf, *, secrecy: bool = True) -> list[float]:
    main = mutual_information(j, ["X1", "X2"], ["Y"])
    values = [
        conditional_mi(j, ["X1"], ["Y"], ["X2", "V1", "U"]),
        conditional_mi(j, ["X2"], ["Y"], ["X1", "V2", "U"]),
        conditional_mi(j, ["X1", "X2"], ["Y"], ["V1", "V2", "U"]),
        conditional_mi(j, ["V1"], ["Y2"], ["X2", "U"]),
        conditional_mi(j, ["V2"], ["Y1"], ["X1", "U"]),
    ]
    if not secrecy:
        return values + [main, 0.0, 0.0, 0.0, 0.0]
    eve = mutual_information(j, ["X1", "X2"], ["Z"])
    return values + [
        main - eve,
        conditional_mi(j, ["X1"], ["Z"], ["X2", "V1", "U"]),
        conditional_mi(j, ["X2"], ["Z"], ["X1", "V2", "U"]),
        conditional_mi(j, ["X1", "X2"], ["Z"], ["V1", "V2", "U"]),
        eve,
    ]


def bundle_dm(ch: DiscreteMacGf, law: InputLaw, *, secrecy: bool = True) -> MutualInfoBundle:
    """The ten information constants of ``law`` on ``ch``; ``secrecy=False`` drops the eavesdropper."""
    values = _bundle_values(joint_law(ch, law), secrecy=secrecy)
    return MutualInfoBundle(**dict(zip(BUNDLE_FIELDS, values)))


def full_df_bounds(ch: DiscreteMacGf, law: InputLaw, *, secrecy: bool = True) -> tuple[float, float, float]:
    """(I(X1;Y2|X2,U), I(X2;Y1|X1,U), sum bound) of the full decode-and-forward region."""
    j = joint_law(ch, law)
    x = conditional_mi(j, ["X1"], ["Y2"], ["X2", "U"])
    y = conditional_mi(j, ["X2"], ["Y1"], ["X1", "U"])
    s = min(x + y, mutual_information(j, ["X1", "X2"], ["Y"]))
    if secrecy:
        s -= mutual_information(j, ["X1", "X2"], ["Z"])
    return x, y, s


def embed_full_law(law: InputLaw) -> InputLaw:
    """Rewrite p(u) p(x1|u) p(x2|u) with V1 = X1 and V2 = X2, the partial-DF law it corresponds to."""

    def copy_input(table: np.ndarray) -> np.ndarray:
        px = table.sum(axis=1)  # (|U|, |X|)
        n = px.shape[1]
        return np.einsum("ux,vx->uvx", px, np.eye(n))

    return InputLaw(
        pu=law.pu,
        pv1x1_given_u=copy_input(law.pv1x1_given_u),
        pv2x2_given_u=copy_input(law.pv2x2_given_u),
    )


# --- sampling ----------------------------------------------------------------------------------


def _dirichlet_law(rng: np.random.Generator, aux: tuple[int, int, int], inputs: tuple[int, int]) -> InputLaw:
    nu, nv1, nv2 = aux
    nx1, nx2 = inputs
    return InputLaw(
        pu=rng.dirichlet(np.ones(nu)),
        pv1x1_given_u=rng.dirichlet(np.ones(nv1 * nx1), size=nu).reshape(nu, nv1, nx1),
        pv2x2_given_u=rng.dirichlet(np.ones(nv2 * nx2), size=nu).reshape(nu, nv2, nx2),
    )


def _slice_choices(nv: int, nx: int) -> list[np.ndarray]:
    """Point masses on every (v, x), then the uniform slice."""
    flat = [np.eye(nv * nx)[k] for k in range(nv * nx)]
    flat.append(np.full(nv * nx, 1.0 / (nv * nx)))
    return [f.reshape(nv, nx) for f in flat]


def _grid_laws(aux: tuple[int, int, int], inputs: tuple[int, int], limit: int) -> list[InputLaw]:
    """Vertex laws plus the uniform law: uniform U, each conditional slice a point mass or uniform.

    The enumeration is thinned to ``limit`` evenly spaced laws; the all-uniform law is always kept.
    """
    nu, nv1, nv2 = aux
    nx1, nx2 = inputs
    first = list(itertools.product(_slice_choices(nv1, nx1), repeat=nu))
    second = list(itertools.product(_slice_choices(nv2, nx2), repeat=nu))
    total = len(first) * len(second)
    picks = np.unique(np.linspace(0, total - 1, min(limit, total)).round().astype(np.int64))
    uniform = total - 1
    if picks[-1] != uniform:
        picks = np.append(picks, uniform)
    pu = np.full(nu, 1.0 / nu)
    laws = []
    for idx in picks:
        a, b = divmod(int(idx), len(second))
        laws.append(InputLaw(pu=pu, pv1x1_given_u=np.stack(first[a]), pv2x2_given_u=np.stack(second[b])))
    return laws


def sample_laws(
    sampler: LawSampler, aux_sizes: tuple[int, int, int], input_sizes: tuple[int, int]
) -> list[InputLaw]:
    """Input laws in sample order; random sample i depends only on (seed, i)."""
    if sampler.mode == "grid":
        return _grid_laws(aux_sizes, input_sizes, sampler.samples)
    out = []
    for i in range(sampler.samples):
        rng = np.random.default_rng(np.random.SeedSequence([sampler.seed, i]))
        out.append(_dirichlet_law(rng, aux_sizes, input_sizes))
    return out


def check_alphabets(ch: DiscreteMacGf, aux_sizes: tuple[int, ...]) -> None:
    limit = settings.max_dm_alphabet
    sizes = dict(ch.sizes)
    sizes.update(zip(("u", "v1", "v2"), aux_sizes))
    if any(n < 1 for n in sizes.values()):
        raise ConfigError(f"alphabet sizes must be positive, got {sizes}", field="alphabet")
    too_big = {k: n for k, n in sizes.items() if n > limit}
    if too_big:
        raise ConfigError(
            f"alphabets {too_big} exceed the limit of {limit} symbols per variable "
            f"(SECRECY_REGIONS_MAX_DM_ALPHABET)",
            field="alphabet",
        )


# --- regions -----------------------------------------------------------------------------------


def _region_from_laws(
    ch: DiscreteMacGf,
    sampler: LawSampler,
    aux_sizes: tuple[int, int, int],
    points_for: Callable[[list[InputLaw]], np.ndarray],
    label: str,
) -> Region2D:
    check_alphabets(ch, aux_sizes)
    laws = sample_laws(sampler, aux_sizes, (ch.sizes["x1"], ch.sizes["x2"]))
    count = len(laws)
    parts = blocks(count, _LAW_BLOCK)
    logger.info(
        "Sampling %s: %d %s laws, aux sizes %s, seed %d", label, count, sampler.mode, aux_sizes, sampler.seed
    )
    started = time.perf_counter()

    def evaluate(part: slice) -> np.ndarray:
        return reduce_candidates(points_for(laws[part]))

    pieces = fan_out(evaluate, parts)
    region = hull2d(np.vstack([np.zeros((1, 2))] + pieces))
    logger.info("Sampled %s in %.2fs: %d hull vertices", label, time.perf_counter() - started, len(region.hull))
    return region


def _partial_points(ch: DiscreteMacGf, *, secrecy: bool):
    def points(laws: list[InputLaw]) -> np.ndarray:
        rows = np.array([_bundle_values(joint_law(ch, law), secrecy=secrecy) for law in laws])
        return project_bundles(rows)

    return points


def _full_points(ch: DiscreteMacGf, *, secrecy: bool):
    def points(laws: list[InputLaw]) -> np.ndarray:
        bounds = np.array([full_df_bounds(ch, law, secrecy=secrecy) for law in laws]).reshape(-1, 3)
        return corner_points(bounds[:, 0], bounds[:, 1], bounds[:, 2])

    return points


def region_partial_dm(
    ch: DiscreteMacGf,
    sampler: LawSampler,
    aux_sizes: tuple[int, int, int] = DEFAULT_AUX_SIZES,
) -> Region2D:
    """Partial decode-and-forward secrecy region over sampled laws with the given (|U|, |V1|, |V2|)."""
    return _region_from_laws(ch, sampler, aux_sizes, _partial_points(ch, secrecy=True), "partial-DF DM region")


def regular_region_dm(
    ch: DiscreteMacGf,
    sampler: LawSampler,
    aux_sizes: tuple[int, int, int] = DEFAULT_AUX_SIZES,
) -> Region2D:
    """Same sampling with every eavesdropper term removed."""
    return _region_from_laws(ch, sampler, aux_sizes, _partial_points(ch, secrecy=False), "regular DM region")


def region_full_dm(ch: DiscreteMacGf, sampler: LawSampler, aux_size: int = DEFAULT_AUX_SIZES[0]) -> Region2D:
    """Full decode-and-forward secrecy region over laws p(u) p(x1|u) p(x2|u)."""
    return _region_from_laws(ch, sampler, (aux_size, 1, 1), _full_points(ch, secrecy=True), "full-DF DM region")


def sum_rate_dm(ch: DiscreteMacGf, law: InputLaw, mode: Strategy = "partial") -> float:
    """Largest R1 + R2 achieved by a single law."""
    if mode == "full":
        _, _, s = full_df_bounds(ch, law)
        return max(s, 0.0)
    return max_sum_on_region(project_bundle(bundle_dm(ch, law)))
