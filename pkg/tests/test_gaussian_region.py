"""Gaussian regions, sum rates and the cooperation studies."""
from __future__ import annotations

import math

import numpy as np
import pytest

from secrecy_regions.core.info import cap
from secrecy_regions.schemas.channel import GaussianChannel, PowerSplit, SweepSpec
from secrecy_regions.services.gaussian_region import (
    bundle_arrays,
    bundle_partial,
    max_sum_rate,
    region_full,
    region_partial,
    regular_region,
    sum_rate_full,
    sum_rate_partial,
    t_terms,
)
from secrecy_regions.services.polytope import (
    build_polytope,
    hausdorff_distance,
    max_sum_on_region,
    project_bundle,
    region_contains,
    trace_region,
)
from secrecy_regions.services.sweep import split_grid, user_fractions


def _random_channel(rng: np.random.Generator, **fixed: float) -> GaussianChannel:
    gains = dict(zip(("h1", "h2", "g1", "g2", "h12", "h21"), rng.uniform(0.0, 2.0, 6)))
    powers = dict(zip(("p1", "p2"), rng.uniform(0.0, 3.0, 2)))
    gains.update(powers)
    gains.update(fixed)
    return GaussianChannel(**gains)


def _no_private_split(rng: np.random.Generator, ch: GaussianChannel) -> PowerSplit:
    f1, f2 = rng.uniform(0.0, 1.0, 2)
    return PowerSplit(pu1=f1 * ch.p1, p12=ch.p1 - f1 * ch.p1, p10=0.0, pu2=f2 * ch.p2, p21=ch.p2 - f2 * ch.p2, p20=0.0)


def _random_split(rng: np.random.Generator, ch: GaussianChannel) -> PowerSplit:
    w1, w2 = rng.dirichlet(np.ones(3), size=2)
    return PowerSplit(
        pu1=w1[0] * ch.p1, p12=w1[1] * ch.p1, p10=w1[2] * ch.p1,
        pu2=w2[0] * ch.p2, p21=w2[1] * ch.p2, p20=w2[2] * ch.p2,
    )


def test_user_fractions_cover_the_triangle():
    f = user_fractions(6)
    assert f.shape == (21, 3)
    assert np.allclose(f.sum(axis=1), 1.0)
    no_private = user_fractions(6, private_power=False)
    assert no_private.shape == (6, 3)
    assert np.all(no_private[:, 2] == 0.0)


def test_split_grid_spends_each_budget(fig_channel):
    grid = split_grid(fig_channel.model_copy(update={"p1": 2.0}), 4)
    assert grid.shape == (100, 6)
    assert np.allclose(grid[:, :3].sum(axis=1), 2.0)
    assert np.allclose(grid[:, 3:].sum(axis=1), 1.0)


def test_bundle_partial_values(fig_channel):
    ch = fig_channel.with_cooperation(1.0)
    s = PowerSplit(pu1=0.4, p12=0.6, p10=0.0, pu2=0.4, p21=0.6, p20=0.0)
    m = bundle_partial(ch, s)
    eve = cap(0.3 + 2 * math.sqrt(0.02 * 0.16))
    assert m.a1 == m.a2 == m.a3 == 0.0
    assert m.a4 == pytest.approx(cap(0.6))
    assert m.a6 == pytest.approx(cap(1.2 + 2 * math.sqrt(0.36 * 0.16)) - eve)
    assert m.b4 == pytest.approx(eve)
    assert m.b3 == 0.0


def test_scalar_and_array_bundles_agree(fig_channel, rng):
    ch = fig_channel.with_cooperation(0.55)
    s = _random_split(rng, ch)
    row = bundle_arrays(ch, np.array([s.as_tuple()]))[0]
    assert np.array_equal(bundle_partial(ch, s).as_array(), row)


def test_split_must_spend_budget(fig_channel):
    bad = PowerSplit(pu1=0.5, p12=0.2, p10=0.2, pu2=0.0, p21=0.0, p20=1.0)
    with pytest.raises(ValueError):
        bundle_partial(fig_channel, bad)
    with pytest.raises(ValueError):
        sum_rate_partial(fig_channel, bad)


def test_full_rejects_private_power(fig_channel):
    s = PowerSplit(pu1=0.0, p12=0.5, p10=0.5, pu2=0.0, p21=1.0, p20=0.0)
    with pytest.raises(ValueError):
        sum_rate_full(fig_channel, s)


def test_projection_agrees_with_lp_trace_on_a_split(fig_channel):
    ch = fig_channel.with_cooperation(0.6)
    s = PowerSplit(pu1=0.2, p12=0.4, p10=0.4, pu2=0.2, p21=0.4, p20=0.4)
    m = bundle_partial(ch, s)
    traced = trace_region(build_polytope(m), 181)
    exact = project_bundle(m)
    for v in traced.hull:
        assert region_contains(exact, v, tol=1e-7)
    assert max_sum_on_region(traced) == pytest.approx(max_sum_on_region(exact), abs=1e-7)
    assert traced.r1_max == pytest.approx(exact.r1_max, abs=1e-7)
    assert traced.r2_max == pytest.approx(exact.r2_max, abs=1e-7)


def test_sum_rate_matches_region_sum_face(fig_channel, rng):
    ch = fig_channel.with_cooperation(0.6)
    for _ in range(20):
        s = _random_split(rng, ch)
        region = project_bundle(bundle_partial(ch, s))
        if not region.is_origin:
            assert sum_rate_partial(ch, s) == pytest.approx(max_sum_on_region(region), abs=1e-9)


def test_partial_equals_full_without_private_power(rng):
    for _ in range(1000):
        ch = _random_channel(rng)
        s = _no_private_split(rng, ch)
        assert abs(sum_rate_partial(ch, s) - sum_rate_full(ch, s)) <= 1e-12


def test_t3_at_most_one_with_strong_feedback(rng):
    for _ in range(1000):
        ch = _random_channel(rng)
        ch = ch.model_copy(update={"h12": ch.h1 + rng.uniform(0, 1), "h21": ch.h2 + rng.uniform(0, 1)})
        assert t_terms(ch, _random_split(rng, ch)).t3 <= 1.0 + 1e-12


def test_sum_rate_from_t_terms(rng):
    for _ in range(200):
        ch = _random_channel(rng)
        s = _random_split(rng, ch)
        t = t_terms(ch, s)
        expected = max(0.0, 0.5 * min(math.log2(t.t1), math.log2(t.t2) + math.log2(t.t3)))
        assert sum_rate_partial(ch, s) == pytest.approx(expected, abs=1e-12)


def test_zero_gains_give_zero_sum_rate_and_least_private_power():
    ch = GaussianChannel(h1=0, h2=0, g1=0, g2=0, h12=0, h21=0, p1=1, p2=1)
    value, split = max_sum_rate(ch, "partial", SweepSpec(steps_per_fraction=5))
    assert value == 0.0
    assert split.p10 == 0.0 and split.p20 == 0.0


def test_full_region_inside_partial_region(fig_channel, coarse_spec):
    for h in (0.2, 0.55, 1.0):
        ch = fig_channel.with_cooperation(h)
        partial = region_partial(ch, coarse_spec)
        for v in region_full(ch, coarse_spec).hull:
            assert region_contains(partial, v, tol=1e-6)


def test_full_decode_loses_rate_with_weak_links(fig_channel, coarse_spec):
    ch = fig_channel.with_cooperation(0.2)
    partial = region_partial(ch, coarse_spec)
    full = region_full(ch, coarse_spec)
    assert partial.r1_max - full.r1_max > 0.01
    assert hausdorff_distance(partial, full) > 0.01


def test_strong_links_make_sum_rates_coincide(fig_channel, coarse_spec):
    ch = fig_channel.with_cooperation(1.0)
    partial, _ = max_sum_rate(ch, "partial", coarse_spec)
    full, _ = max_sum_rate(ch, "full", coarse_spec)
    assert abs(partial - full) <= 1e-9


def test_cooperation_regions_are_nested(fig_channel, coarse_spec):
    regions = [region_partial(fig_channel.with_cooperation(h), coarse_spec) for h in (0.0, 0.6, 1.0)]
    for inner, outer in zip(regions, regions[1:]):
        for v in inner.hull:
            assert region_contains(outer, v, tol=1e-9)
        assert hausdorff_distance(inner, outer) >= 0.01
    assert max_sum_on_region(regions[2]) - max_sum_on_region(regions[0]) > 0.01


def test_secrecy_region_inside_regular_region(fig_channel, coarse_spec):
    for h in (0.0, 0.6, 1.0):
        ch = fig_channel.with_cooperation(h)
        regular = regular_region(ch, coarse_spec)
        for v in region_partial(ch, coarse_spec).hull:
            assert region_contains(regular, v, tol=1e-9)
    regular_full = regular_region(fig_channel.with_cooperation(1.0), coarse_spec, mode="full")
    for v in region_full(fig_channel.with_cooperation(1.0), coarse_spec).hull:
        assert region_contains(regular_full, v, tol=1e-9)


def test_secrecy_costs_sum_rate_at_moderate_cooperation(fig_channel, coarse_spec):
    ch = fig_channel.with_cooperation(0.6)
    regular = max_sum_on_region(regular_region(ch, coarse_spec))
    secret = max_sum_on_region(region_partial(ch, coarse_spec))
    assert regular - secret >= 0.01


GROWING = ("h1", "h2", "h12", "h21")
SHRINKING = ("g1", "g2")


@pytest.mark.parametrize("gain", GROWING + SHRINKING)
def test_region_monotone_in_each_gain(rng, gain):
    spec = SweepSpec(steps_per_fraction=4, angles=31)
    for _ in range(4):
        ch = _random_channel(rng)
        bumped = ch.model_copy(update={gain: getattr(ch, gain) + rng.uniform(0.1, 1.0)})
        for evaluate in (region_partial, region_full):
            small, large = evaluate(ch, spec), evaluate(bumped, spec)
            if gain in SHRINKING:
                small, large = large, small
            for v in small.hull:
                assert region_contains(large, v, tol=1e-9)


def test_refined_grid_keeps_every_point(fig_channel):
    # steps 2k - 1 halves the spacing of steps k, so the coarse grid is a subset
    ch = fig_channel.with_cooperation(0.6)
    for k in (3, 4):
        coarse = region_partial(ch, SweepSpec(steps_per_fraction=k))
        fine = region_partial(ch, SweepSpec(steps_per_fraction=2 * k - 1))
        for v in coarse.hull:
            assert region_contains(fine, v, tol=1e-9)


def test_sweep_is_deterministic_across_worker_counts(fig_channel, coarse_spec, monkeypatch):
    from secrecy_regions.config import settings

    ch = fig_channel.with_cooperation(0.6)
    monkeypatch.setattr(settings, "sweep_chunk_size", 7)
    monkeypatch.setattr(settings, "threads", 1)
    one = region_partial(ch, coarse_spec)
    monkeypatch.setattr(settings, "threads", 4)
    four = region_partial(ch, coarse_spec)
    assert one == four
