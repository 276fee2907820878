"""Pytest fixtures: reference channels, coarse sweeps, discrete channel factories."""
from __future__ import annotations

import json

import numpy as np
import pytest

from secrecy_regions.schemas.channel import GaussianChannel, SweepSpec
from secrecy_regions.schemas.discrete import CHANNEL_AXES, DiscreteMacGf, InputLaw


@pytest.fixture
def fig_channel() -> GaussianChannel:
    """h1 = h2 = 0.6, g1 = 0.2, g2 = 0.1, unit powers, no cooperation."""
    return GaussianChannel(h1=0.6, h2=0.6, g1=0.2, g2=0.1, h12=0.0, h21=0.0, p1=1.0, p2=1.0)


@pytest.fixture
def coarse_spec() -> SweepSpec:
    return SweepSpec(steps_per_fraction=6, angles=31)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def _random_transition(rng: np.random.Generator, sizes: dict[str, int]) -> np.ndarray:
    shape = tuple(sizes[a] for a in CHANNEL_AXES)
    outputs = int(np.prod(shape[2:]))
    rows = rng.dirichlet(np.ones(outputs), size=shape[0] * shape[1])
    return rows.reshape(shape)


@pytest.fixture
def make_channel():
    """Random channel with the given alphabet sizes (defaults all binary)."""

    def make(seed: int = 0, **sizes: int) -> DiscreteMacGf:
        full = {a: 2 for a in CHANNEL_AXES}
        full.update(sizes)
        return DiscreteMacGf(transition=_random_transition(np.random.default_rng(seed), full))

    return make


@pytest.fixture
def make_copy_channel():
    """Random binary channel whose eavesdropper output Z is an exact copy of Y.

    With ``perfect_links`` the partner outputs are Y2 = X1 and Y1 = X2.
    """

    def make(seed: int = 0, perfect_links: bool = False) -> DiscreteMacGf:
        rng = np.random.default_rng(seed)
        p_y = rng.dirichlet(np.ones(2), size=(2, 2))  # p(y | x1, x2)
        t = np.zeros((2, 2, 2, 2, 2, 2))
        for x1 in range(2):
            for x2 in range(2):
                for y in range(2):
                    if perfect_links:
                        t[x1, x2, x2, x1, y, y] = p_y[x1, x2, y]
                    else:
                        t[x1, x2, :, :, y, y] = p_y[x1, x2, y] / 4.0
        return DiscreteMacGf(transition=t)

    return make


@pytest.fixture
def noiseless_mac() -> DiscreteMacGf:
    """Y = (X1, X2) on four symbols; no partner outputs, constant eavesdropper."""
    t = np.zeros((2, 2, 1, 1, 4, 1))
    for x1 in range(2):
        for x2 in range(2):
            t[x1, x2, 0, 0, 2 * x1 + x2, 0] = 1.0
    return DiscreteMacGf(transition=t)


@pytest.fixture
def make_law():
    """Random factored law with the given (|U|, |V1|, |V2|) and (|X1|, |X2|)."""

    def make(seed: int = 0, aux: tuple[int, int, int] = (2, 2, 2), inputs: tuple[int, int] = (2, 2)) -> InputLaw:
        r = np.random.default_rng(seed)
        nu, nv1, nv2 = aux
        return InputLaw(
            pu=r.dirichlet(np.ones(nu)),
            pv1x1_given_u=r.dirichlet(np.ones(nv1 * inputs[0]), size=nu).reshape(nu, nv1, inputs[0]),
            pv2x2_given_u=r.dirichlet(np.ones(nv2 * inputs[1]), size=nu).reshape(nu, nv2, inputs[1]),
        )

    return make


@pytest.fixture
def channel_file(tmp_path, fig_channel):
    """Write a Gaussian channel JSON file; defaults to the cooperation-study channel."""

    def write(name: str = "channel.json", **overrides) -> str:
        doc = fig_channel.model_dump()
        doc.update(overrides)
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return write
