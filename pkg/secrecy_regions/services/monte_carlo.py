"""Monte Carlo mutual information for the jointly Gaussian channel model.

Samples are drawn from the linear model with unit-variance noise and correlated inputs
X1 = sqrt(p1) (sqrt(rho) U0 + sqrt(1 - rho) W1), X2 likewise with W2, so that
corr(X1, X2) = rho. I(A;B|C) is estimated as the sample mean of
log p(b | a, c) - log p(b | c), using the model covariance for the conditional densities.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from functools import partial

import numpy as np
from scipy.stats import multivariate_normal

from secrecy_regions.config import settings
from secrecy_regions.core.errors import ConfigError
from secrecy_regions.schemas.channel import CorrelatedGaussianInput, GaussianChannel

logger = logging.getLogger(__name__)

VARIABLES: tuple[str, ...] = ("X1", "X2", "Y1", "Y2", "Y", "Z")
# latent columns: U0, W1, W2 and one unit noise per output (Y1, Y2, Y, Z)
_LATENT = 7

_LN2 = math.log(2.0)


def mixing_matrix(ch: GaussianChannel, inp: CorrelatedGaussianInput) -> np.ndarray:
    """(6, 7) matrix A with (X1, X2, Y1, Y2, Y, Z) = A @ latent."""
    a = np.zeros((len(VARIABLES), _LATENT))
    a[0, 0] = math.sqrt(inp.p1 * inp.rho)
    a[0, 1] = math.sqrt(inp.p1 * (1.0 - inp.rho))
    a[1, 0] = math.sqrt(inp.p2 * inp.rho)
    a[1, 2] = math.sqrt(inp.p2 * (1.0 - inp.rho))
    a[2] = math.sqrt(ch.h21) * a[1]
    a[2, 3] = 1.0
    a[3] = math.sqrt(ch.h12) * a[0]
    a[3, 4] = 1.0
    a[4] = math.sqrt(ch.h1) * a[0] + math.sqrt(ch.h2) * a[1]
    a[4, 5] = 1.0
    a[5] = math.sqrt(ch.g1) * a[0] + math.sqrt(ch.g2) * a[1]
    a[5, 6] = 1.0
    return a


def sample_channel(
    ch: GaussianChannel, inp: CorrelatedGaussianInput, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """(samples (n, 6), model covariance (6, 6))."""
    if n < 1:
        raise ConfigError(f"need at least one sample, got {n}", field="samples")
    a = mixing_matrix(ch, inp)
    latent = rng.standard_normal((n, _LATENT))
    return latent @ a.T, a @ a.T


def _index(names: Sequence[str]) -> list[int]:
    try:
        return [VARIABLES.index(n) for n in names]
    except ValueError:
        raise ConfigError(f"unknown variable in {list(names)}; expected {VARIABLES}", field="axes") from None


def _conditional_logpdf(samples: np.ndarray, cov: np.ndarray, b: list[int], given: list[int]) -> np.ndarray:
    s_bb = cov[np.ix_(b, b)]
    if not given:
        return multivariate_normal(mean=np.zeros(len(b)), cov=s_bb, allow_singular=True).logpdf(samples[:, b])
    s_bg = cov[np.ix_(b, given)]
    gain = s_bg @ np.linalg.pinv(cov[np.ix_(given, given)])
    residual = samples[:, b] - samples[:, given] @ gain.T
    s_cond = s_bb - gain @ s_bg.T
    return multivariate_normal(mean=np.zeros(len(b)), cov=s_cond, allow_singular=True).logpdf(residual)


def gaussian_mi_estimate(
    samples: np.ndarray,
    cov: np.ndarray,
    axes_a: Sequence[str],
    axes_b: Sequence[str],
    axes_c: Sequence[str] = (),
) -> float:
    """Sample estimate of I(A;B|C) in bits; B should carry noise (an output) so its density exists."""
    a, b, c = _index(axes_a), _index(axes_b), _index(axes_c)
    ratio = _conditional_logpdf(samples, cov, b, a + c) - _conditional_logpdf(samples, cov, b, c)
    return float(np.atleast_1d(ratio).mean() / _LN2)


def estimate_reductions(
    ch: GaussianChannel,
    inp: CorrelatedGaussianInput,
    n: int | None = None,
    seed: int | None = None,
) -> dict[str, float]:
    """Monte Carlo counterparts of the closed-form reductions, clamped at 0 the same way.

    The MAC wiretap terms use independent inputs (rho = 0); the relay and MISO terms use ``inp``.
    """
    n = n or settings.mc_samples
    rng = np.random.default_rng(settings.default_seed if seed is None else seed)

    indep, cov0 = sample_channel(ch, inp.model_copy(update={"rho": 0.0}), n, rng)
    mi0 = partial(gaussian_mi_estimate, indep, cov0)
    r1 = mi0(["X1"], ["Y"], ["X2"]) - mi0(["X1"], ["Z"])
    r2 = mi0(["X2"], ["Y"], ["X1"]) - mi0(["X2"], ["Z"])
    rs = mi0(["X1", "X2"], ["Y"]) - mi0(["X1", "X2"], ["Z"])

    corr, cov = sample_channel(ch, inp, n, rng)
    mi = partial(gaussian_mi_estimate, corr, cov)
    main = mi(["X1", "X2"], ["Y"])
    eve = mi(["X1", "X2"], ["Z"])
    relay = min(mi(["X1"], ["Y2"], ["X2"]), main) - eve

    out = {
        "mac_wiretap_r1": max(r1, 0.0),
        "mac_wiretap_r2": max(r2, 0.0),
        "mac_wiretap_sum": max(rs, 0.0),
        "relay_eavesdropper": max(relay, 0.0),
        "miso_sum": max(main - eve, 0.0),
    }
    logger.info("Monte Carlo reduction estimates from %d samples: %s", n, out)
    return out
