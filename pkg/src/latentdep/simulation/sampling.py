"""
Draw paired statistics from the two-group mixture given fixed indicators.
"""
import logging
from typing import Union

import numpy as np

from ..dep_types.core import PairedStatistics
from ..dep_types.simulation import Distribution, FeatureAlternative, LatentAssignment, MixtureSpec, SequenceModel
from ..errors import InvalidConfig
from ..seeding import derive_rng
from .correlated import ar1_normals

logger = logging.getLogger(__name__)


def _shape(family: str, mu: Union[float, np.ndarray], sigma: Union[float, np.ndarray], z: np.ndarray) -> np.ndarray:
    values = mu + sigma * z
    return np.abs(values) if family == "folded_normal" else values


def _draw_sequence(
    model: SequenceModel,
    mask: np.ndarray,
    rng: np.random.Generator,
    rho: float,
) -> np.ndarray:
    p = mask.size
    null = model.null
    values = _shape(null.family, null.mu, null.sigma, ar1_normals(rng, p, rho))
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return values
    z = rng.standard_normal(idx.size)
    alt = model.alternative
    if isinstance(alt, FeatureAlternative):
        if alt.mu.size != p:
            raise InvalidConfig(f"per-feature alternative has {alt.mu.size} entries, expected p={p}")
        values[idx] = _shape(alt.family, alt.mu[idx], alt.sigma[idx], z)
    else:
        values[idx] = _shape(alt.family, alt.mu, alt.sigma, z)
    return values


def sample_pairs(assign: LatentAssignment, spec: MixtureSpec, seed: int, rho: float = 0.0) -> PairedStatistics:
    """
    T_kj from F0_k where I_kj = 0 and from F1_k otherwise, independently
    across sequences given the indicators. rho > 0 draws the null part from
    a serially correlated latent normal sequence.
    """
    t1 = _draw_sequence(spec.first, assign.i1, derive_rng(seed, 1), rho)
    t2 = _draw_sequence(spec.second, assign.i2, derive_rng(seed, 2), rho)
    return PairedStatistics(t1=t1, t2=t2)


def heterogeneous_alternative(p: int, seed: int) -> FeatureAlternative:
    """mu_j ~ N(2.5, 1) and sigma_j^2 ~ Gamma(shape 2, scale 1), folded-normal family."""
    rng = derive_rng(seed)
    mu = rng.normal(2.5, 1.0, size=p)
    sigma = np.sqrt(rng.gamma(2.0, 1.0, size=p))
    return FeatureAlternative(family="folded_normal", mu=mu, sigma=sigma)


def with_alternative(model: SequenceModel, alternative: Union[Distribution, FeatureAlternative]) -> SequenceModel:
    return model.model_copy(update={"alternative": alternative})
