"""
Realization Enumeration and Sampling
Exact joint-outcome streams for discrete instances, inverse-CDF draws for any instance
"""
import itertools
import math
from typing import Iterator, Optional

import numpy as np

from config import get_settings
from core_model.errors import ExplosionCapError
from core_model.models import Instance, Realization
from core_model.rng import SeededRNG


def check_enumeration_cap(inst: Instance, cap: Optional[int] = None) -> int:
    """Return the joint realization count, raising if it exceeds the cap."""
    cap = cap if cap is not None else get_settings().enumeration_cap
    count = inst.support_size_product()
    if count > cap:
        raise ExplosionCapError(
            f"instance has {count} joint realizations, above the enumeration cap of {cap}"
        )
    return count


def enumerate_realizations(inst: Instance, cap: Optional[int] = None) -> Iterator[Realization]:
    """
    Yield every joint realization of a fully discrete instance exactly once.

    Raises:
        NotDiscreteError: some distribution is continuous
        ExplosionCapError: product of support sizes exceeds ``cap``
    """
    check_enumeration_cap(inst, cap)
    supports = [dist.support_points() for dist in inst.distributions]
    for combo in itertools.product(*supports):
        yield Realization(
            values=tuple(value for value, _ in combo),
            probability=math.prod(prob for _, prob in combo),
        )


def sample_values(inst: Instance, rng: SeededRNG, num_samples: int) -> np.ndarray:
    """Draw a (num_samples, n) matrix, one independent inverse-CDF draw per cell."""
    uniforms = rng.random((num_samples, inst.n))
    columns = [dist.quantile(uniforms[:, t]) for t, dist in enumerate(inst.distributions)]
    return np.column_stack(columns).astype(float)


def sample_realization(inst: Instance, rng: SeededRNG) -> Realization:
    """Draw one realization; probability is attached only for fully discrete instances."""
    uniforms = rng.random(inst.n)
    values = tuple(
        float(dist.quantile(np.array([u]))[0])
        for dist, u in zip(inst.distributions, uniforms)
    )
    probability = None
    if inst.is_fully_discrete:
        probability = math.prod(
            dict(dist.support_points())[value]
            for dist, value in zip(inst.distributions, values)
        )
    return Realization(values=values, probability=probability)
