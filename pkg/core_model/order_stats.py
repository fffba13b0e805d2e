"""
Order Statistics
E[y_j], the expected j-th largest reward, exactly or by Monte Carlo
"""
import math
import time
from typing import Optional

import numpy as np

from config import get_settings
from core_model.enumeration import enumerate_realizations, sample_values
from core_model.errors import ConfigInvalidError
from core_model.models import EstimationMethod, Instance, OrderStatReport
from core_model.rng import SeededRNG
from observability import get_logger

logger = get_logger("order_stats")


def expected_order_stats_exact(inst: Instance, cap: Optional[int] = None) -> OrderStatReport:
    """Exact E[y_1..y_n] by enumerating every joint realization."""
    start = time.perf_counter()
    totals = np.zeros(inst.n)
    for realization in enumerate_realizations(inst, cap):
        ranked = sorted(realization.values, reverse=True)
        totals += realization.probability * np.asarray(ranked)
    # the j-th partial sums never cross: clamp float noise on ties
    expectations = [max(float(x), 0.0) for x in np.minimum.accumulate(totals)]
    logger.log_solve(
        "order_stats_exact", inst.n, inst.k, (time.perf_counter() - start) * 1000
    )
    return OrderStatReport(
        expectations=expectations,
        method=EstimationMethod.EXACT,
        num_samples=0,
        std_errors=[0.0] * inst.n,
    )


def expected_order_stats_mc(inst: Instance, num_samples: int, seed: int) -> OrderStatReport:
    """Sample-mean estimate of E[y_j] with standard errors; deterministic per seed."""
    if num_samples < 2:
        raise ConfigInvalidError(f"num_samples must be at least 2, got {num_samples}")
    start = time.perf_counter()
    draws = sample_values(inst, SeededRNG(seed), num_samples)
    ranked = -np.sort(-draws, axis=1)
    means = ranked.mean(axis=0)
    std_errors = ranked.std(axis=0, ddof=1) / math.sqrt(num_samples)
    logger.log_solve(
        "order_stats_mc", inst.n, inst.k, (time.perf_counter() - start) * 1000,
        num_samples=num_samples, seed=seed,
    )
    return OrderStatReport(
        expectations=[float(x) for x in means],
        method=EstimationMethod.MONTE_CARLO,
        num_samples=num_samples,
        std_errors=[float(x) for x in std_errors],
    )


def expected_order_stats(
    inst: Instance,
    num_samples: Optional[int] = None,
    seed: Optional[int] = None,
    cap: Optional[int] = None,
) -> OrderStatReport:
    """Exact report for fully discrete instances, Monte Carlo otherwise."""
    if inst.is_fully_discrete and num_samples is None:
        return expected_order_stats_exact(inst, cap)
    settings = get_settings()
    return expected_order_stats_mc(
        inst,
        num_samples if num_samples is not None else settings.default_num_samples,
        seed if seed is not None else settings.default_seed,
    )
