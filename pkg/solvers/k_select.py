"""
k-Select Decision Maker
Backward induction for a single agent who may keep up to k rewards
"""
import time
from typing import List, Optional, Sequence

import numpy as np

from config import get_settings
from core_model.errors import ConfigInvalidError
from core_model.models import Instance
from observability import get_logger
from solvers.models import ThresholdTable

logger = get_logger("solvers")


def solve_k_select(inst: Instance, k: Optional[int] = None) -> ThresholdTable:
    """
    Optimal value function and thresholds for keeping up to k rewards.

    value(t, i) = E[max(v_t + value(t+1, i-1), value(t+1, i))], value(t, 0) = 0,
    value(n+1, .) = 0; threshold(t, i) = value(t+1, i) - value(t+1, i-1).

    Raises:
        NotDiscreteError: some distribution is continuous
    """
    start = time.perf_counter()
    inst.require_discrete()
    k = inst.k if k is None else k
    if k < 1:
        raise ConfigInvalidError(f"k must be at least 1, got {k}")

    n = inst.n
    values = np.zeros((n + 2, k + 1))  # row t for t = 1..n+1; row 0 unused
    thresholds = np.zeros((n + 1, k + 1))
    for t in range(n, 0, -1):
        support = inst.distributions[t - 1].support_points()
        v = np.array([value for value, _ in support])
        p = np.array([prob for _, prob in support])
        after = values[t + 1]
        take = v[:, None] + after[None, :-1]
        skip = after[None, 1:]
        values[t, 1:] = p @ np.maximum(take, skip)
        thresholds[t, 1:] = after[1:] - after[:-1]

    table = ThresholdTable(
        values=[[float(x) for x in values[t]] for t in range(1, n + 2)],
        thresholds=[[float(x) for x in thresholds[t, 1:]] for t in range(1, n + 1)],
    )
    check_concavity(table)
    logger.log_solve("k_select", n, k, (time.perf_counter() - start) * 1000,
                     optimal_value=table.optimal_value())
    return table


def check_concavity(table: ThresholdTable, tol: Optional[float] = None) -> None:
    """Marginal value of a slot must not increase with the number of slots."""
    tol = get_settings().tolerance if tol is None else tol
    for t, row in enumerate(table.values, start=1):
        increments = np.diff(row)
        if np.any(increments < -tol) or np.any(np.diff(increments) > tol):
            logger.error("k-select value function is not concave", {"t": t, "row": row})
            raise RuntimeError(f"k-select value function at t={t} is not non-decreasing and concave")


def k_select_accepted(table: ThresholdTable, values: Sequence[float], k: Optional[int] = None) -> List[float]:
    """Sorted rewards kept by the k-select threshold policy on one realization."""
    slots = table.num_slots if k is None else k
    accepted = []
    for t, value in enumerate(values, start=1):
        if slots and value >= table.threshold_at(t, slots):
            accepted.append(value)
            slots -= 1
    return sorted(accepted)
