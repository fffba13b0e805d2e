"""
Single-Threshold Families
T^ell for random tie-breaking and T-hat_i^ell for ranked tie-breaking,
computed from an OrderStatReport so exact and sampled expectations plug in alike
"""
import math
from typing import List, Optional, Tuple, Union

from core_model.errors import ConfigInvalidError, EllOutOfRangeError, IndexOutOfRangeError
from core_model.models import Instance, OrderStatReport, TieRule
from strategies.models import (
    RandomSelector,
    RankedSelector,
    SingleThresholdStrategy,
    StrategyProfile,
    ThresholdRow,
)


def random_tie_threshold(order_stats: OrderStatReport, k: int, ell: int) -> float:
    """T^ell = (1 / (k + ell)) * sum_{j=1..ell} E[y_j]."""
    if k < 1:
        raise ConfigInvalidError(f"number of agents must be at least 1, got {k}")
    if not 1 <= ell <= order_stats.n:
        raise EllOutOfRangeError(f"ell must lie in 1..{order_stats.n}, got {ell}")
    return math.fsum(order_stats.expectations[:ell]) / (k + ell)


def ranked_tie_threshold(order_stats: OrderStatReport, i: int, ell: int) -> float:
    """T-hat_i^ell = (1 / (ell + 2)) * sum_{j=i..i+ell} E[y_j]."""
    n = order_stats.n
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"rank i must lie in 1..{n}, got {i}")
    if not 0 <= ell <= n - i:
        raise IndexOutOfRangeError(f"ell must lie in 0..{n - i} for i={i}, got {ell}")
    return math.fsum(order_stats.expectations[i - 1:i + ell]) / (ell + 2)


def best_ell(
    order_stats: OrderStatReport,
    selector: Union[RandomSelector, RankedSelector],
) -> Tuple[int, float]:
    """The ell with the largest threshold; ties go to the smaller ell."""
    if isinstance(selector, RandomSelector):
        candidates = [
            (ell, random_tie_threshold(order_stats, selector.k, ell))
            for ell in range(1, order_stats.n + 1)
        ]
    else:
        candidates = [
            (ell, ranked_tie_threshold(order_stats, selector.i, ell))
            for ell in range(0, order_stats.n - selector.i + 1)
        ]
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate[1] > best[1]:
            best = candidate
    return best


def threshold_table_random(order_stats: OrderStatReport, k: int) -> List[ThresholdRow]:
    return [
        ThresholdRow(rule="random", k=k, ell=ell, threshold=random_tie_threshold(order_stats, k, ell))
        for ell in range(1, order_stats.n + 1)
    ]


def threshold_table_ranked(order_stats: OrderStatReport, max_rank: Optional[int] = None) -> List[ThresholdRow]:
    max_rank = min(max_rank or order_stats.n, order_stats.n)
    return [
        ThresholdRow(rule="ranked", i=i, ell=ell, threshold=ranked_tie_threshold(order_stats, i, ell))
        for i in range(1, max_rank + 1)
        for ell in range(0, order_stats.n - i + 1)
    ]


def half_welfare_threshold(order_stats: OrderStatReport, k: int) -> Tuple[float, float]:
    """T^k and its claimed guarantee E[sum_{j<=k} y_j] / (2k)."""
    threshold = random_tie_threshold(order_stats, k, k)
    return threshold, math.fsum(order_stats.expectations[:k]) / (2 * k)


def top_share_threshold(order_stats: OrderStatReport, k: int) -> Tuple[float, float]:
    """T^1 and its claimed guarantee E[y_1] / (k + 1)."""
    return random_tie_threshold(order_stats, k, 1), order_stats.expectations[0] / (k + 1)


def ranked_half_threshold(order_stats: OrderStatReport, i: int) -> Tuple[float, float]:
    """T-hat_i^0 and its claimed guarantee E[y_i] / 2."""
    return ranked_tie_threshold(order_stats, i, 0), order_stats.expectations[i - 1] / 2


def threshold_family_strategy(
    inst: Instance,
    order_stats: OrderStatReport,
    agent: int,
    ell: Optional[int] = None,
    i: Optional[int] = None,
    k: Optional[int] = None,
) -> SingleThresholdStrategy:
    """
    Resolve the single-threshold family member for one agent.

    Random rule: T^ell, k defaulting to the instance's agent count. Ranked
    rule: T-hat_i^ell, i defaulting to the agent's own rank. ``ell=None``
    picks the best ell.

    An agent whose own rank exceeds n plays T = 0: with y_j = 0 for j > n,
    every T-hat_i^ell of such a rank is 0. An explicit ``i`` is never
    clamped.
    """
    if inst.tie_rule == TieRule.RANDOM:
        k = inst.k if k is None else k
        if ell is None:
            ell, _ = best_ell(order_stats, RandomSelector(k=k, agent=agent))
        return SingleThresholdStrategy(T=random_tie_threshold(order_stats, k, ell))
    if i is None and agent + 1 > order_stats.n:
        return SingleThresholdStrategy(T=0.0)
    rank = i if i is not None else agent + 1
    if ell is None:
        ell, _ = best_ell(order_stats, RankedSelector(i=rank))
    return SingleThresholdStrategy(T=ranked_tie_threshold(order_stats, rank, ell))


def threshold_family_profile(
    inst: Instance,
    order_stats: OrderStatReport,
    ell: Optional[int] = None,
) -> StrategyProfile:
    return StrategyProfile(per_agent=[
        threshold_family_strategy(inst, order_stats, agent, ell)
        for agent in range(inst.k)
    ])
