"""
Tight-Instance Reproduction
Builds the two upper-bound instances, evaluates their equilibria exactly and
checks every claimed bound with a per-ell margin table
"""
import math
from typing import List, Optional

from config import get_settings
from core_model.order_stats import expected_order_stats_exact
from engine.exact import expected_utilities_exact
from observability import get_logger
from proph_cli.families import (
    prop4_instance,
    prop4_wait_profile,
    prop6_instance,
    prop6_surrogate,
)
from proph_cli.models import MarginRow, ReproduceReport
from solvers.best_response import verify_nash
from solvers.k_select import solve_k_select
from solvers.models import NashReport
from solvers.spe import check_correspondence, spe_profile
from strategies.thresholds import random_tie_threshold, ranked_tie_threshold

logger = get_logger("reproduce")


def _margin_row(ell: int, threshold: float, utility: float, eps: float, tight: bool, tol: float) -> MarginRow:
    margin = threshold + eps - utility
    return MarginRow(
        ell=ell,
        threshold=threshold,
        utility=utility,
        margin=margin,
        in_tight_range=tight,
        ok=margin >= -tol,
    )


def _nash_if_small(inst, profile) -> Optional[NashReport]:
    if inst.k > get_settings().best_response_max_agents:
        logger.warning("skipping equilibrium check", {"num_agents": inst.k})
        return None
    return verify_nash(inst, profile)


def reproduce_prop4(k: int, eps: float, n: int, tol: Optional[float] = None) -> ReproduceReport:
    """
    Random tie-breaking upper bound: every agent waiting for the final gamble
    is an equilibrium worth 1 + eps/k each, which is at most T^ell + eps.

    The bound is judged on ell in 1..n-1; the ell = n margin is informational.
    The half-welfare remark is judged when n >= k + 1.
    """
    tol = get_settings().tolerance if tol is None else tol
    inst = prop4_instance(k, eps, n)
    profile = prop4_wait_profile(k, eps, n)
    report = expected_utilities_exact(inst, profile)
    order_stats = expected_order_stats_exact(inst)
    expected = 1.0 + eps / k
    failures: List[str] = []

    for agent, utility in enumerate(report.per_agent_utility, start=1):
        if abs(utility - expected) > tol:
            failures.append(f"agent {agent} utility {utility!r} != 1 + eps/k = {expected!r}")

    top = max(report.per_agent_utility)
    margins = []
    for ell in range(1, n + 1):
        row = _margin_row(ell, random_tie_threshold(order_stats, k, ell), top, eps, ell <= n - 1, tol)
        if row.in_tight_range and not row.ok:
            failures.append(f"u > T^{ell} + eps by {-row.margin!r}")
        margins.append(row)

    nash = _nash_if_small(inst, profile)
    if nash is not None and not nash.is_equilibrium:
        failures.append("waiting profile is not a Nash equilibrium")

    optimal = math.fsum(order_stats.expectations[:k])
    ratio = report.welfare / optimal
    half_checked = n >= k + 1
    if half_checked and ratio > 0.5 + eps + tol:
        failures.append(f"welfare ratio {ratio!r} exceeds 1/2 + eps")

    result = ReproduceReport(
        construction="prop4",
        parameters={"k": k, "eps": eps, "n": n},
        utilities=report.per_agent_utility,
        expected_utility=expected,
        margins=margins,
        nash=nash,
        welfare_ratio=ratio,
        half_welfare_checked=half_checked,
        failures=failures,
    )
    logger.info(f"prop4 k={k} eps={eps} n={n}: {result.status}", {"failures": failures})
    return result


def reproduce_prop6(
    i: int,
    k: int,
    eps: float,
    n: int,
    tol: Optional[float] = None,
    factor: Optional[float] = None,
) -> ReproduceReport:
    """
    Ranked tie-breaking upper bound: in the SPE the i-ranked agent gets
    1 + eps, which is at most T-hat_i^ell + eps.

    The bound is judged on ell in 0..n-i-1; the ell = n-i margin is
    informational. The surrogate for the huge rewards is re-solved at twice
    its scale and the change in the utilities of agents i..k is reported.
    """
    tol = get_settings().tolerance if tol is None else tol
    factor = get_settings().infinity_surrogate_factor if factor is None else factor
    inst = prop6_instance(i, k, eps, n, factor)
    table = solve_k_select(inst)
    profile = spe_profile(inst, table)
    report = expected_utilities_exact(inst, profile)
    order_stats = expected_order_stats_exact(inst)
    expected = 1.0 + eps
    utility = report.per_agent_utility[i - 1]
    failures: List[str] = []

    if abs(utility - expected) > tol:
        failures.append(f"agent {i} utility {utility!r} != 1 + eps = {expected!r}")

    margins = []
    for ell in range(0, n - i + 1):
        row = _margin_row(ell, ranked_tie_threshold(order_stats, i, ell), utility, eps, ell <= n - i - 1, tol)
        if row.in_tight_range and not row.ok:
            failures.append(f"u_{i} > T-hat_{i}^{ell} + eps by {-row.margin!r}")
        margins.append(row)

    correspondence = check_correspondence(inst, table, tol=tol)
    if not correspondence.passed:
        failures.append("SPE play differs from the k-select policy")

    nash = _nash_if_small(inst, profile)
    if nash is not None and not nash.is_equilibrium:
        failures.append("SPE profile is not a Nash equilibrium")

    doubled = prop6_instance(i, k, eps, n, 2 * factor)
    doubled_report = expected_utilities_exact(doubled, spe_profile(doubled))
    delta = max(
        abs(a - b)
        for a, b in zip(report.per_agent_utility[i - 1:], doubled_report.per_agent_utility[i - 1:])
    )
    if delta > tol:
        failures.append(f"doubling the surrogate moved utilities by {delta!r}")

    result = ReproduceReport(
        construction="prop6",
        parameters={"i": i, "k": k, "eps": eps, "n": n},
        utilities=report.per_agent_utility,
        expected_utility=expected,
        margins=margins,
        nash=nash,
        correspondence=correspondence,
        surrogate_value=prop6_surrogate(i, eps, n, factor),
        surrogate_doubling_delta=delta,
        failures=failures,
    )
    logger.info(f"prop6 i={i} k={k} eps={eps} n={n}: {result.status}", {"failures": failures})
    return result
