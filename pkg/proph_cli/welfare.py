"""
Welfare Sweep
Equilibrium welfare against E[sum of the top k rewards] as k grows, with a
least-squares fit of ratio = 1 - c/sqrt(k)
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import get_settings
from core_model.errors import ConfigInvalidError
from core_model.models import TieRule
from core_model.order_stats import expected_order_stats_exact
from engine.exact import expected_utilities_exact
from observability import get_logger
from proph_cli.families import build_family_instance, prop4_wait_profile
from proph_cli.models import FamilySpec, WelfareSweepReport, WelfareSweepRow
from solvers.k_select import solve_k_select
from strategies.models import SingleThresholdStrategy, StrategyProfile
from strategies.thresholds import random_tie_threshold

logger = get_logger("welfare")

SWEEP_MODES = ("ranked_spe", "random_threshold", "random_equilibrium")


def fit_sqrt_decay(ks: Sequence[int], ratios: Sequence[float]) -> Tuple[Optional[float], Optional[float]]:
    """Least-squares c in ratio = 1 - c/sqrt(k), and the fit's RMSE."""
    if not ks:
        return None, None
    x = 1.0 / np.sqrt(np.asarray(ks, dtype=float))
    y = 1.0 - np.asarray(ratios, dtype=float)
    (c,), *_ = np.linalg.lstsq(x[:, None], y, rcond=None)
    rmse = float(np.sqrt(np.mean((y - c * x) ** 2)))
    return float(c), rmse


def _row(family_spec: FamilySpec, k: int, mode: str) -> WelfareSweepRow:
    if mode == "ranked_spe":
        inst = build_family_instance(family_spec, k, TieRule.RANKED)
        welfare = solve_k_select(inst).optimal_value()
    else:
        inst = build_family_instance(family_spec, k, TieRule.RANDOM)
        if mode == "random_threshold":
            order_stats = expected_order_stats_exact(inst)
            strategy = SingleThresholdStrategy(T=random_tie_threshold(order_stats, k, k))
            profile = StrategyProfile.uniform(strategy, k)
        else:
            profile = prop4_wait_profile(k, family_spec.eps, family_spec.n)
        welfare = expected_utilities_exact(inst, profile).welfare
    optimal = math.fsum(expected_order_stats_exact(inst).expectations[:k])
    ratio = welfare / optimal if optimal > 0 else 1.0
    return WelfareSweepRow(k=k, mode=mode, spe_welfare=welfare, optimal_welfare=optimal, ratio=ratio)


def welfare_sweep(family_spec: FamilySpec, k_values: List[int], mode: str = "ranked_spe") -> WelfareSweepReport:
    """
    One row per k, sorted by k.

    Modes: ``ranked_spe`` (welfare V_1(k) of the SPE), ``random_threshold``
    (every agent plays T^k) and ``random_equilibrium`` (prop4 family only:
    every agent waits for the final gamble).
    """
    if mode not in SWEEP_MODES:
        raise ConfigInvalidError(f"unknown sweep mode '{mode}', expected one of {', '.join(SWEEP_MODES)}")
    if mode == "random_equilibrium" and family_spec.family != "prop4":
        raise ConfigInvalidError("random_equilibrium mode needs the prop4 family")
    if not k_values or min(k_values) < 1:
        raise ConfigInvalidError(f"k values must be positive integers, got {k_values}")

    rows = [_row(family_spec, k, mode) for k in sorted(set(k_values))]
    ks = [row.k for row in rows]
    ratios = [row.ratio for row in rows]
    c, rmse = fit_sqrt_decay(ks, ratios)
    tol = get_settings().tolerance
    report = WelfareSweepReport(
        family=family_spec,
        mode=mode,
        rows=rows,
        fit_c=c,
        fit_rmse=rmse,
        non_decreasing=all(b >= a - tol for a, b in zip(ratios, ratios[1:])),
        min_ratio=min(ratios),
    )
    logger.info(f"welfare sweep {family_spec.family}/{mode}", {
        "k_values": ks, "min_ratio": report.min_ratio, "fit_c": c, "fit_rmse": rmse,
    })
    return report
