"""
Subgame-Perfect Equilibrium under Ranked Tie-Breaking
The agent ranked r among the active agents accepts v_t iff v_t >= threshold(t, r)
of the k-select table
"""
import math
from typing import List, Optional, Sequence

from config import get_settings
from core_model.enumeration import enumerate_realizations
from core_model.errors import ConfigInvalidError, RuleMismatchError
from core_model.models import Instance, TieRule
from engine.exact import expected_utilities_exact
from engine.play import play_values
from observability import get_logger
from solvers.k_select import k_select_accepted, solve_k_select
from solvers.models import CorrespondenceReport, ThresholdTable
from strategies.models import RankTableStrategy, StrategyProfile

logger = get_logger("solvers")


def spe_profile(inst: Instance, table: Optional[ThresholdTable] = None) -> StrategyProfile:
    """
    Equilibrium profile built from the k-select thresholds.

    Raises:
        RuleMismatchError: instance does not use ranked tie-breaking
    """
    if inst.tie_rule != TieRule.RANKED:
        raise RuleMismatchError("the SPE construction requires ranked tie-breaking")
    table = table or solve_k_select(inst)
    if table.num_rewards != inst.n or table.num_slots < inst.k:
        raise ConfigInvalidError(
            f"threshold table covers {table.num_rewards} arrivals x {table.num_slots} slots, "
            f"instance needs {inst.n} x {inst.k}"
        )
    strategy = RankTableStrategy(thresholds=[row[:inst.k] for row in table.thresholds])
    return StrategyProfile.uniform(strategy, inst.k)


def spe_accepted(inst: Instance, profile: StrategyProfile, values: Sequence[float]) -> List[float]:
    """Sorted rewards assigned to some agent when the profile plays one realization."""
    assignment = play_values(inst, profile, values)
    return sorted(a.value for a in assignment if a is not None)


def check_correspondence(
    inst: Instance,
    table: Optional[ThresholdTable] = None,
    cap: Optional[int] = None,
    tol: Optional[float] = None,
) -> CorrespondenceReport:
    """
    Compare SPE play with the k-select policy on every realization, and the
    total exact SPE utility with the k-select optimal value.
    """
    tol = get_settings().tolerance if tol is None else tol
    table = table or solve_k_select(inst)
    profile = spe_profile(inst, table)
    checked = mismatches = 0
    for realization in enumerate_realizations(inst, cap):
        checked += 1
        if spe_accepted(inst, profile, realization.values) != k_select_accepted(table, realization.values, inst.k):
            mismatches += 1
    report = expected_utilities_exact(inst, profile, cap)
    optimal = table.value_at(1, inst.k)
    passed = mismatches == 0 and math.isclose(report.welfare, optimal, rel_tol=0.0, abs_tol=tol)
    if not passed:
        logger.warning("SPE and k-select disagree", {
            "mismatches": mismatches, "spe_welfare": report.welfare, "k_select_value": optimal,
        })
    return CorrespondenceReport(
        realizations_checked=checked,
        mismatches=mismatches,
        spe_welfare=report.welfare,
        k_select_value=optimal,
        passed=passed,
    )
