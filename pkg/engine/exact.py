"""
Exact Expected Utilities
Enumerates realizations and, within each, the tie-break branch tree
"""
import math
import time
from typing import List, Optional, Tuple

from core_model.enumeration import enumerate_realizations
from core_model.models import EstimationMethod, Instance, Realization, TieRule
from engine.models import Assignment, GameOutcome, GameReport
from engine.play import full_mask, selectors_at
from observability import get_logger
from strategies.models import StrategyProfile

logger = get_logger("engine")


def outcome_branches(
    inst: Instance,
    profile: StrategyProfile,
    realization: Realization,
) -> List[Tuple[GameOutcome, float]]:
    """
    Every play of one realization with its conditional probability.

    Under random tie-breaking a tie among c selectors splits into c branches
    of equal weight; under ranked tie-breaking there is a single branch.
    """
    values = realization.values
    leaves: List[Tuple[GameOutcome, float]] = []

    def expand(t: int, active_mask: int, assignment: Tuple[Optional[Assignment], ...], weight: float) -> None:
        while t <= inst.n and active_mask:
            value = values[t - 1]
            selectors = selectors_at(profile, t, value, active_mask)
            if selectors:
                if inst.tie_rule == TieRule.RANKED or len(selectors) == 1:
                    winners = selectors[:1]
                else:
                    winners = selectors
                share = weight / len(winners)
                for winner in winners[1:]:
                    expand(
                        t + 1,
                        active_mask & ~(1 << winner),
                        assignment[:winner] + (Assignment(t=t, value=value),) + assignment[winner + 1:],
                        share,
                    )
                winner = winners[0]
                assignment = assignment[:winner] + (Assignment(t=t, value=value),) + assignment[winner + 1:]
                active_mask &= ~(1 << winner)
                weight = share
            t += 1
        leaves.append((GameOutcome.from_assignment(list(assignment)), weight))

    expand(1, full_mask(inst.k), (None,) * inst.k, 1.0)
    return leaves


def expected_utilities_exact(
    inst: Instance,
    profile: StrategyProfile,
    cap: Optional[int] = None,
) -> GameReport:
    """
    Exact u_i(S) for every agent.

    Raises:
        NotDiscreteError, ExplosionCapError: as enumerate_realizations
    """
    start = time.perf_counter()
    inst.require_discrete()
    profile.check_for(inst)
    terms: List[List[float]] = [[] for _ in range(inst.k)]
    for realization in enumerate_realizations(inst, cap):
        for outcome, weight in outcome_branches(inst, profile, realization):
            prob = realization.probability * weight
            for agent, utility in enumerate(outcome.per_agent_utility):
                if utility:
                    terms[agent].append(prob * utility)
    utilities = [math.fsum(agent_terms) for agent_terms in terms]
    report = GameReport(
        per_agent_utility=utilities,
        welfare=math.fsum(utilities),
        method=EstimationMethod.EXACT,
        num_samples=0,
        std_errors=[0.0] * inst.k,
    )
    logger.log_evaluation(
        "exact", inst.k, report.welfare, (time.perf_counter() - start) * 1000,
        tie_rule=inst.tie_rule.value,
    )
    return report
