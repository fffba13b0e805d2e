"""
Best Response and Nash Verification
Backward induction over (t, active set) against fixed opponent strategies
"""
import math
import time
from typing import Dict, List, Optional, Tuple

from config import get_settings
from core_model.errors import ConfigInvalidError, TooManyAgentsError
from core_model.models import Instance, TieRule
from engine.exact import expected_utilities_exact
from engine.play import active_agents, full_mask
from observability import get_logger
from solvers.models import NashCheck, NashReport
from strategies.models import PolicyRow, ResponsePolicyStrategy, StrategyProfile

logger = get_logger("solvers")


def _opponents_selecting(profile: StrategyProfile, agent: int, t: int, value: float, active_mask: int) -> List[int]:
    return [
        other for other in active_agents(active_mask)
        if other != agent and profile[other].selects(t, value, other, active_mask)
    ]


def best_response_value(
    inst: Instance,
    profile: StrategyProfile,
    agent: int,
    max_agents: Optional[int] = None,
) -> Tuple[float, ResponsePolicyStrategy]:
    """
    Optimal expected utility of ``agent`` (0-based) against the other
    strategies of ``profile``, with a policy that attains it.

    Under random tie-breaking a contested reward goes to each selector with
    equal probability; under ranked tie-breaking to the lowest-index selector.
    Indifference resolves to select.

    Raises:
        NotDiscreteError: some distribution is continuous
        TooManyAgentsError: k exceeds the configured cap
    """
    start = time.perf_counter()
    max_agents = get_settings().best_response_max_agents if max_agents is None else max_agents
    inst.require_discrete()
    profile.check_for(inst)
    k = inst.k
    if k > max_agents:
        raise TooManyAgentsError(f"best response supports at most {max_agents} agents, got {k}")
    if not 0 <= agent < k:
        raise ConfigInvalidError(f"agent index {agent} outside 0..{k - 1}")

    n = inst.n
    me = 1 << agent
    masks = [mask for mask in range(1, full_mask(k) + 1) if mask & me]
    future: Dict[int, float] = {mask: 0.0 for mask in masks}
    rows: List[PolicyRow] = []
    for t in range(n, 0, -1):
        support = inst.distributions[t - 1].support_points()
        current: Dict[int, float] = {}
        for mask in masks:
            expected = 0.0
            accepted: List[float] = []
            for value, prob in support:
                others = _opponents_selecting(profile, agent, t, value, mask)
                if inst.tie_rule == TieRule.RANKED:
                    higher = [other for other in others if other < agent]
                    select = future[mask & ~(1 << higher[0])] if higher else value
                    passing = future[mask & ~(1 << others[0])] if others else future[mask]
                else:
                    losses = [future[mask & ~(1 << other)] for other in others]
                    select = (value + math.fsum(losses)) / (len(others) + 1)
                    passing = math.fsum(losses) / len(others) if others else future[mask]
                if select >= passing:
                    accepted.append(value)
                    expected += prob * select
                else:
                    expected += prob * passing
            current[mask] = expected
            if accepted:
                rows.append(PolicyRow(t=t, active_mask=mask, accepted=accepted))
        future = current

    value = future[full_mask(k)]
    rows.sort(key=lambda row: (row.t, row.active_mask))
    logger.log_solve("best_response", n, k, (time.perf_counter() - start) * 1000,
                     agent=agent + 1, value=value)
    return value, ResponsePolicyStrategy(rows=rows)


def verify_nash(
    inst: Instance,
    profile: StrategyProfile,
    tol: Optional[float] = None,
    max_agents: Optional[int] = None,
) -> NashReport:
    """Compare each agent's exact utility with its best-response value."""
    tol = get_settings().tolerance if tol is None else tol
    report = expected_utilities_exact(inst, profile)
    checks = []
    for agent, utility in enumerate(report.per_agent_utility):
        value, _ = best_response_value(inst, profile, agent, max_agents)
        checks.append(NashCheck(
            agent=agent + 1,
            utility=utility,
            best_response_value=value,
            is_best_response=value <= utility + tol,
        ))
    nash = NashReport(checks=checks)
    if not nash.is_equilibrium:
        logger.info("profile is not a Nash equilibrium", {
            "deviators": [c.agent for c in checks if not c.is_best_response],
        })
    return nash
