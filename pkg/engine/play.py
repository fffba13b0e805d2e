"""
Game Play
One pass over the arrivals under a strategy profile
"""
from typing import List, Optional, Sequence

from core_model.errors import ConfigInvalidError
from core_model.models import Instance, Realization, TieRule
from core_model.rng import SeededRNG
from engine.models import Assignment, GameOutcome
from strategies.models import StrategyProfile


def full_mask(num_agents: int) -> int:
    return (1 << num_agents) - 1


def active_agents(active_mask: int) -> List[int]:
    return [agent for agent in range(active_mask.bit_length()) if active_mask >> agent & 1]


def selectors_at(profile: StrategyProfile, t: int, value: float, active_mask: int) -> List[int]:
    """Active agents (ascending index) whose strategy selects v_t; inactive agents never select."""
    return [
        agent for agent in active_agents(active_mask)
        if profile[agent].selects(t, value, agent, active_mask)
    ]


def play_values(
    inst: Instance,
    profile: StrategyProfile,
    values: Sequence[float],
    rng: Optional[SeededRNG] = None,
) -> List[Optional[Assignment]]:
    assignment: List[Optional[Assignment]] = [None] * inst.k
    active_mask = full_mask(inst.k)
    for t, value in enumerate(values, start=1):
        if not active_mask:
            break
        selectors = selectors_at(profile, t, value, active_mask)
        if not selectors:
            continue
        if inst.tie_rule == TieRule.RANKED or len(selectors) == 1:
            winner = selectors[0]
        else:
            if rng is None:
                raise ConfigInvalidError("random tie-breaking needs an RNG stream")
            winner = selectors[rng.integers(len(selectors))]
        assignment[winner] = Assignment(t=t, value=value)
        active_mask &= ~(1 << winner)
    return assignment


def play_once(
    inst: Instance,
    profile: StrategyProfile,
    realization: Realization,
    rng: Optional[SeededRNG] = None,
) -> GameOutcome:
    """
    Play the arrivals in order.

    Each reward goes to one selector: uniformly at random (random rule, drawn
    from ``rng``) or the lowest-index selector (ranked rule). Unselected
    rewards are lost.
    """
    profile.check_for(inst)
    if len(realization.values) != inst.n:
        raise ConfigInvalidError(
            f"realization has {len(realization.values)} values, instance has {inst.n} rewards"
        )
    return GameOutcome.from_assignment(play_values(inst, profile, realization.values, rng))
