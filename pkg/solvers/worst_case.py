"""
Worst-Case Certification
Exact minimum of one agent's utility when a single coordinated adversary
controls every other agent
"""
import time
from typing import Dict, List, Optional, Tuple

from config import get_settings
from core_model.errors import ConfigInvalidError, RankOutOfRangeError
from core_model.models import Instance
from observability import get_logger
from solvers.models import AdversaryDecision, WorstCaseCertificate

logger = get_logger("solvers")


def _certificate(
    rule: str,
    k: int,
    rank: Optional[int],
    my_threshold: float,
    claim: Optional[float],
    worst: float,
    decisions: List[AdversaryDecision],
    tol: Optional[float],
    elapsed_ms: float,
) -> WorstCaseCertificate:
    tol = get_settings().tolerance if tol is None else tol
    claimed = my_threshold if claim is None else claim
    passed = worst >= claimed - tol
    logger.log_certificate(rule, my_threshold, worst, passed, num_agents=k, agent_rank=rank,
                           claim=claimed, elapsed_ms=round(elapsed_ms, 3))
    return WorstCaseCertificate(
        rule=rule,
        num_agents=k,
        agent_rank=rank,
        strategy_threshold=my_threshold,
        guarantee_claimed=claimed,
        worst_case_utility=worst,
        passed=passed,
        adversary_policy=decisions,
    )


def worst_case_utility_random(
    inst: Instance,
    k: int,
    my_threshold: float,
    claim: Optional[float] = None,
    tol: Optional[float] = None,
) -> WorstCaseCertificate:
    """
    Certify a single-threshold strategy under random tie-breaking.

    State (t, a): I am still active and a opponents are active. If I select
    alongside c opponents I win with probability 1/(c+1); otherwise exactly one
    selecting opponent leaves. The adversary picks c in 0..a to minimize my
    continuation. ``claim`` defaults to ``my_threshold``.

    Raises:
        NotDiscreteError: some distribution is continuous
    """
    start = time.perf_counter()
    inst.require_discrete()
    if k < 1:
        raise ConfigInvalidError(f"k must be at least 1, got {k}")

    n = inst.n
    worst: Dict[Tuple[int, int], float] = {(n + 1, a): 0.0 for a in range(k)}
    decisions: List[AdversaryDecision] = []
    for t in range(n, 0, -1):
        support = inst.distributions[t - 1].support_points()
        for a in range(k):
            expected = 0.0
            for value, prob in support:
                me_selects = value >= my_threshold
                options = []
                for c in range(a + 1):
                    if me_selects:
                        outcome = value if c == 0 else (value + c * worst[(t + 1, a - 1)]) / (c + 1)
                    else:
                        outcome = worst[(t + 1, a)] if c == 0 else worst[(t + 1, a - 1)]
                    options.append(outcome)
                c_best = min(range(a + 1), key=options.__getitem__)
                decisions.append(AdversaryDecision(
                    t=t, opponents_active=a, value=value,
                    me_selects=me_selects, opponents_selecting=c_best,
                ))
                expected += prob * options[c_best]
            worst[(t, a)] = expected

    return _certificate("random", k, None, my_threshold, claim, worst[(1, k - 1)],
                        decisions, tol, (time.perf_counter() - start) * 1000)


def worst_case_utility_ranked(
    inst: Instance,
    k: int,
    my_rank: int,
    my_threshold: float,
    claim: Optional[float] = None,
    tol: Optional[float] = None,
) -> WorstCaseCertificate:
    """
    Certify a single-threshold strategy for the agent ranked ``my_rank``
    under ranked tie-breaking.

    State (t, h): I am still active and h higher-ranked opponents are active.
    Lower-ranked agents never take a reward I select, so only the h agents
    matter; the adversary decides whether one of them selects v_t.

    Raises:
        NotDiscreteError: some distribution is continuous
        RankOutOfRangeError: my_rank outside 1..k
    """
    start = time.perf_counter()
    inst.require_discrete()
    if not 1 <= my_rank <= k:
        raise RankOutOfRangeError(f"rank {my_rank} outside 1..{k}")

    n = inst.n
    worst: Dict[Tuple[int, int], float] = {(n + 1, h): 0.0 for h in range(my_rank)}
    decisions: List[AdversaryDecision] = []
    for t in range(n, 0, -1):
        support = inst.distributions[t - 1].support_points()
        for h in range(my_rank):
            expected = 0.0
            for value, prob in support:
                me_selects = value >= my_threshold
                options = [value if me_selects else worst[(t + 1, h)]]
                if h:
                    options.append(worst[(t + 1, h - 1)])
                c_best = min(range(len(options)), key=options.__getitem__)
                decisions.append(AdversaryDecision(
                    t=t, opponents_active=h, value=value,
                    me_selects=me_selects, opponents_selecting=c_best,
                ))
                expected += prob * options[c_best]
            worst[(t, h)] = expected

    return _certificate("ranked", k, my_rank, my_threshold, claim, worst[(1, my_rank - 1)],
                        decisions, tol, (time.perf_counter() - start) * 1000)
