"""
Shared fixtures: small hand-solved instances and seeded random corpora
"""
from typing import List

import pytest

from config import reload_settings
from core_model import (
    DiscreteDistribution,
    Instance,
    PointDistribution,
    SeededRNG,
    TieRule,
    random_instance,
)


def points(*values: float) -> List[PointDistribution]:
    return [PointDistribution(value=v) for v in values]


def gamble(high: float, prob: float) -> DiscreteDistribution:
    return DiscreteDistribution(support=[(0.0, 1.0 - prob), (high, prob)])


def make_corpus(seed: int, count: int, tie_rule: TieRule, **kwargs) -> List[Instance]:
    """Seeded random fully discrete instances; instance j draws from stream (seed, j)."""
    rng = SeededRNG(seed)
    return [random_instance(rng.derive(j), tie_rule=tie_rule, **kwargs) for j in range(count)]


@pytest.fixture(autouse=True)
def _default_settings(monkeypatch):
    """Every test sees default settings regardless of the caller's environment."""
    for name in ("PROPHET_ENUMERATION_CAP", "PROPHET_BEST_RESPONSE_MAX_AGENTS", "PROPHET_TOLERANCE"):
        monkeypatch.delenv(name, raising=False)
    reload_settings()
    yield
    reload_settings()


@pytest.fixture
def point_321_random():
    """Point rewards 3, 2, 1 with two agents and random tie-breaking."""
    return Instance(distributions=points(3, 2, 1), num_agents=2, tie_rule=TieRule.RANDOM)


@pytest.fixture
def point_321_ranked():
    return Instance(distributions=points(3, 2, 1), num_agents=2, tie_rule=TieRule.RANKED)


@pytest.fixture
def prop4_small():
    """One point(1) then 5 w.p. 0.5 (k=2, eps=0.5)."""
    return Instance(distributions=points(1) + [gamble(5.0, 0.5)], num_agents=2, tie_rule=TieRule.RANDOM)


@pytest.fixture
def ranked_gamble():
    """point(10), point(1), then 3 w.p. 0.5; two ranked agents."""
    return Instance(distributions=points(10, 1) + [gamble(3.0, 0.5)], num_agents=2, tie_rule=TieRule.RANKED)


@pytest.fixture
def one_then_ten():
    return Instance(distributions=points(1, 10), num_agents=2, tie_rule=TieRule.RANKED)
