"""
Strategy Models
Per-agent decision rules; every rule selects v_t iff v_t >= its current threshold
"""
from functools import cached_property
from typing import Annotated, Dict, FrozenSet, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from core_model.errors import ConfigInvalidError
from core_model.models import Instance


def rank_among_active(agent: int, active_mask: int) -> int:
    """1-based rank of ``agent`` among the agents set in ``active_mask``."""
    return bin(active_mask & ((1 << agent) - 1)).count("1") + 1


class _StrategyBase(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    def selects(self, t: int, value: float, agent: int, active_mask: int) -> bool:
        """Decision at 1-based time ``t`` for 0-based ``agent`` given the active set."""
        raise NotImplementedError

    def check_shape(self, inst: Instance) -> None:
        """Raise ConfigInvalidError if the rule does not cover the instance."""
        return None


class SingleThresholdStrategy(_StrategyBase):
    """Select the first reward with v_t >= T."""
    kind: Literal["single_threshold"] = "single_threshold"
    T: float

    def selects(self, t: int, value: float, agent: int, active_mask: int) -> bool:
        return value >= self.T


class PerTimeThresholdStrategy(_StrategyBase):
    """One threshold per arrival; +inf means always pass."""
    kind: Literal["per_time_threshold"] = "per_time_threshold"
    thresholds: List[float] = Field(min_length=1)

    def selects(self, t: int, value: float, agent: int, active_mask: int) -> bool:
        return value >= self.thresholds[t - 1]

    def check_shape(self, inst: Instance) -> None:
        if len(self.thresholds) != inst.n:
            raise ConfigInvalidError(
                f"per_time_threshold has {len(self.thresholds)} entries, instance has {inst.n} rewards"
            )


class RankTableStrategy(_StrategyBase):
    """Threshold keyed on (t, rank among active agents); thresholds[t-1][rank-1]."""
    kind: Literal["table"] = "table"
    thresholds: List[List[float]] = Field(min_length=1)

    def threshold(self, t: int, rank: int) -> float:
        return self.thresholds[t - 1][rank - 1]

    def selects(self, t: int, value: float, agent: int, active_mask: int) -> bool:
        return value >= self.threshold(t, rank_among_active(agent, active_mask))

    def check_shape(self, inst: Instance) -> None:
        if len(self.thresholds) != inst.n or any(len(row) < inst.k for row in self.thresholds):
            raise ConfigInvalidError(
                f"table strategy must cover {inst.n} arrivals x {inst.k} ranks"
            )


class PolicyRow(BaseModel):
    """Accepted reward values at one (t, active set) state."""
    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1)
    active_mask: int = Field(ge=1)
    accepted: List[float] = Field(default_factory=list)


class ResponsePolicyStrategy(_StrategyBase):
    """Explicit decision table keyed on (t, active set, value); unlisted states pass."""
    kind: Literal["response_policy"] = "response_policy"
    rows: List[PolicyRow] = Field(default_factory=list)

    @cached_property
    def decision_lookup(self) -> Dict[Tuple[int, int], FrozenSet[float]]:
        return {(row.t, row.active_mask): frozenset(row.accepted) for row in self.rows}

    def selects(self, t: int, value: float, agent: int, active_mask: int) -> bool:
        return value in self.decision_lookup.get((t, active_mask), frozenset())


Strategy = Annotated[
    Union[SingleThresholdStrategy, PerTimeThresholdStrategy, RankTableStrategy, ResponsePolicyStrategy],
    Field(discriminator="kind"),
]


class StrategyProfile(BaseModel):
    """One strategy per agent; index is the agent's global rank under ranked tie-breaking."""
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    per_agent: List[Strategy] = Field(min_length=1)

    def __len__(self) -> int:
        return len(self.per_agent)

    def __getitem__(self, agent: int):
        return self.per_agent[agent]

    def check_for(self, inst: Instance) -> None:
        """Raise ConfigInvalidError if the profile does not fit the instance."""
        if len(self.per_agent) != inst.k:
            raise ConfigInvalidError(
                f"profile has {len(self.per_agent)} strategies, instance has {inst.k} agents"
            )
        for strategy in self.per_agent:
            strategy.check_shape(inst)

    def replace(self, agent: int, strategy) -> "StrategyProfile":
        per_agent = list(self.per_agent)
        per_agent[agent] = strategy
        return StrategyProfile(per_agent=per_agent)

    @classmethod
    def uniform(cls, strategy, num_agents: int) -> "StrategyProfile":
        """Every agent plays the same rule."""
        return cls(per_agent=[strategy] * num_agents)


class RandomSelector(BaseModel):
    """Threshold family T^ell for an agent under random tie-breaking."""
    rule: Literal["random"] = "random"
    k: int = Field(ge=1)
    agent: int = Field(default=0, ge=0)


class RankedSelector(BaseModel):
    """Threshold family T-hat_i^ell for the i-ranked agent."""
    rule: Literal["ranked"] = "ranked"
    i: int = Field(ge=1)


Selector = Annotated[Union[RandomSelector, RankedSelector], Field(discriminator="rule")]


class ThresholdRow(BaseModel):
    """One entry of a threshold family table."""
    rule: Literal["random", "ranked"]
    ell: int
    threshold: float
    i: int | None = None
    k: int | None = None
