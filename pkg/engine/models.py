"""
Engine Models
Single-play outcomes and expected-utility reports
"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core_model.models import EstimationMethod

# JSON reports carry non-finite floats as the strings "inf", "-inf" and "nan"
REPORT_SCHEMA_VERSION = 1


class Assignment(BaseModel):
    """Reward v_t assigned to an agent."""
    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1)
    value: float


class GameOutcome(BaseModel):
    """Result of one play: who got which reward."""
    model_config = ConfigDict(frozen=True)

    assignment: List[Optional[Assignment]]
    per_agent_utility: List[float]
    welfare: float

    @model_validator(mode="after")
    def _check_conservation(self) -> "GameOutcome":
        times = [a.t for a in self.assignment if a is not None]
        if len(times) != len(set(times)):
            raise ValueError("a reward was assigned to more than one agent")
        return self

    @classmethod
    def from_assignment(cls, assignment: List[Optional[Assignment]]) -> "GameOutcome":
        utilities = [a.value if a is not None else 0.0 for a in assignment]
        return cls(assignment=assignment, per_agent_utility=utilities, welfare=sum(utilities))

    def accepted_values(self) -> List[float]:
        """Sorted multiset of assigned rewards."""
        return sorted(a.value for a in self.assignment if a is not None)


class GameReport(BaseModel):
    """Expected utility per agent under a strategy profile."""
    schema_version: int = REPORT_SCHEMA_VERSION
    per_agent_utility: List[float]
    welfare: float
    method: EstimationMethod
    num_samples: int = 0
    std_errors: List[float]
    welfare_std_error: float = 0.0

    @model_validator(mode="after")
    def _check_report(self) -> "GameReport":
        if len(self.std_errors) != len(self.per_agent_utility):
            raise ValueError("std_errors and per_agent_utility differ in length")
        if self.method == EstimationMethod.EXACT and (any(self.std_errors) or self.welfare_std_error):
            raise ValueError("exact reports carry zero std_errors")
        return self

    @property
    def num_agents(self) -> int:
        return len(self.per_agent_utility)
