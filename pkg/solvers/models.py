"""
Solver Models
Dynamic-threshold tables, worst-case certificates and equilibrium checks
"""
import hashlib
import json
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

from engine.models import REPORT_SCHEMA_VERSION


class ThresholdTable(BaseModel):
    """
    Value function and dynamic thresholds of the k-select decision maker.

    values[t-1][i]: optimal expected future sum from arrival t with i slots
    open (t = 1..n+1, i = 0..k). thresholds[t-1][i-1]: accept v_t with i
    slots open iff v_t >= values[t][i] - values[t][i-1] (t = 1..n, i = 1..k).
    """
    model_config = ConfigDict(frozen=True)

    values: List[List[float]]
    thresholds: List[List[float]]

    @property
    def num_rewards(self) -> int:
        return len(self.thresholds)

    @property
    def num_slots(self) -> int:
        return len(self.values[0]) - 1

    def value_at(self, t: int, slots_left: int) -> float:
        return self.values[t - 1][slots_left]

    def threshold_at(self, t: int, slots_left: int) -> float:
        return self.thresholds[t - 1][slots_left - 1]

    def optimal_value(self) -> float:
        """Expected sum from the start with every slot open collected by the k-select policy."""
        return self.value_at(1, self.num_slots)


class AdversaryDecision(BaseModel):
    """Minimizing opponent move at one DP state and realized value."""
    t: int
    opponents_active: int
    value: float
    me_selects: bool
    opponents_selecting: int


class WorstCaseCertificate(BaseModel):
    """Exact minimum of an agent's utility over all opponent behavior."""
    schema_version: int = REPORT_SCHEMA_VERSION
    rule: Literal["random", "ranked"]
    num_agents: int
    agent_rank: Optional[int] = None
    strategy_threshold: float
    guarantee_claimed: float
    worst_case_utility: float
    passed: bool
    adversary_policy: List[AdversaryDecision] = Field(default_factory=list)

    @computed_field
    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @computed_field
    @property
    def adversary_policy_digest(self) -> str:
        """Short hash of the minimizing policy, stable across runs."""
        payload = json.dumps([d.model_dump() for d in self.adversary_policy], sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    @property
    def margin(self) -> float:
        return self.worst_case_utility - self.guarantee_claimed


class NashCheck(BaseModel):
    """Utility versus best-response value for one agent (1-based)."""
    agent: int
    utility: float
    best_response_value: float
    is_best_response: bool


class NashReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    checks: List[NashCheck]

    @computed_field
    @property
    def is_equilibrium(self) -> bool:
        return all(check.is_best_response for check in self.checks)


class CorrespondenceReport(BaseModel):
    """SPE play versus the k-select policy, realization by realization."""
    realizations_checked: int
    mismatches: int
    spe_welfare: float
    k_select_value: float
    passed: bool
