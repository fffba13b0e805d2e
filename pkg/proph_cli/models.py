"""
CLI Models
Scenario documents, reproduction reports and welfare sweep rows
"""
import math
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Discriminator, Field, Tag, computed_field, model_validator

from core_model.models import Instance
from engine.models import REPORT_SCHEMA_VERSION, GameReport
from solvers.models import CorrespondenceReport, NashReport
from strategies.models import (
    PerTimeThresholdStrategy,
    RankTableStrategy,
    ResponsePolicyStrategy,
    SingleThresholdStrategy,
    StrategyProfile,
)


class ThresholdFamilyDirective(BaseModel):
    """Every agent plays T^ell (random rule) or T-hat_i^ell (ranked rule)."""
    directive: Literal["threshold_family", "paper_threshold"] = "threshold_family"
    ell: Union[int, Literal["best"]] = "best"
    i: Optional[int] = Field(None, ge=1, description="Ranked rule: rank used by every agent; defaults to each agent's own")
    k: Optional[int] = Field(None, ge=1, description="Random rule: k in T^ell; defaults to the instance's agent count")


class SpeTableDirective(BaseModel):
    """Ranked rule: every agent plays the k-select table by rank among the active agents."""
    directive: Literal["spe_table"] = "spe_table"


ProfileDirective = Annotated[
    Union[ThresholdFamilyDirective, SpeTableDirective],
    Field(discriminator="directive"),
]


class ThresholdFamilyEntry(BaseModel):
    """One agent's slot in a profile list, resolved to T^ell / T-hat_i^ell for that agent."""
    kind: Literal["threshold_family", "paper_threshold"]
    ell: Union[int, Literal["best"]] = "best"
    i: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=1)


class SpeTableEntry(BaseModel):
    """One agent's slot in a profile list, resolved to the k-select rank table."""
    kind: Literal["spe_table"]


ProfileEntry = Annotated[
    Union[
        SingleThresholdStrategy,
        PerTimeThresholdStrategy,
        RankTableStrategy,
        ResponsePolicyStrategy,
        ThresholdFamilyEntry,
        SpeTableEntry,
    ],
    Field(discriminator="kind"),
]


def _profile_shape(value: Any) -> str:
    if isinstance(value, list):
        return "per_agent"
    if isinstance(value, BaseModel):
        return "directive" if hasattr(value, "directive") else "per_agent"
    return "directive"


ProfileDocument = Annotated[
    Union[
        Annotated[List[ProfileEntry], Tag("per_agent")],
        Annotated[ProfileDirective, Tag("directive")],
    ],
    Discriminator(_profile_shape),
]


class ExactEvaluation(BaseModel):
    method: Literal["exact"] = "exact"


class MonteCarloEvaluation(BaseModel):
    method: Literal["monte_carlo"] = "monte_carlo"
    num_samples: Optional[int] = Field(None, ge=2)
    seed: Optional[int] = Field(None, ge=0)


Evaluation = Annotated[Union[ExactEvaluation, MonteCarloEvaluation], Field(discriminator="method")]


class OutputSpec(BaseModel):
    """Where a report goes; stdout writes in ``format``."""
    kind: Literal["csv", "json", "stdout"]
    path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def _check_path(self) -> "OutputSpec":
        if self.kind != "stdout" and not self.path:
            raise ValueError(f"{self.kind} output needs a path")
        return self


class ScenarioConfig(BaseModel):
    """One instance, one strategy profile, one evaluation."""
    instance: Instance
    profile: ProfileDocument
    evaluation: Evaluation = Field(default_factory=ExactEvaluation)
    outputs: List[OutputSpec] = Field(default_factory=lambda: [OutputSpec(kind="stdout")])


class ScenarioResult(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = REPORT_SCHEMA_VERSION
    instance: Instance
    profile: StrategyProfile
    report: GameReport
    outputs_written: List[str] = Field(default_factory=list)


class MarginRow(BaseModel):
    """Upper-bound check u <= threshold + eps for one ell."""
    ell: int
    threshold: float
    utility: float
    margin: float
    in_tight_range: bool
    ok: bool


class ReproduceReport(BaseModel):
    """Tight-instance reproduction with every check it ran."""
    schema_version: int = REPORT_SCHEMA_VERSION
    construction: Literal["prop4", "prop6"]
    parameters: Dict[str, float]
    utilities: List[float]
    expected_utility: float
    margins: List[MarginRow]
    nash: Optional[NashReport] = None
    welfare_ratio: Optional[float] = None
    half_welfare_checked: bool = False
    correspondence: Optional[CorrespondenceReport] = None
    surrogate_value: Optional[float] = None
    surrogate_doubling_delta: Optional[float] = None
    failures: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures

    @computed_field
    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


class FamilySpec(BaseModel):
    """
    Instance generator for the welfare sweep.

    point: deterministic ``values``; iid: n copies of ``support``;
    prop4: n-1 point(1) rewards and a final (k+eps)/eps-or-0 gamble.
    """
    family: Literal["point", "iid", "prop4"]
    n: int = Field(ge=1)
    values: Optional[List[float]] = None
    support: Optional[List[List[float]]] = None
    eps: float = Field(0.5, gt=0.0, lt=1.0)


class WelfareSweepRow(BaseModel):
    """Welfare of the swept profile (the SPE in ranked_spe mode) against E[sum of top-k rewards]."""
    k: int
    mode: str
    spe_welfare: float
    optimal_welfare: float
    ratio: float

    @model_validator(mode="after")
    def _check_ratio(self) -> "WelfareSweepRow":
        if self.optimal_welfare > 0 and not math.isclose(
            self.ratio, self.spe_welfare / self.optimal_welfare, rel_tol=1e-12, abs_tol=1e-12
        ):
            raise ValueError("ratio must equal spe_welfare / optimal_welfare")
        return self


class WelfareSweepReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    family: FamilySpec
    mode: Literal["ranked_spe", "random_threshold", "random_equilibrium"]
    rows: List[WelfareSweepRow]
    fit_c: Optional[float] = None
    fit_rmse: Optional[float] = None
    non_decreasing: bool
    min_ratio: float
