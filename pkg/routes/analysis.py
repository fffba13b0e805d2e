"""
Analysis API Routes
Order statistics, threshold tables, k-select SPE tables, worst-case
certificates and scenario evaluation
"""
import json
from typing import Any, List, Optional

from fastapi import APIRouter
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from core_model.models import Instance, OrderStatReport, TieRule
from core_model.order_stats import expected_order_stats
from engine.export import finite_json
from observability import get_logger
from proph_cli.models import ScenarioConfig, ScenarioResult
from proph_cli.scenario import certify_instance, run_scenario
from solvers.k_select import solve_k_select
from solvers.models import ThresholdTable, WorstCaseCertificate
from strategies.models import ThresholdRow
from strategies.thresholds import threshold_table_random, threshold_table_ranked

logger = get_logger("analysis")


class ReportResponse(JSONResponse):
    """JSON response that writes +inf thresholds as the string "inf"."""

    def render(self, content: Any) -> bytes:
        return json.dumps(finite_json(content), allow_nan=False, separators=(",", ":")).encode("utf-8")


router = APIRouter(default_response_class=ReportResponse)


class InstanceRequest(BaseModel):
    instance: Instance
    num_samples: Optional[int] = Field(None, ge=2, description="Monte Carlo samples for continuous laws")
    seed: Optional[int] = Field(None, ge=0)


class ThresholdsResponse(BaseModel):
    order_stats: OrderStatReport
    thresholds: List[ThresholdRow]


@router.post("/order-stats", response_model=OrderStatReport)
def order_stats(request: InstanceRequest):
    """E[y_j] for j = 1..n, exact when the instance is fully discrete."""
    return expected_order_stats(request.instance, num_samples=request.num_samples, seed=request.seed)


@router.post("/thresholds", response_model=ThresholdsResponse)
def thresholds(request: InstanceRequest):
    inst = request.instance
    report = expected_order_stats(inst, num_samples=request.num_samples, seed=request.seed)
    if inst.tie_rule == TieRule.RANDOM:
        rows = threshold_table_random(report, inst.k)
    else:
        rows = threshold_table_ranked(report, min(inst.k, inst.n))
    return ThresholdsResponse(order_stats=report, thresholds=rows)


@router.post("/spe", response_model=ThresholdTable)
def spe(request: InstanceRequest):
    return solve_k_select(request.instance)


@router.post("/certify", response_model=List[WorstCaseCertificate])
def certify(request: InstanceRequest):
    certificates = certify_instance(request.instance)
    logger.info("certified instance", {
        "num_certificates": len(certificates),
        "failed": sum(not c.passed for c in certificates),
    })
    return certificates


@router.post("/scenarios/run", response_model=ScenarioResult)
def scenarios_run(config: ScenarioConfig):
    """Evaluate a scenario; its ``outputs`` are ignored by the service."""
    return run_scenario(config, write_outputs=False)
