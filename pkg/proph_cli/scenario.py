"""
Scenario Runner
Load a scenario document, resolve its profile directives, evaluate and emit
"""
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from config import get_settings
from core_model.errors import ConfigInvalidError
from core_model.loader import describe_validation_error, read_document
from core_model.models import Instance, OrderStatReport, TieRule
from core_model.order_stats import expected_order_stats
from engine.exact import expected_utilities_exact
from engine.export import game_report_csv
from engine.models import GameReport
from engine.montecarlo import expected_utilities_mc
from observability import get_logger
from proph_cli.models import (
    MonteCarloEvaluation,
    OutputSpec,
    ScenarioConfig,
    ScenarioResult,
    SpeTableDirective,
    SpeTableEntry,
    ThresholdFamilyDirective,
    ThresholdFamilyEntry,
)
from proph_cli.reports import model_json, write_text_atomic
from solvers.models import WorstCaseCertificate
from solvers.spe import spe_profile
from solvers.worst_case import worst_case_utility_random, worst_case_utility_ranked
from strategies.models import SingleThresholdStrategy, StrategyProfile
from strategies.thresholds import (
    half_welfare_threshold,
    ranked_half_threshold,
    threshold_family_strategy,
    threshold_table_random,
    threshold_table_ranked,
    top_share_threshold,
)

logger = get_logger("scenario")


def load_scenario(source: Union[str, Path, Dict[str, Any]]) -> ScenarioConfig:
    """Parse a scenario document; pydantic errors become ConfigInvalidError."""
    document = read_document(source)
    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigInvalidError(f"invalid scenario: {describe_validation_error(e)}") from e


def _directive_sampling(
    config: ScenarioConfig,
    num_samples: Optional[int],
    seed: Optional[int],
) -> Tuple[Optional[int], Optional[int]]:
    """
    Sample count and seed for the order statistics behind directives.

    Continuous instances fall back to their Monte Carlo evaluation settings
    when no override is passed.
    """
    evaluation = config.evaluation
    if not config.instance.is_fully_discrete and isinstance(evaluation, MonteCarloEvaluation):
        num_samples = num_samples or evaluation.num_samples
        seed = evaluation.seed if seed is None else seed
    return num_samples, seed


def _family_member(inst: Instance, order_stats: OrderStatReport, agent: int, entry) -> SingleThresholdStrategy:
    ell = None if entry.ell == "best" else entry.ell
    return threshold_family_strategy(inst, order_stats, agent, ell=ell, i=entry.i, k=entry.k)


def resolve_profile(
    config: ScenarioConfig,
    num_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> StrategyProfile:
    """
    Turn the configured profile into concrete per-agent strategies.

    Directives and ``spe_table`` / ``threshold_family`` list entries are
    resolved against the instance, so the returned profile carries the
    numeric thresholds actually played.
    """
    inst = config.instance
    num_samples, seed = _directive_sampling(config, num_samples, seed)
    if isinstance(config.profile, SpeTableDirective):
        profile = spe_profile(inst)
    elif isinstance(config.profile, ThresholdFamilyDirective):
        order_stats = expected_order_stats(inst, num_samples=num_samples, seed=seed)
        profile = StrategyProfile(per_agent=[
            _family_member(inst, order_stats, agent, config.profile) for agent in range(inst.k)
        ])
    else:
        entries = config.profile
        order_stats = None
        if any(isinstance(entry, ThresholdFamilyEntry) for entry in entries):
            order_stats = expected_order_stats(inst, num_samples=num_samples, seed=seed)
        spe_rule = None
        if any(isinstance(entry, SpeTableEntry) for entry in entries):
            spe_rule = spe_profile(inst)[0]
        per_agent = []
        for agent, entry in enumerate(entries):
            if isinstance(entry, SpeTableEntry):
                per_agent.append(spe_rule)
            elif isinstance(entry, ThresholdFamilyEntry):
                per_agent.append(_family_member(inst, order_stats, agent, entry))
            else:
                per_agent.append(entry)
        profile = StrategyProfile(per_agent=per_agent)
    profile.check_for(inst)
    return profile


def evaluate(
    config: ScenarioConfig,
    profile: StrategyProfile,
    num_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> GameReport:
    """Exact or Monte Carlo utilities; ``num_samples``/``seed`` override a Monte Carlo evaluation."""
    evaluation = config.evaluation
    if isinstance(evaluation, MonteCarloEvaluation):
        settings = get_settings()
        samples = num_samples or evaluation.num_samples or settings.default_num_samples
        chosen_seed = seed if seed is not None else evaluation.seed
        chosen_seed = settings.default_seed if chosen_seed is None else chosen_seed
        return expected_utilities_mc(config.instance, profile, samples, chosen_seed)
    return expected_utilities_exact(config.instance, profile)


def render(result: ScenarioResult, fmt: str) -> str:
    return game_report_csv(result.report) if fmt == "csv" else model_json(result)


def run_scenario(
    config: ScenarioConfig,
    num_samples: Optional[int] = None,
    seed: Optional[int] = None,
    write_outputs: bool = True,
) -> ScenarioResult:
    """
    Resolve, evaluate and emit.

    Every output is rendered before the first file is written, so a failing
    scenario leaves no partial output behind.
    """
    start = time.perf_counter()
    profile = resolve_profile(config, num_samples, seed)
    report = evaluate(config, profile, num_samples, seed)
    result = ScenarioResult(instance=config.instance, profile=profile, report=report)
    if not write_outputs:
        return result

    rendered: List[Tuple[OutputSpec, str]] = [
        (output, render(result, output.kind if output.kind != "stdout" else output.format))
        for output in config.outputs
    ]
    written = []
    for output, text in rendered:
        if output.kind == "stdout":
            sys.stdout.write(text)
        else:
            written.append(write_text_atomic(output.path, text))
    result = result.model_copy(update={"outputs_written": written})
    logger.info("scenario complete", {
        "num_agents": config.instance.k,
        "method": report.method.value,
        "outputs": written,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    })
    return result


def certify_instance(inst: Instance, num_samples: Optional[int] = None, seed: Optional[int] = None) -> List[WorstCaseCertificate]:
    """
    Worst-case certificates for every single-threshold family member of the
    instance's tie rule, followed by the half-welfare and top-share guarantees.

    Random rule: T^ell for ell in 1..n, then T^k against E[sum_{j<=k} y_j]/(2k)
    and T^1 against E[y_1]/(k+1). Ranked rule: T-hat_i^ell for every rank
    i <= min(k, n), then T-hat_i^0 against E[y_i]/2.
    """
    inst.require_discrete()
    order_stats = expected_order_stats(inst, num_samples=num_samples, seed=seed)
    k = inst.k
    certificates = []
    if inst.tie_rule == TieRule.RANDOM:
        for row in threshold_table_random(order_stats, k):
            certificates.append(worst_case_utility_random(inst, k, row.threshold))
        if k <= inst.n:
            threshold, claim = half_welfare_threshold(order_stats, k)
            certificates.append(worst_case_utility_random(inst, k, threshold, claim=claim))
        threshold, claim = top_share_threshold(order_stats, k)
        certificates.append(worst_case_utility_random(inst, k, threshold, claim=claim))
    else:
        max_rank = min(k, inst.n)
        for row in threshold_table_ranked(order_stats, max_rank):
            certificates.append(worst_case_utility_ranked(inst, k, row.i, row.threshold))
        for i in range(1, max_rank + 1):
            threshold, claim = ranked_half_threshold(order_stats, i)
            certificates.append(worst_case_utility_ranked(inst, k, i, threshold, claim=claim))
    return certificates
