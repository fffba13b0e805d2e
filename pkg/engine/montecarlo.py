"""
Monte Carlo Expected Utilities
Replications run in fixed-size chunks; chunk c draws from the stream derived
from (seed, c), so a report depends only on (instance, profile, samples, seed)
"""
import math
import time

import numpy as np

from core_model.enumeration import sample_values
from core_model.errors import ConfigInvalidError
from core_model.models import EstimationMethod, Instance
from core_model.rng import replication_stream
from engine.models import GameReport
from engine.play import play_values
from observability import get_logger
from strategies.models import StrategyProfile

logger = get_logger("engine")

CHUNK_SIZE = 4096


def _play_chunk(inst: Instance, profile: StrategyProfile, seed: int, chunk: int, size: int) -> np.ndarray:
    stream = replication_stream(seed, chunk)
    draws = sample_values(inst, stream, size)
    utilities = np.zeros((size, inst.k))
    for row, values in enumerate(draws):
        for agent, assigned in enumerate(play_values(inst, profile, values.tolist(), stream)):
            if assigned is not None:
                utilities[row, agent] = assigned.value
    return utilities


def expected_utilities_mc(
    inst: Instance,
    profile: StrategyProfile,
    num_samples: int,
    seed: int,
) -> GameReport:
    """Average of independent seeded plays with per-agent standard errors."""
    if num_samples < 2:
        raise ConfigInvalidError(f"num_samples must be at least 2, got {num_samples}")
    profile.check_for(inst)
    start = time.perf_counter()
    chunks = [
        _play_chunk(inst, profile, seed, chunk, min(CHUNK_SIZE, num_samples - offset))
        for chunk, offset in enumerate(range(0, num_samples, CHUNK_SIZE))
    ]
    utilities = np.vstack(chunks)
    welfare = utilities.sum(axis=1)
    root_n = math.sqrt(num_samples)
    report = GameReport(
        per_agent_utility=[float(x) for x in utilities.mean(axis=0)],
        welfare=float(welfare.mean()),
        method=EstimationMethod.MONTE_CARLO,
        num_samples=num_samples,
        std_errors=[float(x) for x in utilities.std(axis=0, ddof=1) / root_n],
        welfare_std_error=float(welfare.std(ddof=1) / root_n),
    )
    logger.log_evaluation(
        "monte_carlo", inst.k, report.welfare, (time.perf_counter() - start) * 1000,
        num_samples=num_samples, seed=seed,
    )
    return report
