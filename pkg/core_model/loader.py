"""
Instance Documents
Loading JSON instance files and generating seeded random fixtures
"""
import json
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import ValidationError

from core_model.errors import ConfigInvalidError
from core_model.models import DiscreteDistribution, Instance, TieRule
from core_model.rng import SeededRNG


def describe_validation_error(error: ValidationError) -> str:
    """One-line summary of the first pydantic error."""
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "document"
    return f"{location}: {first.get('msg', 'invalid value')}"


def read_document(source: Union[str, Path, Dict[str, Any]]) -> Dict[str, Any]:
    """Read a JSON document from a path, or pass a mapping through."""
    if isinstance(source, dict):
        return source
    path = Path(source)
    try:
        document = json.loads(path.read_text())
    except FileNotFoundError as e:
        raise ConfigInvalidError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigInvalidError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
    if not isinstance(document, dict):
        raise ConfigInvalidError(f"{path}: top-level JSON value must be an object")
    return document


def load_instance(source: Union[str, Path, Dict[str, Any]]) -> Instance:
    """
    Parse an instance document.

    Scenario documents are accepted too; their ``instance`` member is used.
    """
    document = read_document(source)
    if "instance" in document and "distributions" not in document:
        document = document["instance"]
    try:
        return Instance.model_validate(document)
    except ValidationError as e:
        raise ConfigInvalidError(f"invalid instance: {describe_validation_error(e)}") from e


def random_instance(
    rng: SeededRNG,
    max_rewards: int = 6,
    max_agents: int = 4,
    max_support: int = 4,
    tie_rule: TieRule = TieRule.RANDOM,
    max_value: float = 10.0,
) -> Instance:
    """Random fully discrete instance with n <= max_rewards, k <= max_agents."""
    gen = rng.generator
    n = int(gen.integers(1, max_rewards + 1))
    k = int(gen.integers(1, max_agents + 1))
    distributions = []
    for _ in range(n):
        size = int(gen.integers(1, max_support + 1))
        values = sorted({round(float(v), 3) for v in gen.uniform(0.0, max_value, size)})
        weights = gen.dirichlet([1.0] * len(values))
        probs = [float(w) for w in weights / weights.sum()]
        distributions.append(DiscreteDistribution(support=list(zip(values, probs))))
    return Instance(distributions=distributions, num_agents=k, tie_rule=tie_rule)
