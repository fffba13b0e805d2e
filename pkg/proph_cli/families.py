"""
Instance Families
Tight instances for the upper bounds and generators for the welfare sweep
"""
import math
from typing import Optional

from config import get_settings
from core_model.errors import ConfigInvalidError
from core_model.models import DiscreteDistribution, Instance, PointDistribution, TieRule
from proph_cli.models import FamilySpec
from strategies.models import PerTimeThresholdStrategy, StrategyProfile


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise ConfigInvalidError(f"eps must lie in (0, 1), got {eps}")


def _gamble(high: float, eps: float) -> DiscreteDistribution:
    return DiscreteDistribution(support=[(0.0, 1.0 - eps), (high, eps)])


def prop4_instance(k: int, eps: float, n: int) -> Instance:
    """n-1 point(1) rewards followed by (k+eps)/eps w.p. eps, else 0; random tie-breaking."""
    _check_eps(eps)
    if k < 1 or n < 2:
        raise ConfigInvalidError(f"need k >= 1 and n >= 2, got k={k}, n={n}")
    distributions = [PointDistribution(value=1.0) for _ in range(n - 1)]
    distributions.append(_gamble((k + eps) / eps, eps))
    return Instance(distributions=distributions, num_agents=k, tie_rule=TieRule.RANDOM)


def prop4_wait_profile(k: int, eps: float, n: int) -> StrategyProfile:
    """Every agent passes the point rewards and selects the final gamble's high value."""
    thresholds = [math.inf] * (n - 1) + [(k + eps) / eps]
    return StrategyProfile.uniform(PerTimeThresholdStrategy(thresholds=thresholds), k)


def prop6_surrogate(i: int, eps: float, n: int, factor: Optional[float] = None) -> float:
    """Finite stand-in for an unboundedly large reward: exceeds ``factor`` times the other maxima."""
    factor = get_settings().infinity_surrogate_factor if factor is None else factor
    others = (n - i) * 1.0 + (1.0 + eps) / eps
    return factor * others + 1.0


def prop6_instance(i: int, k: int, eps: float, n: int, factor: Optional[float] = None) -> Instance:
    """
    i-1 surrogate huge rewards, n-i point(1) rewards, then (1+eps)/eps w.p.
    eps, else 0; ranked tie-breaking.
    """
    _check_eps(eps)
    if not 1 <= i <= k:
        raise ConfigInvalidError(f"need 1 <= i <= k, got i={i}, k={k}")
    if n < i:
        raise ConfigInvalidError(f"need n >= i, got n={n}, i={i}")
    huge = prop6_surrogate(i, eps, n, factor)
    distributions = [PointDistribution(value=huge) for _ in range(i - 1)]
    distributions += [PointDistribution(value=1.0) for _ in range(n - i)]
    distributions.append(_gamble((1.0 + eps) / eps, eps))
    return Instance(distributions=distributions, num_agents=k, tie_rule=TieRule.RANKED)


def build_family_instance(family_spec: FamilySpec, k: int, tie_rule: TieRule) -> Instance:
    """Instance of the family for ``k`` agents."""
    if k > family_spec.n:
        raise ConfigInvalidError(f"k={k} exceeds the family's n={family_spec.n}")
    if family_spec.family == "prop4":
        return prop4_instance(k, family_spec.eps, family_spec.n).with_agents(k, tie_rule)
    if family_spec.family == "point":
        values = family_spec.values or [float(family_spec.n - t) for t in range(family_spec.n)]
        if len(values) != family_spec.n:
            raise ConfigInvalidError(f"point family has {len(values)} values, n={family_spec.n}")
        distributions = [PointDistribution(value=v) for v in values]
    else:
        support = family_spec.support or [[0.0, 0.5], [1.0, 0.3], [3.0, 0.2]]
        try:
            law = DiscreteDistribution(support=[(float(v), float(p)) for v, p in support])
        except ValueError as e:
            raise ConfigInvalidError(f"invalid iid support: {e}") from e
        distributions = [law] * family_spec.n
    return Instance(distributions=distributions, num_agents=k, tie_rule=tie_rule)
