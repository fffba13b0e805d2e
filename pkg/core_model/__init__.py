"""
Core Model
Reward distributions, game instances and expected order statistics
"""
from core_model.enumeration import enumerate_realizations, sample_realization, sample_values
from core_model.errors import (
    CapabilityError,
    ConfigInvalidError,
    EllOutOfRangeError,
    ExplosionCapError,
    IndexOutOfRangeError,
    NotDiscreteError,
    ProphetError,
    RankOutOfRangeError,
    RuleMismatchError,
    TooManyAgentsError,
)
from core_model.loader import load_instance, random_instance
from core_model.models import (
    DiscreteDistribution,
    Distribution,
    EstimationMethod,
    ExponentialDistribution,
    Instance,
    OrderStatReport,
    PointDistribution,
    Realization,
    TieRule,
    UniformDistribution,
)
from core_model.order_stats import (
    expected_order_stats,
    expected_order_stats_exact,
    expected_order_stats_mc,
)
from core_model.rng import SeededRNG, replication_stream

__all__ = [
    'CapabilityError',
    'ConfigInvalidError',
    'DiscreteDistribution',
    'Distribution',
    'EllOutOfRangeError',
    'EstimationMethod',
    'ExplosionCapError',
    'ExponentialDistribution',
    'IndexOutOfRangeError',
    'Instance',
    'NotDiscreteError',
    'OrderStatReport',
    'PointDistribution',
    'ProphetError',
    'RankOutOfRangeError',
    'Realization',
    'RuleMismatchError',
    'SeededRNG',
    'TieRule',
    'TooManyAgentsError',
    'UniformDistribution',
    'enumerate_realizations',
    'expected_order_stats',
    'expected_order_stats_exact',
    'expected_order_stats_mc',
    'load_instance',
    'random_instance',
    'replication_stream',
    'sample_realization',
    'sample_values',
]
