"""
Strategies
Single-threshold families and the general per-agent strategy representation
"""
from strategies.models import (
    PerTimeThresholdStrategy,
    PolicyRow,
    RandomSelector,
    RankedSelector,
    RankTableStrategy,
    ResponsePolicyStrategy,
    SingleThresholdStrategy,
    Strategy,
    StrategyProfile,
    ThresholdRow,
    rank_among_active,
)
from strategies.thresholds import (
    best_ell,
    half_welfare_threshold,
    random_tie_threshold,
    ranked_half_threshold,
    ranked_tie_threshold,
    threshold_family_profile,
    threshold_family_strategy,
    threshold_table_random,
    threshold_table_ranked,
    top_share_threshold,
)

__all__ = [
    'PerTimeThresholdStrategy',
    'PolicyRow',
    'RandomSelector',
    'RankTableStrategy',
    'RankedSelector',
    'ResponsePolicyStrategy',
    'SingleThresholdStrategy',
    'Strategy',
    'StrategyProfile',
    'ThresholdRow',
    'best_ell',
    'half_welfare_threshold',
    'random_tie_threshold',
    'rank_among_active',
    'ranked_half_threshold',
    'ranked_tie_threshold',
    'threshold_family_profile',
    'threshold_family_strategy',
    'threshold_table_random',
    'threshold_table_ranked',
    'top_share_threshold',
]
