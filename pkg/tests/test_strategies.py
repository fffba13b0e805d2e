"""
Test Threshold Families and Strategy Representations
"""
import math

import pytest
from pydantic import ValidationError

from core_model import (
    ConfigInvalidError,
    DiscreteDistribution,
    EllOutOfRangeError,
    IndexOutOfRangeError,
    Instance,
    OrderStatReport,
    TieRule,
    expected_order_stats_exact,
)
from strategies import (
    PerTimeThresholdStrategy,
    PolicyRow,
    RandomSelector,
    RankedSelector,
    RankTableStrategy,
    ResponsePolicyStrategy,
    SingleThresholdStrategy,
    StrategyProfile,
    best_ell,
    half_welfare_threshold,
    rank_among_active,
    random_tie_threshold,
    ranked_half_threshold,
    ranked_tie_threshold,
    threshold_family_profile,
    threshold_family_strategy,
    threshold_table_random,
    threshold_table_ranked,
    top_share_threshold,
)
from tests.conftest import make_corpus, points


@pytest.fixture
def order_stats_321():
    return OrderStatReport.from_expectations([3.0, 2.0, 1.0])


def test_random_tie_thresholds(order_stats_321):
    """T^1 = 3/3, T^2 = 5/4, T^3 = 6/5 for k = 2"""
    assert random_tie_threshold(order_stats_321, 2, 1) == pytest.approx(1.0)
    assert random_tie_threshold(order_stats_321, 2, 2) == pytest.approx(1.25)
    assert random_tie_threshold(order_stats_321, 2, 3) == pytest.approx(1.2)


def test_random_tie_threshold_ell_range(order_stats_321):
    with pytest.raises(EllOutOfRangeError):
        random_tie_threshold(order_stats_321, 2, 0)
    with pytest.raises(EllOutOfRangeError):
        random_tie_threshold(order_stats_321, 2, 4)


def test_ranked_tie_thresholds(order_stats_321):
    """T-hat_1^0 = 3/2, T-hat_2^1 = (2 + 1)/3"""
    assert ranked_tie_threshold(order_stats_321, 1, 0) == pytest.approx(1.5)
    assert ranked_tie_threshold(order_stats_321, 2, 1) == pytest.approx(1.0)
    assert ranked_tie_threshold(order_stats_321, 3, 0) == pytest.approx(0.5)


def test_ranked_tie_threshold_ranges(order_stats_321):
    with pytest.raises(IndexOutOfRangeError):
        ranked_tie_threshold(order_stats_321, 4, 0)
    with pytest.raises(IndexOutOfRangeError):
        ranked_tie_threshold(order_stats_321, 2, 2)


def test_best_ell_prefers_largest_then_smallest(order_stats_321):
    """Random k=2 peaks at ell=2; ranked i=2 ties at 1.0 and keeps ell=0"""
    assert best_ell(order_stats_321, RandomSelector(k=2)) == (2, pytest.approx(1.25))
    assert best_ell(order_stats_321, RankedSelector(i=2)) == (0, pytest.approx(1.0))


def test_threshold_tables(order_stats_321):
    random_rows = threshold_table_random(order_stats_321, 2)
    ranked_rows = threshold_table_ranked(order_stats_321, max_rank=2)

    assert [row.ell for row in random_rows] == [1, 2, 3]
    assert [(row.i, row.ell) for row in ranked_rows] == [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]


def test_guarantee_thresholds(order_stats_321):
    assert half_welfare_threshold(order_stats_321, 2) == (pytest.approx(1.25), pytest.approx(1.25))
    assert top_share_threshold(order_stats_321, 2) == (pytest.approx(1.0), pytest.approx(1.0))
    assert ranked_half_threshold(order_stats_321, 2) == (pytest.approx(1.0), pytest.approx(1.0))


def test_threshold_family_profile_random(order_stats_321):
    inst = Instance(distributions=points(3, 2, 1), num_agents=2, tie_rule=TieRule.RANDOM)
    profile = threshold_family_profile(inst, order_stats_321, ell=2)

    assert [s.T for s in profile.per_agent] == [pytest.approx(1.25)] * 2


def test_threshold_family_strategy_ranked_uses_own_rank(order_stats_321):
    inst = Instance(distributions=points(3, 2, 1), num_agents=2, tie_rule=TieRule.RANKED)

    first = threshold_family_strategy(inst, order_stats_321, agent=0, ell=0)
    second = threshold_family_strategy(inst, order_stats_321, agent=1, ell=0)
    pinned = threshold_family_strategy(inst, order_stats_321, agent=0, ell=0, i=2)

    assert first.T == pytest.approx(1.5)
    assert second.T == pytest.approx(1.0)
    assert pinned.T == pytest.approx(1.0)


def test_threshold_family_strategy_ranks_beyond_n_take_anything():
    inst = Instance(distributions=points(3, 2), num_agents=3, tie_rule=TieRule.RANKED)
    stats = OrderStatReport.from_expectations([3.0, 2.0])

    third = threshold_family_strategy(inst, stats, agent=2)

    assert third.T == 0.0
    with pytest.raises(IndexOutOfRangeError):
        threshold_family_strategy(inst, stats, agent=2, i=3)


def test_rank_among_active():
    """Rank counts active agents with a lower index"""
    assert rank_among_active(0, 0b111) == 1
    assert rank_among_active(2, 0b111) == 3
    assert rank_among_active(2, 0b101) == 2


def test_strategies_select_on_weak_inequality():
    assert SingleThresholdStrategy(T=2.0).selects(1, 2.0, 0, 1)
    assert not SingleThresholdStrategy(T=2.0).selects(1, 1.999, 0, 1)

    per_time = PerTimeThresholdStrategy(thresholds=[math.inf, 5.0])
    assert not per_time.selects(1, 100.0, 0, 1)
    assert per_time.selects(2, 5.0, 0, 1)


def test_rank_table_strategy_uses_rank_among_active():
    table = RankTableStrategy(thresholds=[[10.0, 0.0]])

    assert not table.selects(1, 1.0, agent=1, active_mask=0b10)
    assert table.selects(1, 1.0, agent=1, active_mask=0b11)


def test_response_policy_strategy_lookup():
    policy = ResponsePolicyStrategy(rows=[PolicyRow(t=2, active_mask=0b11, accepted=[5.0])])

    assert policy.selects(2, 5.0, 0, 0b11)
    assert not policy.selects(2, 5.0, 0, 0b01)
    assert not policy.selects(1, 5.0, 0, 0b11)


def test_profile_shape_checks():
    inst = Instance(distributions=points(1, 2), num_agents=2)

    with pytest.raises(ConfigInvalidError):
        StrategyProfile.uniform(SingleThresholdStrategy(T=1.0), 3).check_for(inst)
    with pytest.raises(ConfigInvalidError):
        StrategyProfile.uniform(PerTimeThresholdStrategy(thresholds=[1.0]), 2).check_for(inst)
    StrategyProfile.uniform(PerTimeThresholdStrategy(thresholds=[1.0, 1.0]), 2).check_for(inst)


def test_profile_documents_validate_by_kind():
    profile = StrategyProfile.model_validate({"per_agent": [
        {"kind": "single_threshold", "T": 1.0},
        {"kind": "per_time_threshold", "thresholds": [1.0, 2.0]},
    ]})

    assert isinstance(profile[1], PerTimeThresholdStrategy)
    with pytest.raises(ValidationError):
        StrategyProfile.model_validate({"per_agent": [{"kind": "coin_flip"}]})


def _scaled(inst: Instance, c: float) -> Instance:
    return Instance(
        distributions=[DiscreteDistribution(support=[(c * v, p) for v, p in d.support_points()]) for d in inst.distributions],
        num_agents=inst.k,
        tie_rule=inst.tie_rule,
    )


def test_random_tie_thresholds_fall_with_more_agents_on_corpus():
    for inst in make_corpus(7, 200, TieRule.RANDOM):
        stats = expected_order_stats_exact(inst)
        for ell in range(1, inst.n + 1):
            by_k = [random_tie_threshold(stats, k, ell) for k in range(1, 7)]
            assert all(a >= b for a, b in zip(by_k, by_k[1:])), (inst, ell)


def test_thresholds_stay_below_their_reference_sums_on_corpus():
    """T^ell <= (1/k) sum_{j<=ell} E[y_j] and T-hat_i^ell <= E[y_i]"""
    for inst in make_corpus(7, 200, TieRule.RANDOM):
        stats = expected_order_stats_exact(inst)
        for ell in range(1, inst.n + 1):
            reference = math.fsum(stats.expectations[:ell]) / inst.k
            assert random_tie_threshold(stats, inst.k, ell) <= reference + 1e-12
        for i in range(1, inst.n + 1):
            for ell in range(0, inst.n - i + 1):
                assert ranked_tie_threshold(stats, i, ell) <= stats.expectations[i - 1] + 1e-12


def test_thresholds_scale_with_rewards_on_corpus():
    c = 2.5
    for inst in make_corpus(7, 200, TieRule.RANDOM):
        stats = expected_order_stats_exact(inst)
        scaled = expected_order_stats_exact(_scaled(inst, c))
        for ell in range(1, inst.n + 1):
            assert random_tie_threshold(scaled, inst.k, ell) == pytest.approx(
                c * random_tie_threshold(stats, inst.k, ell), rel=1e-9, abs=1e-12
            )
        for i in range(1, inst.n + 1):
            for ell in range(0, inst.n - i + 1):
                assert ranked_tie_threshold(scaled, i, ell) == pytest.approx(
                    c * ranked_tie_threshold(stats, i, ell), rel=1e-9, abs=1e-12
                )
