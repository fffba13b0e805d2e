"""
Test k-Select Tables, SPE, Worst-Case Certificates and Best Responses
"""
import csv
import io
import math

import pytest

from core_model import (
    Instance,
    RankOutOfRangeError,
    RuleMismatchError,
    TieRule,
    TooManyAgentsError,
    enumerate_realizations,
    expected_order_stats_exact,
)
from engine import expected_utilities_exact
from solvers import (
    ThresholdTable,
    best_response_value,
    certificates_csv,
    check_concavity,
    check_correspondence,
    k_select_accepted,
    solve_k_select,
    spe_accepted,
    spe_profile,
    threshold_table_csv,
    verify_nash,
    worst_case_utility_random,
    worst_case_utility_ranked,
)
from strategies import (
    PerTimeThresholdStrategy,
    SingleThresholdStrategy,
    StrategyProfile,
    half_welfare_threshold,
    random_tie_threshold,
    ranked_half_threshold,
    ranked_tie_threshold,
)
from tests.conftest import gamble, make_corpus, points


@pytest.fixture
def point_then_gamble():
    """point(2) then 5 w.p. 0.2; one agent"""
    return Instance(distributions=points(2) + [gamble(5.0, 0.2)], num_agents=1, tie_rule=TieRule.RANKED)


# k-select

def test_k_select_single_slot(point_then_gamble):
    table = solve_k_select(point_then_gamble)

    assert table.value_at(2, 1) == pytest.approx(1.0)
    assert table.threshold_at(1, 1) == pytest.approx(1.0)
    assert table.value_at(1, 1) == pytest.approx(2.0)


def test_k_select_two_slots(one_then_ten):
    """The second slot takes the 1: T_1^1 = 10, T_1^2 = 0"""
    table = solve_k_select(one_then_ten)

    assert table.threshold_at(1, 1) == pytest.approx(10.0)
    assert table.threshold_at(1, 2) == pytest.approx(0.0)
    assert table.optimal_value() == pytest.approx(11.0)


def test_k_select_all_zero():
    table = solve_k_select(Instance(distributions=points(0, 0, 0), num_agents=2))

    assert all(v == 0.0 for row in table.values for v in row)
    assert all(t == 0.0 for row in table.thresholds for t in row)


def test_k_select_boundary_rows(ranked_gamble):
    table = solve_k_select(ranked_gamble)

    assert table.values[-1] == [0.0, 0.0, 0.0]
    assert all(row[0] == 0.0 for row in table.values)
    for t in range(1, table.num_rewards + 1):
        for slots in range(1, table.num_slots + 1):
            expected = table.value_at(t + 1, slots) - table.value_at(t + 1, slots - 1)
            assert table.threshold_at(t, slots) == expected


def test_concavity_check_rejects_convex_rows():
    table = ThresholdTable(values=[[0.0, 1.0, 3.0], [0.0, 0.0, 0.0]], thresholds=[[0.0, 0.0]])

    with pytest.raises(RuntimeError):
        check_concavity(table)


def test_k_select_accepted_policy(one_then_ten):
    table = solve_k_select(one_then_ten)

    assert k_select_accepted(table, [1.0, 10.0]) == [1.0, 10.0]
    assert k_select_accepted(table, [1.0, 10.0], k=1) == [10.0]


# SPE

def test_spe_profile_utilities(one_then_ten):
    """Rank 1 passes the 1, rank 2 takes it; rank 1 then takes the 10"""
    profile = spe_profile(one_then_ten)
    report = expected_utilities_exact(one_then_ten, profile)

    assert report.per_agent_utility == pytest.approx([10.0, 1.0])
    assert spe_accepted(one_then_ten, profile, [1.0, 10.0]) == [1.0, 10.0]


def test_spe_requires_ranked_rule(point_321_random):
    with pytest.raises(RuleMismatchError):
        spe_profile(point_321_random)


def test_spe_single_agent_is_single_choice_policy(point_then_gamble):
    report = expected_utilities_exact(point_then_gamble, spe_profile(point_then_gamble))

    assert report.per_agent_utility == pytest.approx([2.0])


def test_spe_ranked_gamble(ranked_gamble):
    """Agent 1 takes the 10; agent 2 passes the 1 and waits for the gamble"""
    report = expected_utilities_exact(ranked_gamble, spe_profile(ranked_gamble))

    assert report.per_agent_utility == pytest.approx([10.0, 1.5])


def test_spe_corresponds_to_k_select_on_corpus():
    """Same accepted multiset per realization, welfare = V_1(k), and an NE"""
    for inst in make_corpus(2024, 100, TieRule.RANKED, max_rewards=5, max_support=3):
        table = solve_k_select(inst)
        report = check_correspondence(inst, table)

        assert report.passed, inst
        assert report.mismatches == 0
        assert report.spe_welfare == pytest.approx(table.optimal_value(), abs=1e-9)
        assert verify_nash(inst, spe_profile(inst, table)).is_equilibrium


# worst case

def test_worst_case_random_contested_start(point_321_random):
    """Adversary competes at t=1: 0.5 * 3 + 0.5 * 2"""
    cert = worst_case_utility_random(point_321_random, 2, 1.25)

    assert cert.worst_case_utility == pytest.approx(2.5)
    assert cert.passed
    assert cert.status == "PASS"
    assert cert.guarantee_claimed == 1.25


def test_worst_case_random_without_adversaries(point_then_gamble):
    cert = worst_case_utility_random(point_then_gamble, 1, 1.0)

    assert cert.worst_case_utility == pytest.approx(2.0)


def test_worst_case_random_tight_instance(prop4_small):
    cert = worst_case_utility_random(prop4_small, 2, 1.0)

    assert cert.worst_case_utility == pytest.approx(1.0)
    assert cert.passed


def test_worst_case_ranked_snatched_top(point_321_ranked):
    """The higher agent snatches the 3; I take the 2"""
    cert = worst_case_utility_ranked(point_321_ranked, 2, 2, 1.0)

    assert cert.worst_case_utility == pytest.approx(2.0)
    assert cert.passed


def test_worst_case_ranked_top_rank_is_uncontested(point_321_ranked):
    cert = worst_case_utility_ranked(point_321_ranked, 2, 1, 1.5)

    assert cert.worst_case_utility == pytest.approx(3.0)


def test_worst_case_ranked_gamble(ranked_gamble):
    """T-hat_2^0 = E[y_2] / 2 = 1.0 with E[y_2] = 2, and the adversary holds agent 2 to exactly that"""
    order_stats = expected_order_stats_exact(ranked_gamble)
    threshold = ranked_tie_threshold(order_stats, 2, 0)
    cert = worst_case_utility_ranked(ranked_gamble, 2, 2, threshold)

    assert threshold == pytest.approx(1.0)
    assert cert.worst_case_utility == pytest.approx(1.0)
    assert cert.passed


def test_worst_case_rank_range(point_321_ranked):
    with pytest.raises(RankOutOfRangeError):
        worst_case_utility_ranked(point_321_ranked, 2, 3, 1.0)


def test_worst_case_fails_an_inflated_claim(point_321_random):
    cert = worst_case_utility_random(point_321_random, 2, 1.25, claim=3.0)

    assert not cert.passed
    assert cert.status == "FAIL"
    assert cert.margin == pytest.approx(-0.5)


def test_worst_case_is_below_concrete_opponents(point_321_random):
    profile = StrategyProfile(per_agent=[SingleThresholdStrategy(T=1.25), SingleThresholdStrategy(T=2.5)])
    report = expected_utilities_exact(point_321_random, profile)
    cert = worst_case_utility_random(point_321_random, 2, 1.25)

    assert cert.worst_case_utility <= report.per_agent_utility[0] + 1e-9


def test_certificate_digest_is_stable(point_321_random):
    first = worst_case_utility_random(point_321_random, 2, 1.25)
    second = worst_case_utility_random(point_321_random, 2, 1.25)

    assert first.adversary_policy_digest == second.adversary_policy_digest
    assert len(first.adversary_policy_digest) == 16
    rows = list(csv.DictReader(io.StringIO(certificates_csv([first]))))
    assert rows[0]["status"] == "PASS"


def test_random_rule_guarantees_on_corpus():
    """Every T^ell is certified for 200 random instances"""
    for inst in make_corpus(7, 200, TieRule.RANDOM):
        order_stats = expected_order_stats_exact(inst)
        for ell in range(1, inst.n + 1):
            threshold = random_tie_threshold(order_stats, inst.k, ell)
            cert = worst_case_utility_random(inst, inst.k, threshold)
            assert cert.worst_case_utility >= threshold - 1e-9, (inst, ell)


def test_ranked_rule_guarantees_on_corpus():
    """Every T-hat_i^ell is certified for 200 random instances"""
    for inst in make_corpus(7, 200, TieRule.RANKED):
        order_stats = expected_order_stats_exact(inst)
        for i in range(1, min(inst.k, inst.n) + 1):
            for ell in range(0, inst.n - i + 1):
                threshold = ranked_tie_threshold(order_stats, i, ell)
                cert = worst_case_utility_ranked(inst, inst.k, i, threshold)
                assert cert.worst_case_utility >= threshold - 1e-9, (inst, i, ell)
            threshold, claim = ranked_half_threshold(order_stats, i)
            assert worst_case_utility_ranked(inst, inst.k, i, threshold, claim=claim).passed


def test_half_welfare_guarantee_on_corpus():
    """All agents on T^k collect at least half of E[top-k sum]"""
    for inst in make_corpus(7, 200, TieRule.RANDOM):
        if inst.k > inst.n:
            continue
        order_stats = expected_order_stats_exact(inst)
        threshold, _ = half_welfare_threshold(order_stats, inst.k)
        report = expected_utilities_exact(inst, StrategyProfile.uniform(SingleThresholdStrategy(T=threshold), inst.k))
        assert report.welfare >= 0.5 * math.fsum(order_stats.expectations[:inst.k]) - 1e-9


# best response

def test_best_response_waits_with_opponent(prop4_small):
    """Waiting too (1.25) beats grabbing the point reward (1.0)"""
    profile = StrategyProfile.uniform(PerTimeThresholdStrategy(thresholds=[math.inf, 5.0]), 2)
    value, policy = best_response_value(prop4_small, profile, 0)

    assert value == pytest.approx(1.25)
    report = expected_utilities_exact(prop4_small, profile.replace(0, policy))
    assert report.per_agent_utility[0] == pytest.approx(1.25)


def test_best_response_single_agent_is_k_select_value(point_then_gamble):
    profile = StrategyProfile.uniform(SingleThresholdStrategy(T=100.0), 1)
    value, _ = best_response_value(point_then_gamble, profile, 0)

    assert value == pytest.approx(solve_k_select(point_then_gamble).value_at(1, 1))


def test_verify_nash_select_everything(point_321_ranked):
    """Agent 2 cannot beat the 2 it already gets"""
    profile = StrategyProfile.uniform(SingleThresholdStrategy(T=0.0), 2)
    report = verify_nash(point_321_ranked, profile)

    assert [c.utility for c in report.checks] == pytest.approx([3.0, 2.0])
    assert [c.best_response_value for c in report.checks] == pytest.approx([3.0, 2.0])
    assert report.is_equilibrium


def test_verify_nash_flags_a_profitable_deviation(prop4_small):
    """Grabbing the 1 is not a best response when the other agent waits"""
    profile = StrategyProfile(per_agent=[
        SingleThresholdStrategy(T=1.0),
        PerTimeThresholdStrategy(thresholds=[math.inf, 5.0]),
    ])
    report = verify_nash(prop4_small, profile)

    assert report.checks[0].utility == pytest.approx(1.0)
    assert report.checks[0].best_response_value == pytest.approx(1.25)
    assert not report.is_equilibrium


def test_best_response_agent_cap():
    inst = Instance(distributions=points(1, 1, 1, 1, 1), num_agents=5)
    profile = StrategyProfile.uniform(SingleThresholdStrategy(T=0.0), 5)

    with pytest.raises(TooManyAgentsError):
        best_response_value(inst, profile, 0)


# export

def test_threshold_table_csv(one_then_ten):
    rows = list(csv.DictReader(io.StringIO(threshold_table_csv(solve_k_select(one_then_ten)))))

    assert len(rows) == 9
    assert rows[0] == {"t": "1", "slots_left": "0", "V": "0.0", "T": ""}
    assert rows[1]["T"] == "10.0"
    assert all(row["T"] == "" for row in rows if row["t"] == "3")


def test_spe_matches_k_select_on_every_realization(ranked_gamble):
    table = solve_k_select(ranked_gamble)
    profile = spe_profile(ranked_gamble, table)

    for realization in enumerate_realizations(ranked_gamble):
        assert spe_accepted(ranked_gamble, profile, realization.values) == k_select_accepted(table, realization.values)
