"""
Solver Export
CSV snapshots of threshold tables, certificates and Nash checks
"""
from typing import List

from engine.export import csv_text, json_text
from solvers.models import NashReport, ThresholdTable, WorstCaseCertificate


def threshold_table_csv(table: ThresholdTable) -> str:
    """Columns t, slots_left, V, T; T is blank at t = n+1 and slots_left = 0."""
    rows = []
    for t in range(1, table.num_rewards + 2):
        for slots in range(table.num_slots + 1):
            defined = t <= table.num_rewards and slots >= 1
            rows.append([
                t,
                slots,
                repr(table.value_at(t, slots)),
                repr(table.threshold_at(t, slots)) if defined else "",
            ])
    return csv_text(["t", "slots_left", "V", "T"], rows)


def threshold_table_json(table: ThresholdTable) -> str:
    return json_text(table.model_dump(mode="python"))


def certificates_csv(certificates: List[WorstCaseCertificate]) -> str:
    rows = [
        [
            cert.rule,
            cert.num_agents,
            "" if cert.agent_rank is None else cert.agent_rank,
            repr(cert.strategy_threshold),
            repr(cert.guarantee_claimed),
            repr(cert.worst_case_utility),
            cert.status,
            cert.adversary_policy_digest,
        ]
        for cert in certificates
    ]
    return csv_text(
        ["rule", "k", "rank", "threshold", "claim", "worst_case", "status", "policy_digest"], rows
    )


def certificates_json(certificates: List[WorstCaseCertificate]) -> str:
    return json_text({"certificates": [cert.model_dump(mode="python") for cert in certificates]})


def nash_report_csv(report: NashReport) -> str:
    rows = [
        [c.agent, repr(c.utility), repr(c.best_response_value), c.is_best_response]
        for c in report.checks
    ]
    return csv_text(["agent", "utility", "best_response", "is_best_response"], rows)


def nash_report_json(report: NashReport) -> str:
    return json_text(report.model_dump(mode="python"))
