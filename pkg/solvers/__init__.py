"""
Solvers
k-select dynamic thresholds, SPE, worst-case certificates and best responses
"""
from solvers.best_response import best_response_value, verify_nash
from solvers.export import (
    certificates_csv,
    certificates_json,
    nash_report_csv,
    nash_report_json,
    threshold_table_csv,
    threshold_table_json,
)
from solvers.k_select import check_concavity, k_select_accepted, solve_k_select
from solvers.models import (
    AdversaryDecision,
    CorrespondenceReport,
    NashCheck,
    NashReport,
    ThresholdTable,
    WorstCaseCertificate,
)
from solvers.spe import check_correspondence, spe_accepted, spe_profile
from solvers.worst_case import worst_case_utility_random, worst_case_utility_ranked

__all__ = [
    'AdversaryDecision',
    'CorrespondenceReport',
    'NashCheck',
    'NashReport',
    'ThresholdTable',
    'WorstCaseCertificate',
    'best_response_value',
    'certificates_csv',
    'certificates_json',
    'check_concavity',
    'check_correspondence',
    'k_select_accepted',
    'nash_report_csv',
    'nash_report_json',
    'solve_k_select',
    'spe_accepted',
    'spe_profile',
    'threshold_table_csv',
    'threshold_table_json',
    'verify_nash',
    'worst_case_utility_random',
    'worst_case_utility_ranked',
]
