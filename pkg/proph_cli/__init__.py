"""
Prophet Game CLI
Scenario runner, tight-instance reproduction and welfare sweeps
"""
from proph_cli.families import build_family_instance, prop4_instance, prop4_wait_profile, prop6_instance
from proph_cli.models import (
    FamilySpec,
    ReproduceReport,
    ScenarioConfig,
    ScenarioResult,
    WelfareSweepReport,
    WelfareSweepRow,
)
from proph_cli.reproduce import reproduce_prop4, reproduce_prop6
from proph_cli.scenario import certify_instance, load_scenario, resolve_profile, run_scenario
from proph_cli.welfare import fit_sqrt_decay, welfare_sweep

__all__ = [
    'FamilySpec',
    'ReproduceReport',
    'ScenarioConfig',
    'ScenarioResult',
    'WelfareSweepReport',
    'WelfareSweepRow',
    'build_family_instance',
    'certify_instance',
    'fit_sqrt_decay',
    'load_scenario',
    'prop4_instance',
    'prop4_wait_profile',
    'prop6_instance',
    'reproduce_prop4',
    'reproduce_prop6',
    'resolve_profile',
    'run_scenario',
    'welfare_sweep',
]
