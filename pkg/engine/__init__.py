"""
Engine
Plays the game under a strategy profile, exactly or by simulation
"""
from engine.exact import expected_utilities_exact, outcome_branches
from engine.export import csv_text, finite_json, game_report_csv, game_report_json, json_text
from engine.models import REPORT_SCHEMA_VERSION, Assignment, GameOutcome, GameReport
from engine.montecarlo import expected_utilities_mc
from engine.play import active_agents, full_mask, play_once, selectors_at

__all__ = [
    'Assignment',
    'GameOutcome',
    'GameReport',
    'REPORT_SCHEMA_VERSION',
    'active_agents',
    'csv_text',
    'expected_utilities_exact',
    'expected_utilities_mc',
    'finite_json',
    'full_mask',
    'game_report_csv',
    'game_report_json',
    'json_text',
    'outcome_branches',
    'play_once',
    'selectors_at',
]
