"""
Catalog module: self-checking worked examples and the prime profile.
"""

from .base import BaseScenario, Check, ScenarioInfo, ScenarioReport
from .primes import divisor_count, prime_sieve, primes_profile
from .scenarios import (
    SCENARIOS,
    list_scenarios,
    run_all,
    run_scenario,
    scenario_to_dict,
    summarize,
    trilinear_sweep
)

__all__ = [
    'BaseScenario',
    'Check',
    'ScenarioInfo',
    'ScenarioReport',
    'divisor_count',
    'prime_sieve',
    'primes_profile',
    'SCENARIOS',
    'list_scenarios',
    'run_all',
    'run_scenario',
    'scenario_to_dict',
    'summarize',
    'trilinear_sweep'
]
