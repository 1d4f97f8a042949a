"""
Bench Module

Scenario files, runs, sweeps and table-reproduction presets behind the
fedrdma-bench command.
"""
from .presets import PRESETS, run_preset
from .runner import find_max_and_best_chunk, run_scenario, run_scenarios
from .scenario import Scenario, load_scenarios, parse_scenarios


__all__ = [
    "PRESETS",
    "Scenario",
    "find_max_and_best_chunk",
    "load_scenarios",
    "parse_scenarios",
    "run_preset",
    "run_scenario",
    "run_scenarios",
]
