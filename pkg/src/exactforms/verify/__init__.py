"""Seeded identity verification harness."""
from .engine import CheckResult, Report, SelectionError, run_check, run_suite
from .generators import GenSpec, gen_form, gen_killing, gen_poly, gen_vector, trial_rng
from .registry import REGISTRY, IdentityCheck, select

__all__ = [
    "CheckResult", "GenSpec", "IdentityCheck", "REGISTRY", "Report", "SelectionError",
    "gen_form", "gen_killing", "gen_poly", "gen_vector", "run_check", "run_suite", "select",
    "trial_rng",
]
