"""
Use cases package.

Application services built on the domain: the reduction engine and the
seeded instance generators.
"""

from .generators import GeneratedInstance, generate_instance
from .reduction import (
    MainBoundReport,
    ReductionLedger,
    Verdict,
    cylinder_equivalence_check,
    reducibility_measure,
    reduction_schedule,
    verify_main_bound,
    verify_step_bound,
)

__all__ = [
    "GeneratedInstance",
    "generate_instance",
    "MainBoundReport",
    "ReductionLedger",
    "Verdict",
    "cylinder_equivalence_check",
    "reducibility_measure",
    "reduction_schedule",
    "verify_main_bound",
    "verify_step_bound",
]
