from ._core import (
    CriterionResult,
    ScissorsError,
    ccs,
    classical,
    criteria_for_level,
    dehn_complex,
    homology,
    run_criterion,
)

__all__ = [
    "CriterionResult",
    "ScissorsError",
    "ccs",
    "classical",
    "criteria_for_level",
    "dehn_complex",
    "homology",
    "run_criterion",
]
