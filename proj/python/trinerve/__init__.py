from ._trinerve import (
    BudgetError,
    InputError,
    SimplicialSet,
    StructuralError,
    VerificationError,
    budget,
    geometric_nerve_sigma2,
    homology,
    k_complex,
    nerve_cyclic,
    nerve_ordinal,
    postnikov_report,
    set_budget,
)

__all__ = [
    "BudgetError",
    "InputError",
    "SimplicialSet",
    "StructuralError",
    "VerificationError",
    "budget",
    "geometric_nerve_sigma2",
    "homology",
    "k_complex",
    "nerve_cyclic",
    "nerve_ordinal",
    "postnikov_report",
    "set_budget",
]
