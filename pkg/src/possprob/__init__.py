"""Finite possibility/probability workbench.

Exact-rational probability spaces on finite sigma-fields, all-or-nothing
possibility functions, the correspondence between the two, and a
repeated-trials (multinomial) module, driven by a small spec language.
"""

from possprob.events import (
    EnumerationCapError,
    OutcomeSpace,
    SigmaField,
    UnknownOutcomeError,
    generate_field,
)
from possprob.measure import (
    AxiomViolationError,
    ProbabilityMeasure,
    SignificanceClass,
    classify,
    condition,
    is_reduction,
    prob,
    theorem1_oracle,
    validate_measure,
)
from possprob.possibility import (
    ModalClass,
    PossibilitySpace,
    classify_modal,
    conditional_possibility,
    hacking_mismatch,
    possibility,
)
from possprob.correspondence import (
    bucket_decomposition,
    check_correspondence,
    desideratum1_demo,
    refine_to_correspondence,
    theorem3_oracle,
)

__all__ = [
    "AxiomViolationError",
    "EnumerationCapError",
    "ModalClass",
    "OutcomeSpace",
    "PossibilitySpace",
    "ProbabilityMeasure",
    "SigmaField",
    "SignificanceClass",
    "UnknownOutcomeError",
    "bucket_decomposition",
    "check_correspondence",
    "classify",
    "classify_modal",
    "condition",
    "conditional_possibility",
    "desideratum1_demo",
    "generate_field",
    "hacking_mismatch",
    "is_reduction",
    "possibility",
    "prob",
    "refine_to_correspondence",
    "theorem1_oracle",
    "theorem3_oracle",
    "validate_measure",
]
