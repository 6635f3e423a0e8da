"""Probabilistic (epsilon-semantics) consistency and entailment for conditional knowledge bases."""

from .consistency import (
    Consistent,
    Inconsistent,
    Phase,
    brute_force_consistency,
    check_consistency,
    is_confirmable,
    minimize_core,
    replay_certificate,
)
from .engine import (
    Entailment,
    EntailmentVerdict,
    SubstantiveClass,
    classify_substantive,
    p_entails,
    strict_entailment_support,
    strict_p_entails,
)
from .errors import (
    BoundExceeded,
    ContractViolation,
    ImproperModelError,
    ParseError,
    PConsistError,
    UnknownAtomError,
)
from .formula import evaluate, is_horn, parse_formula, to_clauses, to_text
from .kb import (
    Conditional,
    KnowledgeBase,
    Modality,
    falsifies,
    is_tolerated,
    material_counterpart,
    negate,
    parse_conditional,
    verifies,
)
from .sat import SatResult, SatSession, solve, solve_dpll, solve_horn
from .semantics import (
    ProbabilityModel,
    build_witness_model,
    conditional_probability,
    is_proper,
    quasi_conjunction,
    uncertainty,
)

__version__ = "0.1.0"
