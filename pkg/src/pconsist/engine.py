"""Entailment on top of the consistency test."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .consistency import check_consistency
from .errors import BoundExceeded, ContractViolation
from .formula import TRUE
from .kb import Conditional, KnowledgeBase, Modality, is_tolerated, negate
from .sat import SatSession

__all__ = [
    "SubstantiveClass",
    "Entailment",
    "EntailmentVerdict",
    "classify_substantive",
    "p_entails",
    "strict_p_entails",
    "strict_entailment_support",
]

STRICT_SUBSET_LIMIT = 16


class SubstantiveClass(enum.Enum):
    CONSISTENT_WITH = "ConsistentWith"
    SUBSTANTIVELY_INCONSISTENT = "SubstantivelyInconsistent"
    NON_SUBSTANTIVE = "NonSubstantive"


class Entailment(enum.Enum):
    ENTAILED = "Entailed"
    NEGATION_ENTAILED = "NegationEntailed"
    AMBIGUOUS = "Ambiguous"
    ANTECEDENT_IMPOSSIBLE = "AntecedentImpossible"


@dataclass(frozen=True)
class EntailmentVerdict:
    kind: Entailment
    evidence: dict = field(default_factory=dict)

    @property
    def entailed(self) -> bool:
        return self.kind is Entailment.ENTAILED

    def __str__(self) -> str:
        return self.kind.value


def _require_consistent(kb: KnowledgeBase, session: SatSession) -> None:
    if not check_consistency(kb, session):
        raise ContractViolation("the knowledge base is not p-consistent")


def _antecedent_possible(x: Conditional) -> Conditional:
    # "a -> true" holds in a model exactly when the model is proper for it,
    # i.e. when P(a) > 0; "true -> a" would instead demand that a be typical
    return Conditional(0, x.antecedent, TRUE, Modality.DEFEASIBLE)


def _classify(kb, x, session, antecedent_check=None):
    extended, _ = kb.add(x)
    with_x = check_consistency(extended, session)
    if with_x:
        return SubstantiveClass.CONSISTENT_WITH, with_x, antecedent_check
    if antecedent_check is None:
        antecedent_check = check_consistency(kb.add(_antecedent_possible(x))[0], session)
    if antecedent_check:
        return SubstantiveClass.SUBSTANTIVELY_INCONSISTENT, with_x, antecedent_check
    return SubstantiveClass.NON_SUBSTANTIVE, with_x, antecedent_check


def classify_substantive(
    kb: KnowledgeBase,
    x: Conditional,
    session: Optional[SatSession] = None,
) -> SubstantiveClass:
    """How adding ``x`` to the consistent ``kb`` behaves.

    ``SubstantivelyInconsistent`` when ``kb + x`` is inconsistent while
    ``kb + (antecedent of x -> true)`` is not; ``NonSubstantive`` when both
    are inconsistent (the antecedent cannot hold).
    """
    session = session or SatSession()
    _require_consistent(kb, session)
    return _classify(kb, x, session)[0]


def p_entails(
    kb: KnowledgeBase,
    query: Conditional,
    session: Optional[SatSession] = None,
) -> EntailmentVerdict:
    """Decide whether ``kb`` p-entails the defeasible ``query``.

    Entailed iff adding the query's negation is substantively inconsistent;
    ``NegationEntailed`` is the mirror case.
    """
    session = session or SatSession()
    _require_consistent(kb, session)
    neg_class, neg_verdict, antecedent = _classify(kb, negate(query), session)
    pos_class, pos_verdict, antecedent = _classify(kb, query, session, antecedent)
    evidence = {"negation": neg_verdict, "query": pos_verdict}
    if antecedent is not None:
        evidence["antecedent"] = antecedent

    neg_si = neg_class is SubstantiveClass.SUBSTANTIVELY_INCONSISTENT
    pos_si = pos_class is SubstantiveClass.SUBSTANTIVELY_INCONSISTENT
    if neg_si and pos_si:
        raise AssertionError(f"both {query} and its negation are substantively inconsistent")
    if SubstantiveClass.NON_SUBSTANTIVE in (neg_class, pos_class):
        kind = Entailment.ANTECEDENT_IMPOSSIBLE
    elif neg_si:
        kind = Entailment.ENTAILED
    elif pos_si:
        kind = Entailment.NEGATION_ENTAILED
    else:
        kind = Entailment.AMBIGUOUS
    return EntailmentVerdict(kind, evidence)


def strict_entailment_support(
    kb: KnowledgeBase,
    query: Conditional,
    limit: int = STRICT_SUBSET_LIMIT,
    session: Optional[SatSession] = None,
) -> Optional[frozenset]:
    """The ids of a strict subset witnessing that ``kb`` strictly p-entails ``query``.

    Looks for ``S'`` within the strict part such that ``S' + (a -> true)`` is
    consistent and ``a => ~c`` is not tolerated by ``S'`` (``a``, ``c`` the
    query's antecedent and consequent). Larger subsets are tried first.
    Returns ``None`` when no subset qualifies.
    """
    if not query.is_strict:
        raise ContractViolation("strict entailment needs a strict query")
    session = session or SatSession()
    _require_consistent(kb, session)
    strict = kb.strict
    if len(strict) > limit:
        raise BoundExceeded(f"{len(strict)} strict sentences exceeds subset limit {limit}")

    opposite = negate(query)
    # non-tolerance only gets harder on smaller sets
    if is_tolerated(opposite, strict, session) is not None:
        return None
    anchor = _antecedent_possible(query)
    for size in range(len(strict), -1, -1):
        for group in combinations(strict, size):
            if is_tolerated(opposite, group, session) is not None:
                continue
            candidate, _ = KnowledgeBase(group).add(anchor)
            if check_consistency(candidate, session):
                return frozenset(s.id for s in group)
    return None


def strict_p_entails(
    kb: KnowledgeBase,
    query: Conditional,
    limit: int = STRICT_SUBSET_LIMIT,
    session: Optional[SatSession] = None,
) -> bool:
    return strict_entailment_support(kb, query, limit, session) is not None
