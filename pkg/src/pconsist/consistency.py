"""Deciding p-consistency of a knowledge base.

:func:`check_consistency` runs the two-phase tolerance procedure: repeatedly
strip a defeasible sentence tolerated by everything still active, then check
that each strict sentence is tolerated by the other strict ones. Either it
finishes with a certificate (the removal order and witnessing assignments) or
it stalls, and the stalled remainder is a non-confirmable subset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Union

from .errors import BoundExceeded, ContractViolation
from .kb import Conditional, KnowledgeBase, falsifies, is_tolerated, verifies
from .sat import SatSession

__all__ = [
    "Phase",
    "Consistent",
    "Inconsistent",
    "ConsistencyVerdict",
    "is_confirmable",
    "check_consistency",
    "brute_force_consistency",
    "minimize_core",
    "replay_certificate",
]

BRUTE_FORCE_LIMIT = 12


class Phase(enum.Enum):
    DEFEASIBLE_STALL = "DefeasibleStall"
    STRICT_STALL = "StrictStall"


@dataclass(frozen=True)
class Consistent:
    """Certificate of consistency.

    ``removals`` lists ``(id, witness)`` in the order the defeasible sentences
    were stripped; ``strict_witnesses`` maps every strict id to an assignment
    verifying it and falsifying no strict sentence.
    """

    removals: tuple = ()
    strict_witnesses: dict = field(default_factory=dict)
    universe: tuple = ()

    consistent = True

    @property
    def verdict(self) -> str:
        return "Consistent"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Inconsistent:
    """The sentences left when the procedure stalled, and which phase stalled."""

    core: frozenset
    phase: Phase

    consistent = False

    @property
    def verdict(self) -> str:
        return "Inconsistent"

    def __bool__(self) -> bool:
        return False


ConsistencyVerdict = Union[Consistent, Inconsistent]


def _tolerated_by_rest(x: Conditional, pool, session, universe=()):
    return is_tolerated(x, [y for y in pool if y.id != x.id], session, universe)


def is_confirmable(kb: KnowledgeBase, session: Optional[SatSession] = None) -> bool:
    """Whether some defeasible sentence is tolerated by the rest of ``kb``.

    With no defeasible sentences, every strict sentence must be tolerated by
    the other strict ones instead.
    """
    if len(kb) == 0:
        raise ContractViolation("is_confirmable needs a non-empty set")
    session = session or SatSession()
    if kb.defeasible:
        return any(
            _tolerated_by_rest(d, kb.sentences, session) is not None for d in kb.defeasible
        )
    return all(_tolerated_by_rest(s, kb.strict, session) is not None for s in kb.strict)


def check_consistency(
    kb: KnowledgeBase,
    session: Optional[SatSession] = None,
    reverse: bool = False,
) -> ConsistencyVerdict:
    """Decide p-consistency of ``kb``.

    Candidates are scanned in ascending id order (descending with
    ``reverse=True``); the verdict does not depend on the order. Uses at most
    ``|D|(|D|+1)/2 + |S|`` solver calls.
    """
    session = session or SatSession()
    universe = tuple(sorted(kb.universe))
    strict = kb.strict
    active = sorted(kb.defeasible, key=lambda x: x.id, reverse=reverse)

    removals = []
    while active:
        for d in active:
            witness = is_tolerated(
                d, strict + tuple(y for y in active if y.id != d.id), session, universe
            )
            if witness is not None:
                removals.append((d.id, witness))
                active.remove(d)
                break
        else:
            core = frozenset(x.id for x in active) | frozenset(s.id for s in strict)
            return Inconsistent(core, Phase.DEFEASIBLE_STALL)

    strict_witnesses = {}
    for s in sorted(strict, key=lambda x: x.id, reverse=reverse):
        witness = _tolerated_by_rest(s, strict, session, universe)
        if witness is None:
            return Inconsistent(frozenset(x.id for x in strict), Phase.STRICT_STALL)
        strict_witnesses[s.id] = witness
    return Consistent(tuple(removals), dict(sorted(strict_witnesses.items())), universe)


def replay_certificate(kb: KnowledgeBase, cert: Consistent) -> bool:
    """Re-check every witness in ``cert`` against the active set it was recorded for."""
    defeasible = {d.id: d for d in kb.defeasible}
    strict = kb.strict
    if sorted(i for i, _ in cert.removals) != sorted(defeasible):
        return False
    if sorted(cert.strict_witnesses) != sorted(s.id for s in strict):
        return False
    active = dict(defeasible)
    for i, t in cert.removals:
        x = active.pop(i)
        if not verifies(t, x):
            return False
        if any(falsifies(t, y) for y in list(active.values()) + list(strict)):
            return False
    for i, t in cert.strict_witnesses.items():
        if not verifies(t, kb[i]) or any(falsifies(t, y) for y in strict):
            return False
    return True


def brute_force_consistency(
    kb: KnowledgeBase,
    limit: int = BRUTE_FORCE_LIMIT,
    session: Optional[SatSession] = None,
) -> bool:
    """Consistency by checking that every non-empty subset is confirmable.

    Exponential in ``len(kb)``; refuses KBs larger than ``limit``.
    """
    if len(kb) > limit:
        raise BoundExceeded(f"{len(kb)} sentences exceeds brute-force limit {limit}")
    session = session or SatSession()
    sentences = kb.sentences
    for size in range(1, len(sentences) + 1):
        for group in combinations(sentences, size):
            if not is_confirmable(KnowledgeBase(group), session):
                return False
    return True


def minimize_core(
    kb: KnowledgeBase,
    core: Iterable[int],
    session: Optional[SatSession] = None,
) -> frozenset:
    """Shrink an inconsistent id set until dropping any one sentence restores consistency.

    Deletion-based: each id is tried once, in ascending order, and stays out
    if the remainder is still inconsistent. Since subsets of consistent sets
    are consistent, the result is inconsistency-minimal.
    """
    session = session or SatSession()
    kept = sorted(core)
    if check_consistency(kb.subset(kept), session):
        raise ContractViolation(f"core {kept} is consistent")
    for i in list(kept):
        if i not in kept:
            continue
        trial = [j for j in kept if j != i]
        verdict = check_consistency(kb.subset(trial), session)
        if not verdict:
            # the stalled remainder is itself inconsistent, so jump straight to it
            kept = sorted(verdict.core)
    return frozenset(kept)
