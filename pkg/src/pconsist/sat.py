"""Satisfiability of clause sets: DPLL for the general case, linear Horn-SAT otherwise."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import ContractViolation
from .formula import ClauseSet, is_horn

__all__ = ["SatResult", "UNSAT", "SatSession", "solve_dpll", "solve_horn", "solve"]


@dataclass(frozen=True)
class SatResult:
    """Outcome of a satisfiability test; ``model`` is ``None`` when unsatisfiable."""

    model: Optional[dict[str, int]] = None

    @property
    def satisfiable(self) -> bool:
        return self.model is not None

    def __bool__(self) -> bool:
        return self.satisfiable

    def __repr__(self) -> str:
        if self.model is None:
            return "Unsatisfiable"
        return f"Satisfiable({self.model})"


UNSAT = SatResult(None)


def _index(cs: ClauseSet):
    names = sorted(cs.universe)
    number = {name: i + 1 for i, name in enumerate(names)}
    clauses = [
        [number[lit.var] if lit.positive else -number[lit.var] for lit in clause]
        for clause in cs.clauses
    ]
    return names, clauses


def _assign(clauses: list[list[int]], lit: int) -> Optional[list[list[int]]]:
    """Simplify ``clauses`` under ``lit``; ``None`` if an empty clause appears."""
    out = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            clause = [x for x in clause if x != -lit]
            if not clause:
                return None
        out.append(clause)
    return out


def _dpll(clauses: list[list[int]], trail: list[int]) -> Optional[list[int]]:
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        trail = trail + [unit]
        clauses = _assign(clauses, unit)
        if clauses is None:
            return None
    if not clauses:
        return trail

    counts: dict[int, int] = {}
    for clause in clauses:
        for lit in clause:
            counts[abs(lit)] = counts.get(abs(lit), 0) + 1
    var = min(counts, key=lambda v: (-counts[v], v))

    for lit in (var, -var):
        reduced = _assign(clauses, lit)
        if reduced is None:
            continue
        found = _dpll(reduced, trail + [lit])
        if found is not None:
            return found
    return None


def solve_dpll(cs: ClauseSet) -> SatResult:
    """Complete DPLL search with unit propagation.

    Branches on the variable occurring most often in the open clauses (ties to
    the alphabetically first name), positive polarity first. Variables left
    unassigned when every clause is satisfied are reported as 0.
    """
    names, clauses = _index(cs)
    if any(not c for c in clauses):
        return UNSAT
    trail = _dpll(clauses, [])
    if trail is None:
        return UNSAT
    model = dict.fromkeys(names, 0)
    for lit in trail:
        if lit > 0:
            model[names[lit - 1]] = 1
    return SatResult(model)


def solve_horn(cs: ClauseSet) -> SatResult:
    """Linear-time Horn satisfiability by forward chaining.

    Each clause keeps a count of body (negative) literals not yet known true;
    when the count reaches zero its head is forced, or the clause is violated
    if it has none. The model returned is the minimal one.
    """
    if not is_horn(cs):
        raise ContractViolation("solve_horn requires a Horn clause set")
    return _forward_chain(cs)


def _forward_chain(cs: ClauseSet) -> SatResult:
    heads: list[Optional[str]] = []
    remaining: list[int] = []
    watchers: dict[str, list[int]] = {}
    queue: deque[str] = deque()
    for i, clause in enumerate(cs.clauses):
        head = None
        body = 0
        for lit in clause:
            if lit.positive:
                head = lit.var
            else:
                body += 1
                watchers.setdefault(lit.var, []).append(i)
        heads.append(head)
        remaining.append(body)
        if body == 0:
            if head is None:
                return UNSAT
            queue.append(head)

    true: set[str] = set()
    while queue:
        var = queue.popleft()
        if var in true:
            continue
        true.add(var)
        for i in watchers.get(var, ()):
            remaining[i] -= 1
            if remaining[i] == 0:
                head = heads[i]
                if head is None:
                    return UNSAT
                if head not in true:
                    queue.append(head)

    return SatResult({name: int(name in true) for name in sorted(cs.universe)})


class SatSession:
    """Dispatches clause sets to a solver and tallies the calls made.

    The tallies are read-only from the outside; one session is meant to be
    owned by one caller (e.g. one consistency check).
    """

    def __init__(self):
        self._calls = 0
        self._horn_calls = 0

    @property
    def calls(self) -> int:
        return self._calls

    @property
    def horn_calls(self) -> int:
        return self._horn_calls

    @property
    def dpll_calls(self) -> int:
        return self._calls - self._horn_calls

    def solve(self, cs: ClauseSet) -> SatResult:
        self._calls += 1
        if is_horn(cs):
            self._horn_calls += 1
            return _forward_chain(cs)
        return solve_dpll(cs)

    def __repr__(self) -> str:
        return f"SatSession(calls={self.calls}, horn_calls={self.horn_calls})"


def solve(cs: ClauseSet, session: Optional[SatSession] = None) -> SatResult:
    """Solve ``cs`` through ``session`` (a throwaway one when omitted)."""
    return (session or SatSession()).solve(cs)
