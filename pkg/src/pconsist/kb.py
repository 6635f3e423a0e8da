"""Conditional sentences, knowledge bases and the tolerance test.

A knowledge base file holds one conditional per line::

    # all birds fly
    b => f
    p -> b
    p -> ~f

``->`` is a defeasible ("typically") conditional, ``=>`` a strict one. Ids are
assigned 1, 2, ... in order over the non-blank, non-comment lines.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .errors import ContractViolation, ParseError
from .formula import (
    And,
    Formula,
    FormulaParser,
    Implies,
    Not,
    TruthAssignment,
    atoms,
    conjoin,
    evaluate,
    to_clauses,
    to_text,
    tokenize,
)
from .sat import SatSession

__all__ = [
    "Modality",
    "Conditional",
    "KnowledgeBase",
    "parse_conditional",
    "material_counterpart",
    "negate",
    "verifies",
    "falsifies",
    "is_tolerated",
]


class Modality(enum.Enum):
    DEFEASIBLE = "->"
    STRICT = "=>"


_ARROWS = {"DARROW": Modality.DEFEASIBLE, "SARROW": Modality.STRICT}


@dataclass(frozen=True)
class Conditional:
    id: int
    antecedent: Formula
    consequent: Formula
    modality: Modality = Modality.DEFEASIBLE

    @property
    def is_strict(self) -> bool:
        return self.modality is Modality.STRICT

    @property
    def is_defeasible(self) -> bool:
        return self.modality is Modality.DEFEASIBLE

    def atoms(self) -> frozenset[str]:
        return atoms(self.antecedent) | atoms(self.consequent)

    def text(self) -> str:
        return f"{to_text(self.antecedent)} {self.modality.value} {to_text(self.consequent)}"

    def with_id(self, new_id: int) -> "Conditional":
        return Conditional(new_id, self.antecedent, self.consequent, self.modality)

    def __str__(self) -> str:
        return self.text()


def parse_conditional(text: str, id: int = 0) -> Conditional:
    """Parse ``<formula> -> <formula>`` or ``<formula> => <formula>``."""
    tokens = tokenize(text)
    parser = FormulaParser(tokens, text)
    antecedent = parser.formula()
    arrow = parser.current
    if arrow.kind not in _ARROWS:
        raise parser.error("expected '->' or '=>'")
    parser.advance()
    consequent = parser.formula()
    parser.expect_end()
    return Conditional(id, antecedent, consequent, _ARROWS[arrow.kind])


@dataclass(frozen=True)
class KnowledgeBase:
    """An ordered collection of conditionals with unique ids."""

    sentences: tuple[Conditional, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        ids = [x.id for x in self.sentences]
        if len(set(ids)) != len(ids):
            raise ContractViolation(f"duplicate sentence ids in {ids}")

    @classmethod
    def from_text(cls, text: str) -> "KnowledgeBase":
        sentences = []
        offset = 0
        for lineno, raw in enumerate(text.splitlines(keepends=True), start=1):
            line = raw.split("#", 1)[0]
            if line.strip():
                try:
                    sentences.append(parse_conditional(line.rstrip("\r\n"), len(sentences) + 1))
                except ParseError as exc:
                    raise ParseError(
                        f"line {lineno}: {exc.message}",
                        offset + exc.position,
                        text,
                    ) from None
            offset += len(raw)
        return cls(tuple(sentences))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "KnowledgeBase":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def of(cls, *lines: str) -> "KnowledgeBase":
        """Build a KB from conditional strings, numbering them from 1."""
        return cls(tuple(parse_conditional(s, i) for i, s in enumerate(lines, start=1)))

    def to_text(self) -> str:
        return "".join(x.text() + "\n" for x in self.sentences)

    @property
    def defeasible(self) -> tuple[Conditional, ...]:
        return tuple(x for x in self.sentences if x.is_defeasible)

    @property
    def strict(self) -> tuple[Conditional, ...]:
        return tuple(x for x in self.sentences if x.is_strict)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(x.id for x in self.sentences)

    @property
    def universe(self) -> frozenset[str]:
        names: set[str] = set()
        for x in self.sentences:
            names |= x.atoms()
        return frozenset(names)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __contains__(self, item) -> bool:
        return item in self.sentences

    def __getitem__(self, id: int) -> Conditional:
        for x in self.sentences:
            if x.id == id:
                return x
        raise KeyError(id)

    def subset(self, ids: Iterable[int]) -> "KnowledgeBase":
        keep = set(ids)
        missing = keep - set(self.ids)
        if missing:
            raise KeyError(sorted(missing))
        return KnowledgeBase(tuple(x for x in self.sentences if x.id in keep))

    def next_id(self) -> int:
        return max(self.ids, default=0) + 1

    def add(self, x: Conditional) -> tuple["KnowledgeBase", Conditional]:
        """Append ``x`` under a fresh id; returns the new KB and the stored sentence."""
        x = x.with_id(self.next_id())
        return KnowledgeBase(self.sentences + (x,)), x


def material_counterpart(x: Conditional) -> Formula:
    return Implies(x.antecedent, x.consequent)


def negate(x: Conditional, id: Optional[int] = None) -> Conditional:
    """Same antecedent and modality, negated consequent.

    The result gets ``id`` if given, else ``-x.id`` (ids are made unique again
    when the sentence is added to a KB).
    """
    return Conditional(-x.id if id is None else id, x.antecedent, Not(x.consequent), x.modality)


def verifies(t: TruthAssignment, x: Conditional) -> bool:
    return evaluate(x.antecedent, t) == 1 and evaluate(x.consequent, t) == 1


def falsifies(t: TruthAssignment, x: Conditional) -> bool:
    return evaluate(x.antecedent, t) == 1 and evaluate(x.consequent, t) == 0


def is_tolerated(
    x: Conditional,
    rest: Sequence[Conditional],
    session: Optional[SatSession] = None,
    universe: Iterable[str] = (),
) -> Optional[dict[str, int]]:
    """An assignment verifying ``x`` and falsifying nothing in ``rest``, or ``None``.

    The witness is total over the atoms of ``x``, ``rest`` and ``universe``;
    variables the solver leaves unconstrained are 0.
    """
    f = conjoin([And(x.antecedent, x.consequent)] + [material_counterpart(y) for y in rest])
    cs = to_clauses(f)
    result = (session or SatSession()).solve(cs)
    if not result:
        return None
    names = set(universe) | cs.variables
    return {name: result.model.get(name, 0) for name in sorted(names)}
