"""Probability models over truth assignments, in exact rational arithmetic."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .consistency import Consistent
from .errors import ContractViolation, ImproperModelError
from .formula import And, conjoin, disjoin, evaluate
from .kb import Conditional, KnowledgeBase, Modality, material_counterpart

__all__ = [
    "ProbabilityModel",
    "conditional_probability",
    "is_proper",
    "build_witness_model",
    "quasi_conjunction",
    "uncertainty",
]

Rational = Union[Fraction, int, str]


@dataclass(frozen=True)
class ProbabilityModel:
    """A finite distribution over truth assignments of ``universe``.

    Assignments not listed have probability 0. Weights are exact and must sum
    to exactly 1.
    """

    points: tuple  # ((assignment dict, Fraction weight), ...)
    universe: tuple

    def __post_init__(self):
        universe = tuple(sorted(self.universe))
        points = tuple((dict(t), Fraction(w)) for t, w in self.points)
        for t, w in points:
            if w < 0:
                raise ContractViolation(f"negative weight {w}")
            if set(t) != set(universe):
                raise ContractViolation(f"assignment {t} is not total over {universe}")
        total = sum((w for _, w in points), Fraction(0))
        if total != 1:
            raise ContractViolation(f"weights sum to {total}, not 1")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "points", points)

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.points]

    def to_dict(self) -> dict:
        return {
            "universe": list(self.universe),
            "points": [
                {"assignment": {k: t[k] for k in self.universe}, "weight": _ratio(w)}
                for t, w in self.points
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ProbabilityModel":
        points = tuple(
            ({k: int(v) for k, v in p["assignment"].items()}, Fraction(p["weight"]))
            for p in data["points"]
        )
        return cls(points, tuple(data["universe"]))

    @classmethod
    def from_json(cls, text: str) -> "ProbabilityModel":
        return cls.from_dict(json.loads(text))


def _ratio(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def conditional_probability(m: ProbabilityModel, x: Conditional) -> Fraction:
    """P(consequent | antecedent): verified mass over verified-or-falsified mass."""
    both = And(x.antecedent, x.consequent)
    num = sum((w * evaluate(both, t) for t, w in m.points), Fraction(0))
    den = sum((w * evaluate(x.antecedent, t) for t, w in m.points), Fraction(0))
    if den == 0:
        raise ImproperModelError(f"antecedent of {x} has probability 0")
    return num / den


def is_proper(m: ProbabilityModel, kb: Union[KnowledgeBase, Sequence[Conditional]]) -> bool:
    return all(
        sum((w * evaluate(x.antecedent, t) for t, w in m.points), Fraction(0)) > 0
        for x in kb
    )


def uncertainty(m: ProbabilityModel, x: Conditional) -> Fraction:
    return 1 - conditional_probability(m, x)


def build_witness_model(cert: Consistent, epsilon: Rational) -> ProbabilityModel:
    """Geometric-weight model from a consistency certificate.

    The witnesses ``t1..tn`` (defeasible removals in order, then strict ones
    by id) get ``eps**(i-1) * (1-eps)`` for ``i < n`` and ``eps**(n-1)`` for
    the last. Every defeasible sentence then has probability at least
    ``1 - eps`` and every strict sentence probability 1. Repeated
    assignments are merged by adding their weights.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ContractViolation(f"epsilon must lie strictly between 0 and 1, got {eps}")
    sequence = [t for _, t in cert.removals]
    sequence += [cert.strict_witnesses[i] for i in sorted(cert.strict_witnesses)]
    if not sequence:
        return ProbabilityModel(((dict.fromkeys(cert.universe, 0), Fraction(1)),), cert.universe)

    n = len(sequence)
    merged: dict[tuple, Fraction] = {}
    for i, t in enumerate(sequence, start=1):
        weight = eps ** (i - 1) * (1 - eps) if i < n else eps ** (n - 1)
        key = tuple(sorted(t.items()))
        merged[key] = merged.get(key, Fraction(0)) + weight
    universe = tuple(sorted(sequence[0]))
    return ProbabilityModel(tuple((dict(k), w) for k, w in merged.items()), universe)


def quasi_conjunction(defaults: Sequence[Conditional]) -> Conditional:
    """The single default ``(a1 | ... | an) -> ((a1 > c1) & ... & (an > cn))``."""
    defaults = list(defaults)
    if not defaults:
        raise ContractViolation("quasi-conjunction of an empty set")
    if any(not d.is_defeasible for d in defaults):
        raise ContractViolation("quasi-conjunction is defined for defeasible sentences only")
    return Conditional(
        0,
        disjoin(d.antecedent for d in defaults),
        conjoin(material_counterpart(d) for d in defaults),
        Modality.DEFEASIBLE,
    )
