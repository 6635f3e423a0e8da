"""Propositional formulas: syntax tree, parser, printer, evaluation and clause form.

Grammar (single line, ASCII)::

    formula := impl
    impl    := or ( ">" impl )?
    or      := and ( "|" and )*
    and     := not ( "&" not )*
    not     := ("~" | "!") not | atom | "(" formula ")" | "true" | "false"

``&`` and ``|`` associate to the left, ``>`` (material implication) to the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple, Union

from .errors import ParseError, UnknownAtomError

__all__ = [
    "Atom",
    "Not",
    "Or",
    "And",
    "Implies",
    "ConstTrue",
    "ConstFalse",
    "TRUE",
    "FALSE",
    "Formula",
    "TruthAssignment",
    "Literal",
    "ClauseSet",
    "atoms",
    "conjoin",
    "disjoin",
    "evaluate",
    "parse_formula",
    "to_text",
    "to_clauses",
    "is_horn",
    "all_assignments",
]

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"true", "false"})


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not IDENTIFIER.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    """Material implication, ``left > right``."""

    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class ConstTrue:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class ConstFalse:
    def __str__(self) -> str:
        return "false"


Formula = Union[Atom, Not, Or, And, Implies, ConstTrue, ConstFalse]
TruthAssignment = Mapping[str, int]

TRUE = ConstTrue()
FALSE = ConstFalse()


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (Or, And, Implies)):
            stack.append(node.right)
            stack.append(node.left)


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(node.name for node in _walk(f) if isinstance(node, Atom))


def conjoin(formulas) -> Formula:
    """Left-nested conjunction of ``formulas``; ``TRUE`` when empty."""
    result = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TRUE if result is None else result


def disjoin(formulas) -> Formula:
    """Left-nested disjunction of ``formulas``; ``FALSE`` when empty."""
    result = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return FALSE if result is None else result


def evaluate(f: Formula, t: TruthAssignment) -> int:
    """Truth value (0 or 1) of ``f`` under the assignment ``t``."""
    if isinstance(f, Atom):
        try:
            return 1 if t[f.name] else 0
        except KeyError:
            raise UnknownAtomError(f.name) from None
    if isinstance(f, Not):
        return 1 - evaluate(f.operand, t)
    if isinstance(f, Or):
        return evaluate(f.left, t) | evaluate(f.right, t)
    # the remaining connectives are abbreviations over Not/Or
    if isinstance(f, And):
        return 1 - ((1 - evaluate(f.left, t)) | (1 - evaluate(f.right, t)))
    if isinstance(f, Implies):
        return (1 - evaluate(f.left, t)) | evaluate(f.right, t)
    if isinstance(f, ConstTrue):
        return 1
    if isinstance(f, ConstFalse):
        return 0
    raise TypeError(f"not a formula: {f!r}")


def all_assignments(universe) -> Iterator[dict[str, int]]:
    """Every truth assignment over ``universe`` (sorted names, binary counting)."""
    names = sorted(universe)
    for bits in range(1 << len(names)):
        yield {name: (bits >> i) & 1 for i, name in enumerate(names)}


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4}
_SYMBOL = {Implies: ">", Or: "|", And: "&"}


def _prec(f: Formula) -> int:
    return _PRECEDENCE.get(type(f), 5)


def to_text(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, ConstTrue):
        return "true"
    if isinstance(f, ConstFalse):
        return "false"
    if isinstance(f, Not):
        inner = to_text(f.operand)
        return "~" + (f"({inner})" if _prec(f.operand) < 4 else inner)
    p = _prec(f)
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, Implies):
        wrap_left, wrap_right = _prec(f.left) <= p, _prec(f.right) < p
    else:
        wrap_left, wrap_right = _prec(f.left) < p, _prec(f.right) <= p
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class Token(NamedTuple):
    kind: str
    value: str
    position: int


_TOKEN = re.compile(
    r"\s*(?:(?P<DARROW>->)|(?P<SARROW>=>)|(?P<IDENT>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<NOT>[~!])|(?P<AND>&)|(?P<OR>\|)|(?P<IMPL>>)|(?P<LPAREN>\()"
    r"|(?P<RPAREN>\))|(?P<BAD>\S))"
)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; the list always ends with an ``END`` token."""
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            break
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "BAD":
            raise ParseError(f"unexpected character {value!r}", start, text)
        if kind == "IDENT" and value in KEYWORDS:
            kind = value.upper()
        tokens.append(Token(kind, value, start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class FormulaParser:
    """Recursive-descent parser over a token list, one instance per parse."""

    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.text = text
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str) -> ParseError:
        tok = self.current
        where = "end of input" if tok.kind == "END" else repr(tok.value)
        return ParseError(f"{message}, found {where}", tok.position, self.text)

    def advance(self) -> Token:
        tok = self.current
        self.index += 1
        return tok

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.current.kind == "IMPL":
            self.advance()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.current.kind == "OR":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.current.kind == "AND":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.current
        if tok.kind == "NOT":
            self.advance()
            return Not(self.unary())
        if tok.kind == "IDENT":
            self.advance()
            return Atom(tok.value)
        if tok.kind == "TRUE":
            self.advance()
            return TRUE
        if tok.kind == "FALSE":
            self.advance()
            return FALSE
        if tok.kind == "LPAREN":
            self.advance()
            f = self.formula()
            if self.current.kind != "RPAREN":
                raise self.error("expected ')'")
            self.advance()
            return f
        raise self.error("expected a formula")

    def expect_end(self, *allowed: str) -> Token:
        if self.current.kind not in ("END",) + allowed:
            raise self.error("unexpected token")
        return self.current


def parse_formula(text: str) -> Formula:
    """Parse a single formula; raises :class:`ParseError` on malformed input."""
    parser = FormulaParser(tokenize(text), text)
    f = parser.formula()
    parser.expect_end()
    return f


# ---------------------------------------------------------------------------
# Clause form
# ---------------------------------------------------------------------------


class Literal(NamedTuple):
    var: str
    positive: bool

    def __str__(self) -> str:
        return self.var if self.positive else "~" + self.var


Clause = tuple  # tuple[Literal, ...]


@dataclass(frozen=True)
class ClauseSet:
    """A CNF clause list.

    ``variables`` is the source formula's universe; ``aux`` maps each auxiliary
    variable introduced by the definitional transformation to the subformula
    (over ``variables``) that it stands for.
    """

    clauses: tuple
    variables: frozenset = frozenset()
    aux: Mapping[str, Formula] = field(default_factory=dict)

    @property
    def universe(self) -> frozenset[str]:
        names = set(self.variables) | set(self.aux)
        for clause in self.clauses:
            names.update(lit.var for lit in clause)
        return frozenset(names)

    def literal_count(self) -> int:
        return sum(len(c) for c in self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def is_horn(cs: ClauseSet) -> bool:
    return all(sum(lit.positive for lit in clause) <= 1 for clause in cs.clauses)


# Negation normal form with n-ary nodes and constants folded away:
#   ("lit", name, polarity) | ("and", children) | ("or", children) | True | False


def _nnf(f: Formula, positive: bool = True):
    if isinstance(f, Atom):
        return ("lit", f.name, positive)
    if isinstance(f, ConstTrue):
        return positive
    if isinstance(f, ConstFalse):
        return not positive
    if isinstance(f, Not):
        return _nnf(f.operand, not positive)
    if isinstance(f, Implies):
        parts = [(f.left, not positive), (f.right, positive)]
        is_or = positive
    elif isinstance(f, Or):
        parts = [(f.left, positive), (f.right, positive)]
        is_or = positive
    elif isinstance(f, And):
        parts = [(f.left, positive), (f.right, positive)]
        is_or = not positive
    else:
        raise TypeError(f"not a formula: {f!r}")

    kind = "or" if is_or else "and"
    absorbing = is_or  # True absorbs a disjunction, False a conjunction
    children = []
    # flatten same-kind chains iteratively so long conjunctions stay shallow
    stack = list(reversed(parts))
    while stack:
        g, pol = stack.pop()
        if isinstance(g, Not):
            stack.append((g.operand, not pol))
            continue
        same = (
            (isinstance(g, Or) and pol == is_or)
            or (isinstance(g, And) and pol != is_or)
        )
        if same:
            stack.append((g.right, pol))
            stack.append((g.left, pol))
            continue
        if isinstance(g, Implies) and pol == is_or:
            stack.append((g.right, pol))
            stack.append((g.left, not pol))
            continue
        child = _nnf(g, pol)
        if child is absorbing:
            return absorbing
        if child is (not absorbing):
            continue
        if isinstance(child, tuple) and child[0] == kind:
            children.extend(child[1])
        else:
            children.append(child)
    if not children:
        return not absorbing
    if len(children) == 1:
        return children[0]
    return (kind, tuple(children))


def _nnf_to_formula(node) -> Formula:
    if node is True:
        return TRUE
    if node is False:
        return FALSE
    if node[0] == "lit":
        return Atom(node[1]) if node[2] else Not(Atom(node[1]))
    parts = [_nnf_to_formula(c) for c in node[1]]
    return conjoin(parts) if node[0] == "and" else disjoin(parts)


def _clean(literals) -> tuple | None:
    """Deduplicate a clause; ``None`` when it is a tautology."""
    seen = {}
    for var, pol in literals:
        if seen.get(var, pol) != pol:
            return None
        seen[var] = pol
    return tuple(Literal(v, p) for v, p in seen.items())


@lru_cache(maxsize=8192)
def _template(f: Formula):
    """Clause template for one top-level conjunct.

    Auxiliary variables are numbered locally (ints) and renamed on use. The
    encoding is one-sided: an auxiliary ``v`` for subformula ``g`` only gets
    the clauses for ``v -> g``, which keeps every projection of a model a model
    of ``f`` and preserves Horn-ness of clause-shaped conjuncts.
    """
    clauses = []
    definitions = []

    def require(node, guard):
        if node is True:
            return
        if node is False:
            clauses.append(guard)
            return
        kind = node[0]
        if kind == "lit":
            clauses.append(guard + ((node[1], node[2]),))
        elif kind == "and":
            for child in node[1]:
                require(child, guard)
        else:
            lits = list(guard)
            for child in node[1]:
                if child[0] == "lit":
                    lits.append((child[1], child[2]))
                else:
                    aux = len(definitions)
                    definitions.append(child)
                    lits.append((aux, True))
                    require(child, ((aux, False),))
            clauses.append(tuple(lits))

    require(_nnf(f), ())
    # fresh auxiliaries cannot introduce duplicates or tautologies, so clean once here
    cleaned = tuple(c for c in map(_clean, clauses) if c is not None)
    return cleaned, tuple(_nnf_to_formula(d) for d in definitions), atoms(f)


def _conjuncts(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            yield g


def to_clauses(f: Formula) -> ClauseSet:
    """Equisatisfiable clause set for ``f`` via fresh auxiliary variables.

    Auxiliary names start with an underscore so they never collide with atoms.
    """
    clauses = []
    aux: dict[str, Formula] = {}
    variables: set[str] = set()
    for conjunct in _conjuncts(f):
        template, definitions, names_used = _template(conjunct)
        variables |= names_used
        if not definitions:
            clauses.extend(template)
            continue
        names = [f"_x{len(aux) + i}" for i in range(len(definitions))]
        aux.update(zip(names, definitions))
        for clause in template:
            clauses.append(
                tuple(
                    Literal(names[v], pol) if isinstance(v, int) else Literal(v, pol)
                    for v, pol in clause
                )
            )
    return ClauseSet(tuple(clauses), frozenset(variables), aux)
