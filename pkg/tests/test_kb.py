import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pconsist.errors import ContractViolation, ParseError, UnknownAtomError
from pconsist.formula import TRUE, Atom, Implies, Not, evaluate, parse_formula
from pconsist.kb import (
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

from oracles import assignments, tolerated
from strategies import NAMES, conditionals

b, f, p = Atom("b"), Atom("f"), Atom("p")


def test_parse_conditional():
    x = parse_conditional("p & b -> ~f", 4)
    assert x == Conditional(4, parse_formula("p & b"), Not(f), Modality.DEFEASIBLE)
    assert parse_conditional("b => f").modality is Modality.STRICT


@pytest.mark.parametrize("text", ["b f", "b -> f -> g", "(b -> f)", "b -> ", "b > f", "b -> f => g"])
def test_parse_conditional_errors(text):
    with pytest.raises(ParseError):
        parse_conditional(text)


@given(conditionals(NAMES[:4], max_leaves=6))
def test_conditional_text_round_trip(x):
    assert parse_conditional(x.text(), x.id) == x


def test_kb_file_format():
    kb = KnowledgeBase.from_text("# birds\n\nb => f   # all birds fly\np -> b\n  \np -> ~f\n")
    assert kb.ids == (1, 2, 3)
    assert [x.text() for x in kb] == ["b => f", "p -> b", "p -> ~f"]
    assert [x.id for x in kb.strict] == [1]
    assert [x.id for x in kb.defeasible] == [2, 3]
    assert kb.universe == {"b", "f", "p"}


def test_kb_file_error_reports_line():
    with pytest.raises(ParseError, match="line 3") as info:
        KnowledgeBase.from_text("a -> b\n# c\na -> \n")
    assert info.value.position == len("a -> b\n# c\na -> ")


def test_kb_rejects_duplicate_ids():
    x = parse_conditional("a -> b", 1)
    with pytest.raises(ContractViolation):
        KnowledgeBase((x, x))


def test_kb_add_assigns_fresh_id():
    kb = KnowledgeBase.of("a -> b", "b => c")
    bigger, added = kb.add(parse_conditional("c -> a"))
    assert added.id == 3 and bigger.ids == (1, 2, 3)
    assert kb.ids == (1, 2)


def test_kb_round_trips_through_text(tmp_path):
    kb = KnowledgeBase.of("n -> r", "n => q", "q -> p", "r => ~p", "p -> c")
    path = tmp_path / "x.kb"
    path.write_text(kb.to_text(), encoding="utf-8")
    assert KnowledgeBase.load(path) == kb


def test_material_counterpart():
    assert material_counterpart(parse_conditional("p -> b")) == Implies(p, b)
    assert material_counterpart(parse_conditional("b => f")) == Implies(b, f)
    m = material_counterpart(parse_conditional("true -> a"))
    assert m == Implies(TRUE, Atom("a"))
    for t in assignments("a"):
        assert evaluate(m, t) == t["a"]


def test_negate():
    assert negate(parse_conditional("p -> f")).consequent == Not(f)
    assert negate(parse_conditional("q => p")).modality is Modality.STRICT
    x = parse_conditional("a | b -> c & a")
    twice = negate(negate(x))
    assert twice.consequent == Not(Not(x.consequent))
    for t in assignments("abc"):
        assert evaluate(twice.consequent, t) == evaluate(x.consequent, t)


def test_verifies_and_falsifies():
    x = parse_conditional("b -> f")
    assert verifies({"b": 1, "f": 1}, x) and not falsifies({"b": 1, "f": 1}, x)
    assert falsifies({"b": 1, "f": 0}, x) and not verifies({"b": 1, "f": 0}, x)
    for value in (0, 1):
        t = {"b": 0, "f": value}
        assert not verifies(t, x) and not falsifies(t, x)
    with pytest.raises(UnknownAtomError):
        verifies({"b": 1}, x)


@given(conditionals(NAMES[:3]))
def test_never_both_verified_and_falsified(x):
    for t in assignments(NAMES[:3]):
        assert not (verifies(t, x) and falsifies(t, x))


def test_tolerance_penguin_examples():
    t = is_tolerated(parse_conditional("b -> f"), [parse_conditional("p -> b"), parse_conditional("p -> ~f")])
    assert t == {"b": 1, "f": 1, "p": 0}
    rest = [parse_conditional("b => f"), parse_conditional("p -> ~f")]
    assert is_tolerated(parse_conditional("p -> b"), rest) is None


def test_tolerated_by_empty_set():
    assert is_tolerated(parse_conditional("a -> b"), []) == {"a": 1, "b": 1}
    assert is_tolerated(parse_conditional("a -> ~a"), []) is None


def test_witness_extended_over_universe():
    t = is_tolerated(parse_conditional("a -> b"), [], universe=["z", "a"])
    assert t == {"a": 1, "b": 1, "z": 0}


@settings(max_examples=200)
@given(conditionals(), st.lists(conditionals(), max_size=4))
def test_tolerance_matches_enumeration_and_witness_is_valid(x, rest):
    t = is_tolerated(x, rest)
    assert (t is None) == (tolerated(x, rest) is None)
    if t is not None:
        assert verifies(t, x)
        assert not any(falsifies(t, y) for y in rest)


@settings(max_examples=200)
@given(conditionals(), st.lists(conditionals(), max_size=4), st.data())
def test_tolerance_is_downward_monotone(x, rest, data):
    if is_tolerated(x, rest) is None:
        return
    keep = data.draw(st.lists(st.booleans(), min_size=len(rest), max_size=len(rest)))
    assert is_tolerated(x, [y for y, k in zip(rest, keep) if k]) is not None
