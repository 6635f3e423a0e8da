from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pconsist.consistency import check_consistency
from pconsist.engine import (
    Entailment,
    SubstantiveClass,
    classify_substantive,
    p_entails,
    strict_entailment_support,
    strict_p_entails,
)
from pconsist.errors import BoundExceeded, ContractViolation
from pconsist.kb import Conditional, KnowledgeBase, Modality, negate, parse_conditional

from strategies import NAMES, conditionals, knowledge_bases

KBS = Path(__file__).resolve().parent.parent / "kbs"
q = parse_conditional


def load(name):
    return KnowledgeBase.load(KBS / name)


def test_classify_penguin_examples():
    kb = load("modified1.kb")
    assert classify_substantive(kb, q("p & b -> f")) is SubstantiveClass.SUBSTANTIVELY_INCONSISTENT
    assert classify_substantive(kb, q("p -> ~f")) is SubstantiveClass.CONSISTENT_WITH


def test_classify_impossible_antecedent():
    kb = load("never_a.kb")
    assert classify_substantive(kb, q("a -> b")) is SubstantiveClass.NON_SUBSTANTIVE


def test_classify_requires_consistent_kb():
    with pytest.raises(ContractViolation):
        classify_substantive(load("example1.kb"), q("a -> b"))


def test_penguin_birds_do_not_fly():
    verdict = p_entails(load("modified1.kb"), q("p & b -> ~f"))
    assert verdict.kind is Entailment.ENTAILED
    assert not verdict.evidence["negation"]
    assert verdict.evidence["antecedent"]


def test_penguin_birds_mirror_is_negation_entailed():
    assert p_entails(load("modified1.kb"), q("p & b -> f")).kind is Entailment.NEGATION_ENTAILED


def test_nixon_ambiguous():
    kb = load("nixon2.kb")
    assert check_consistency(kb)
    assert p_entails(kb, q("n -> p")).kind is Entailment.AMBIGUOUS
    assert p_entails(kb, q("n -> ~p")).kind is Entailment.AMBIGUOUS


def test_nixon_mixed_entails_non_pacifist():
    kb = load("nixon3.kb")
    assert check_consistency(kb)
    assert p_entails(kb, q("n -> ~p")).kind is Entailment.ENTAILED


def test_impossible_antecedent_verdict():
    assert p_entails(load("never_a.kb"), q("a -> b")).kind is Entailment.ANTECEDENT_IMPOSSIBLE


def test_no_chaining():
    # a -> b, b -> c does not give a -> c
    kb = KnowledgeBase.of("a -> b", "b -> c")
    assert p_entails(kb, q("a -> c")).kind is Entailment.AMBIGUOUS


def test_strict_separation_from_material_implication():
    assert strict_p_entails(load("never_a.kb"), q("a => b")) is False


def test_strict_entailment_of_member():
    kb = KnowledgeBase.of("q => p")
    assert strict_entailment_support(kb, q("q => p")) == {1}


def test_strict_with_empty_strict_part():
    kb = KnowledgeBase.of("a -> b")
    assert strict_p_entails(kb, q("a => b")) is False


def test_strict_ignores_defeasible_rules():
    # soft rules never yield hard conclusions
    kb = KnowledgeBase.of("a -> b", "b => c")
    assert strict_p_entails(kb, q("a => b")) is False
    assert strict_p_entails(kb, q("b => c")) is True


def test_strict_requires_strict_query_and_bound():
    with pytest.raises(ContractViolation):
        strict_p_entails(KnowledgeBase.of("a => b"), q("a -> b"))
    big = KnowledgeBase.of(*[f"a => a"] * 3)
    with pytest.raises(BoundExceeded):
        strict_p_entails(big, q("a => a"), limit=2)


def _renumbered(kb, order):
    return KnowledgeBase(
        tuple(kb.sentences[j].with_id(i) for i, j in enumerate(order, start=1))
    )


@settings(max_examples=150, deadline=None)
@given(knowledge_bases(max_size=3), conditionals(modality=Modality.DEFEASIBLE))
def test_duality_and_symmetry(kb, query):
    assume(check_consistency(kb))
    # raises if both the query and its negation are substantively inconsistent
    verdict = p_entails(kb, query)
    pos = classify_substantive(kb, query)
    neg = classify_substantive(kb, negate(query))
    assert not (
        pos is SubstantiveClass.SUBSTANTIVELY_INCONSISTENT
        and neg is SubstantiveClass.SUBSTANTIVELY_INCONSISTENT
    )
    assert (pos is SubstantiveClass.NON_SUBSTANTIVE) == (neg is SubstantiveClass.NON_SUBSTANTIVE)
    if pos is SubstantiveClass.NON_SUBSTANTIVE:
        assert verdict.kind is Entailment.ANTECEDENT_IMPOSSIBLE


@settings(max_examples=150, deadline=None)
@given(knowledge_bases(max_size=3), conditionals(modality=Modality.STRICT))
def test_strict_entailment_subsumes_p_entailment(kb, query):
    assume(check_consistency(kb))
    if not strict_p_entails(kb, query):
        return
    soft = Conditional(0, query.antecedent, query.consequent, Modality.DEFEASIBLE)
    verdict = p_entails(kb, soft)
    if verdict.evidence.get("antecedent", True):
        assert verdict.kind is Entailment.ENTAILED
    else:
        assert verdict.kind is Entailment.ANTECEDENT_IMPOSSIBLE


@settings(max_examples=100, deadline=None)
@given(knowledge_bases(max_size=4), conditionals(modality=Modality.DEFEASIBLE), st.randoms())
def test_verdicts_invariant_under_reordering(kb, query, rnd):
    order = list(range(len(kb)))
    rnd.shuffle(order)
    shuffled = _renumbered(kb, order)
    assert bool(check_consistency(kb)) == bool(check_consistency(shuffled))
    if check_consistency(kb):
        assert p_entails(kb, query).kind is p_entails(shuffled, query).kind
        strict_query = Conditional(0, query.antecedent, query.consequent, Modality.STRICT)
        assert strict_p_entails(kb, strict_query) == strict_p_entails(shuffled, strict_query)
