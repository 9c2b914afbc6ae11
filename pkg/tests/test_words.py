import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nslen.config import Budget, Certification
from nslen.core.constructions import build, cyclic
from nslen.core.sylow import sylow_subgroup
from nslen.core.words import (
    evaluate,
    measure_exponent,
    parse_word,
    value_order_lcm,
    value_set,
    verbal_exponent,
    verbal_subgroup,
    word_builder,
)
from nslen.errors import ArityMismatch, PreconditionError, RepeatedVariable, WordSyntaxError
from nslen.perm import Permutation


def test_parse_commutator_syntax():
    w = parse_word("[[x1,x2],[x3,x4]]")
    assert w.weight == 4
    assert str(w) == "[[x1,x2],[x3,x4]]"
    assert parse_word(" [ x1 , x2 ] ") == parse_word("[x1,x2]")


def test_shorthands_match_the_builders():
    assert parse_word("d2") == word_builder("delta", 2)
    assert str(parse_word("d2")) == "[[x1,x2],[x3,x4]]"
    assert str(parse_word("g3")) == "[[x1,x2],x3]"
    assert parse_word("d0").weight == 1


@pytest.mark.parametrize("text", ["[x1,", "x1]", "[x1 x2]", "[y1,x2]", ""])
def test_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_repeated_variable():
    with pytest.raises(RepeatedVariable):
        parse_word("[x1,x1]")


def test_bad_builder_arguments():
    with pytest.raises(PreconditionError):
        word_builder("gamma", 0)
    with pytest.raises(PreconditionError):
        word_builder("delta", -1)


def test_evaluate_binds_variables_in_index_order():
    g = Permutation.parse("(0 1 2)", degree=4)
    h = Permutation.parse("(1 2 3)", degree=4)
    assert evaluate(parse_word("[x1,x2]"), [g, h]) == g.commutator(h)
    assert evaluate(parse_word("[x2,x1]"), [g, h]) == h.commutator(g)
    with pytest.raises(ArityMismatch):
        evaluate(parse_word("[x1,x2]"), [g])


def test_delta1_values_on_s3(s3):
    values = value_set(word_builder("delta", 1), s3)
    assert values.exact
    assert values.elements == frozenset({
        Permutation.identity(3),
        Permutation.parse("(0 1 2)", degree=3),
        Permutation.parse("(0 2 1)", degree=3),
    })
    assert value_order_lcm(values) == 3


def test_verbal_subgroups_of_s4(s4):
    assert verbal_subgroup(word_builder("delta", 2), s4).order() == 4
    assert verbal_subgroup(word_builder("gamma", 2), s4).order() == 12


def test_verbal_exponent_on_the_sylow_subgroup_of_c5_wr_c5(c5wrc5):
    P = sylow_subgroup(c5wrc5, 5).subgroup
    assert verbal_exponent(word_builder("delta", 0), P, 5) == 2
    m = measure_exponent(word_builder("delta", 1), P, 5)
    assert m.e == 1
    assert m.witness is not None and m.witness.order() == 5


def test_exponent_is_at_least_one_on_abelian_groups():
    m = measure_exponent(word_builder("delta", 1), cyclic(5), 5)
    assert (m.e, m.e_raw) == (1, 0)
    assert m.value_count == 1


def test_verbal_exponent_needs_a_p_group(s4):
    with pytest.raises(PreconditionError):
        verbal_exponent(word_builder("delta", 1), s4, 2)


def test_sampled_value_sets_are_flagged(a5wrc5):
    budget = Budget(enum_cap=1000, samples=200, seed=3)
    ledger = Certification()
    values = value_set(parse_word("[x1,x2]"), a5wrc5, budget, ledger)
    assert not values.exact
    assert not ledger.certified
    assert all(a5wrc5.contains(g) for g in list(values.elements)[:20])


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(4))), st.permutations(list(range(4))))
def test_gamma2_values_lie_in_the_verbal_subgroup(s4, x, y):
    A4 = verbal_subgroup(word_builder("gamma", 2), s4)
    assert A4.contains(evaluate(word_builder("gamma", 2), [Permutation(x), Permutation(y)]))


def _commutators(left, right):
    return frozenset(u.commutator(v) for u in left for v in right)


@pytest.mark.parametrize("expression", ["symmetric(3)", "symmetric(4)", "alternating(4)", "alternating(5)",
                                        "cyclic(5)", "dihedral(4)"])
def test_value_sets_match_brute_force(expression):
    G = build(expression)
    elements = G.elements()
    d1 = _commutators(elements, elements)
    assert value_set(word_builder("delta", 1), G).elements == d1
    assert value_set(word_builder("delta", 2), G).elements == _commutators(d1, d1)
    assert value_set(word_builder("gamma", 3), G).elements == _commutators(d1, elements)


@given(st.sampled_from(["delta", "gamma"]), st.integers(min_value=1, max_value=4))
def test_printed_words_parse_back(kind, k):
    w = word_builder(kind, k)
    assert parse_word(str(w)) == w
    assert parse_word(str(w)).weight == w.weight


@pytest.mark.parametrize("fixture", ["s4", "a5", "psl27"])
def test_exact_value_sets_are_closed_under_conjugation_and_inversion(fixture, request):
    G = request.getfixturevalue(fixture)
    values = value_set(word_builder("gamma", 2), G)
    assert values.exact
    for g in values.elements:
        assert g.inverse() in values.elements
        assert all(g.conjugate(h) in values.elements for h in G.generators)


def test_delta2_values_are_gamma2_values(s4, a5):
    for G in (s4, a5):
        delta2 = value_set(word_builder("delta", 2), G).elements
        assert delta2 <= value_set(word_builder("gamma", 2), G).elements
