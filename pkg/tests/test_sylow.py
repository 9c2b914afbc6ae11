import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nslen.core.constructions import build, psl2
from nslen.core.sylow import CLIMB, EXHAUSTIVE, METADATA, sylow_subgroup
from nslen.errors import PreconditionError


@pytest.mark.parametrize("expression,p,order", [
    ("symmetric(4)", 2, 8),
    ("alternating(5)", 5, 5),
    ("symmetric(5)", 3, 3),
    ("psl2(7)", 7, 7),
    ("alternating(5)", 7, 1),
])
def test_sylow_orders(expression, p, order):
    result = sylow_subgroup(build(expression), p)
    assert result.order == order
    assert result.certified


def test_small_groups_use_the_exhaustive_search(s4):
    assert sylow_subgroup(s4, 2).method == EXHAUSTIVE


def test_products_use_the_metadata_recipe(s4xa5, a5wrc5):
    direct = sylow_subgroup(s4xa5, 2)
    assert direct.method == METADATA
    assert direct.order == 32
    wreath = sylow_subgroup(a5wrc5, 5)
    assert wreath.method == METADATA
    assert wreath.order == 5 ** 6
    assert wreath.subgroup.is_subgroup_of(a5wrc5)


def test_results_are_cached(a5):
    assert sylow_subgroup(a5, 5) is sylow_subgroup(a5, 5)


def test_sylow_needs_a_prime(a5):
    with pytest.raises(PreconditionError):
        sylow_subgroup(a5, 6)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_climb_reaches_a_p_subgroup(seed):
    G = psl2(7)
    result = sylow_subgroup(G, 2, seed=seed, exhaustive_cap=0)
    assert result.method == CLIMB
    assert 8 % result.order.value == 0
    assert result.certified == (result.order == 8)
    assert result.subgroup.is_p_group(2)


@pytest.mark.parametrize("expression,p", [("psl2(7)", 3), ("psl2(7)", 7), ("alternating(5)", 5), ("symmetric(5)", 3)])
def test_climb_agrees_with_the_exhaustive_search(expression, p):
    G = build(expression)
    exhaustive = sylow_subgroup(G, p)
    climbed = sylow_subgroup(G, p, exhaustive_cap=0)
    assert exhaustive.method == EXHAUSTIVE
    assert climbed.method == CLIMB
    assert climbed.certified
    assert climbed.order == exhaustive.order


def test_cache_separates_caps_and_seeds(psl27):
    default = sylow_subgroup(psl27, 7)
    assert sylow_subgroup(psl27, 7, exhaustive_cap=0) is not default
    assert sylow_subgroup(psl27, 7, exhaustive_cap=0).method == CLIMB
    assert sylow_subgroup(psl27, 7, seed=5) is not default
    assert sylow_subgroup(psl27, 7) is default
