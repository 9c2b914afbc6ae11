from collections import Counter
from math import factorial
from random import Random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nslen.core.constructions import alternating, psl2, symmetric
from nslen.errors import CapExceeded, DegreeMismatch, NotNormal
from nslen.perm import (
    FactoredInteger,
    Permutation,
    batch,
    build_chain,
    derived_series,
    induced_action,
    is_normal,
    normal_closure,
    orbit_partition,
    p_part_element,
    pointwise_stabilizer,
    preimage,
    quotient,
)
from nslen.perm.hom import coset_action

perms6 = st.permutations(list(range(6))).map(Permutation)


def test_products_act_on_the_right():
    g = Permutation.parse("(0 1)", degree=3)
    h = Permutation.parse("(1 2)", degree=3)
    assert (g * h)(0) == h(g(0)) == 2


def test_parse_and_print_cycle_notation():
    g = Permutation.parse("(0 1 2)(3 4)")
    assert g.images == (1, 2, 0, 4, 3)
    assert str(g) == "(0 1 2)(3 4)"
    assert str(Permutation.identity(4)) == "()"
    assert g.order() == 6


def test_degree_mismatch_is_an_error():
    with pytest.raises(DegreeMismatch):
        Permutation.identity(3) * Permutation.identity(4)
    with pytest.raises(DegreeMismatch):
        Permutation.parse("(0 5)", degree=3)


@given(perms6, perms6)
def test_conjugate_and_commutator_conventions(x, g):
    assert x ** g == g.inverse() * x * g
    assert x.commutator(g) == x.inverse() * g.inverse() * x * g
    assert (x * g).inverse() == g.inverse() * x.inverse()


@given(perms6)
def test_p_part_has_prime_power_order(g):
    for p in (2, 3, 5):
        part = p_part_element(g, p)
        assert FactoredInteger.from_int(part.order()).is_p_power(p)


def test_factored_integer_arithmetic():
    n = FactoredInteger.from_int(360)
    assert n.factors == {2: 3, 3: 2, 5: 1}
    assert n.primes == (2, 3, 5)
    assert n.exponent_of(3) == 2
    assert n.p_part(2) == 8
    assert n / FactoredInteger.from_int(12) == 30
    assert FactoredInteger.from_int(12).divides(n)
    assert FactoredInteger().is_one()
    assert str(n) == "2^3*3^2*5"


def test_group_orders(s4, a5, psl27):
    assert s4.order() == 24
    assert a5.order() == 60
    assert psl27.order() == 168
    assert psl27.degree == 8


def test_derived_series_orders(s4, a5):
    series, soluble = derived_series(s4)
    assert [H.order_int for H in series] == [24, 12, 4, 1]
    assert soluble
    series, soluble = derived_series(a5)
    assert [H.order_int for H in series] == [60, 60]
    assert not soluble


def test_random_elements_are_members(a5):
    for seed in range(5):
        assert a5.contains(a5.random_element(seed))


def test_quotient_by_klein_group(s4):
    V = normal_closure(s4, [Permutation.parse("(0 1)(2 3)", degree=4)])
    assert V.order() == 4
    f = quotient(s4, V)
    assert f.image.order() == 6
    assert f.kernel.order() == 4
    g = Permutation.parse("(0 1 2)", degree=4)
    assert s4.contains(f.lift(f(g)))


def test_coset_action_needs_a_normal_subgroup(s4):
    H = s4.subgroup([Permutation.parse("(0 1)", degree=4)])
    assert not is_normal(H, s4)
    with pytest.raises(NotNormal):
        coset_action(s4, H)


def test_block_action_of_a_wreath_product(c5wrc5):
    blocks = [tuple(range(5 * j, 5 * j + 5)) for j in range(5)]
    f = induced_action(c5wrc5, blocks)
    assert f.image.order() == 5
    assert f.kernel.order() == 5 ** 5
    assert preimage(f, f.image.subgroup([])).order() == 5 ** 5


def test_stabilizers_and_orbits(s5, s4xa5):
    assert pointwise_stabilizer(s5, [0]).order() == 24
    assert pointwise_stabilizer(s5, [0, 1]).order() == 6
    assert orbit_partition(s4xa5) == [(0, 1, 2, 3), (4, 5, 6, 7, 8)]


@settings(max_examples=25)
@given(st.lists(perms6, min_size=1, max_size=6), perms6)
def test_batch_ops_match_single_permutations(xs, g):
    rows = batch.stack(xs, 6)
    assert batch.to_perms(batch.conjugate(rows, g)) == [x ** g for x in xs]
    assert batch.to_perms(batch.commutator_right(rows, g)) == [x.commutator(g) for x in xs]
    assert batch.to_perms(batch.invert(rows)) == [x.inverse() for x in xs]
    twos = [p_part_element(x, 2) for x in xs]
    orders = batch.p_exponents(batch.stack(twos, 6), 2)
    assert list(orders) == [FactoredInteger.from_int(t.order()).exponent_of(2) for t in twos]
    assert isinstance(orders, np.ndarray)


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_and_alternating_orders(n):
    assert symmetric(n).order() == factorial(n)
    assert alternating(n).order() == max(1, factorial(n) // 2)


@pytest.mark.parametrize("q,order", [(5, 60), (7, 168), (11, 660)])
def test_psl2_orders(q, order):
    assert psl2(q).order() == order


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_alternating_membership(n):
    A = alternating(n)
    swap = Permutation.from_cycles(n, [(0, 1)])
    rng = Random(n)
    for _ in range(250):
        g = Permutation.identity(n)
        for _ in range(12):
            g = g * rng.choice(A.generators)
        assert A.contains(g)
        assert not A.contains(g * swap)


@given(perms6)
def test_cycle_notation_reparses(x):
    assert Permutation.parse(str(x), degree=6) == x


@given(st.integers(min_value=1, max_value=10 ** 6), st.integers(min_value=1, max_value=10 ** 6))
def test_factored_products_match_integer_products(a, b):
    assert FactoredInteger.from_int(a) * FactoredInteger.from_int(b) == a * b


def test_random_elements_are_uniform(s4):
    rng = Random(11)
    counts = Counter(s4.random_element(rng) for _ in range(24000))
    assert len(counts) == 24
    assert all(850 <= c <= 1150 for c in counts.values())


def test_elements_above_the_cap_raise(a5):
    with pytest.raises(CapExceeded):
        a5.elements(10)
    assert len(a5.elements(60)) == 60


@pytest.mark.parametrize("fixture", ["s4", "a5", "psl27", "s4xa5"])
def test_chain_order_counts_the_elements(fixture, request):
    G = request.getfixturevalue(fixture)
    assert G.chain.order() == len(G.elements(10 ** 5))
    assert len(set(G.elements(10 ** 5))) == G.order_int


@pytest.mark.parametrize("fixture", ["s4", "a5", "psl27"])
def test_chain_passes_schreier_verification(fixture, request):
    G = request.getfixturevalue(fixture)
    chain = build_chain(G.generators, G.degree)
    assert chain.verify()
    assert chain.verified


def test_truncated_chain_fails_verification(s4):
    chain = build_chain(s4.generators, 4)
    assert len(chain.levels) > 1
    chain.levels.pop()
    assert not chain.verify()


def test_normal_closure_is_normal(s5, psl27):
    N = normal_closure(s5, [Permutation.parse("(0 1 2)", degree=5)])
    assert is_normal(N, s5)
    assert N.order() == 60
    M = normal_closure(psl27, [psl27.generators[0]])
    assert is_normal(M, psl27)
    assert M.order() == 168


def test_induced_action_kernel_fixes_every_block(c5wrc5):
    blocks = [tuple(range(5 * j, 5 * j + 5)) for j in range(5)]
    f = induced_action(c5wrc5, blocks)
    assert f.kernel.order_int * f.image.order_int == c5wrc5.order_int
    for g in f.kernel.generators:
        for block in blocks:
            assert {g.images[i] for i in block} == set(block)


def test_class_representatives_pick_one_row_per_class(s4, a5):
    for G in (s4, a5):
        rows = batch.stack(G.elements(100), G.degree)
        reps = batch.class_representatives(rows, G.generators)
        assert reps.shape[0] == len(G.conjugacy_classes(1000))
        classes = G.conjugacy_classes(1000)
        assert sorted(next(i for i, c in enumerate(classes) if g in c) for g in batch.to_perms(reps)) \
            == list(range(len(classes)))


def test_class_labels_need_a_closed_set(s4):
    rows = batch.stack([Permutation.parse("(0 1)", degree=4)], 4)
    with pytest.raises(ValueError):
        batch.conjugation_labels(rows, s4.generators)
