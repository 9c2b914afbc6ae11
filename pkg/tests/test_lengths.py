import pytest

from nslen.core.constructions import build
from nslen.core.lattice import FiniteGroup, oracle_lambda
from nslen.core.lengths import (
    P_SOLUBLE_LAYER,
    SEMISIMPLE_LAYER,
    canonical_series,
    lambda_,
    lambda_nonsoluble_direct,
    lambda_p,
    sigma,
)
from nslen.core.radicals import is_p_soluble
from nslen.errors import PreconditionError


def test_small_lengths(a5, s4, s5):
    assert lambda_p(a5, 5) == 1
    assert lambda_p(s4, 2) == 0
    assert lambda_p(s5, 5) == 1
    assert lambda_(s5) == 1
    assert lambda_nonsoluble_direct(s5) == 1


def test_direct_square_has_length_one():
    G = build("direct(alternating(5),alternating(5))")
    assert lambda_(G) == 1
    assert lambda_nonsoluble_direct(G) == 1


def test_series_of_s4_x_a5(s4xa5):
    series = canonical_series(s4xa5, 5)
    assert [layer.kind for layer in series.layers] == [P_SOLUBLE_LAYER, SEMISIMPLE_LAYER, P_SOLUBLE_LAYER]
    assert [layer.order for layer in series.layers] == [24, 60, 1]
    assert series.layers[1].factors == "A5"
    assert series.certified
    record = series.to_record()
    assert record["lambda"] == 1
    assert record["layers"][1] == {"kind": SEMISIMPLE_LAYER, "order": "2^2*3*5", "factors": "A5"}


def test_series_of_a_soluble_group(s4):
    series = canonical_series(s4, 3)
    assert series.lam == 0
    assert [layer.kind for layer in series.layers] == [P_SOLUBLE_LAYER]
    assert series.layers[0].order == 24


def test_series_alternates_and_multiplies_to_the_order(psl27, s5):
    for G, p in ((psl27, 7), (s5, 2), (s5, 3)):
        series = canonical_series(G, p)
        kinds = [layer.kind for layer in series.layers]
        assert kinds[0] == kinds[-1] == P_SOLUBLE_LAYER
        assert all(a != b for a, b in zip(kinds, kinds[1:]))
        total = 1
        for layer in series.layers:
            total *= layer.order.value
        assert total == G.order_int


def test_series_needs_a_prime(a5):
    with pytest.raises(PreconditionError):
        canonical_series(a5, 4)


@pytest.mark.parametrize("expression", ["symmetric(4)", "alternating(5)", "symmetric(5)", "psl2(7)",
                                        "direct(symmetric(4),alternating(5))"])
@pytest.mark.parametrize("p", [None, 2, 3, 5, 7])
def test_lengths_agree_with_the_lattice_oracle(expression, p):
    G = build(expression)
    assert canonical_series(G, p).lam == oracle_lambda(FiniteGroup.from_perm_group(G), p)


@pytest.mark.slow
def test_a5_wr_c5_has_5_length_one(a5wrc5):
    series = canonical_series(a5wrc5, 5)
    assert series.lam == 1
    assert series.layers[1].factors == "A5^5"


@pytest.mark.slow
def test_a5_wr_a5_has_length_two():
    G = build("wreath(alternating(5),alternating(5))")
    assert lambda_(G) == 2
    assert lambda_nonsoluble_direct(G) == 2


@pytest.mark.parametrize("fixture,primes", [("s5", [2, 3, 5]), ("s4xa5", [2, 3, 5]), ("psl27", [2, 3, 7]),
                                            ("c5wrc5", []), ("s4", [])])
def test_sigma_collects_the_primes_of_simple_sections(fixture, primes, request):
    G = request.getfixturevalue(fixture)
    assert sigma(G) == primes
    assert canonical_series(G, 2).sigma == primes
    assert canonical_series(G, None).to_record()["sigma"] == primes


def test_sigma_needs_the_soluble_series(a5):
    with pytest.raises(PreconditionError):
        canonical_series(a5, 5).sigma
    assert "sigma" not in canonical_series(a5, 5).to_record()


@pytest.mark.parametrize("left,right", [("alternating(5)", "symmetric(4)"), ("alternating(5)", "psl2(7)"),
                                        ("symmetric(3)", "cyclic(5)")])
def test_length_of_a_direct_product_is_the_larger_length(left, right):
    A, B = build(left), build(right)
    G = build(f"direct({left},{right})")
    assert lambda_(G) == max(lambda_(A), lambda_(B))
    for p in (3, 5, 7):
        assert lambda_p(G, p) == max(lambda_p(A, p), lambda_p(B, p))


@pytest.mark.parametrize("expression", ["symmetric(4)", "alternating(5)", "psl2(7)",
                                        "direct(symmetric(4),alternating(5))"])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_zero_length_means_p_soluble(expression, p):
    G = build(expression)
    assert (lambda_p(G, p) == 0) == is_p_soluble(G, p)
