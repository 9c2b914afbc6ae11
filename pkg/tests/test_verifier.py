import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nslen.core.constructions import build, cyclic
from nslen.core.sylow import sylow_subgroup
from nslen.core.words import parse_word
from nslen.errors import NotAMember, NotNormal, PreconditionError
from nslen.perm import Permutation
from nslen.verify import (
    corollary2_check,
    corollary3_bound,
    corollary3_check,
    focal_check,
    kernel_lemma_check,
    l_parameter,
    prop22_check,
    theorem1_check,
    x_set,
)
from nslen.verify import checks
from nslen.verify.checks import FAIL, PASS, UNCERTIFIED_FAIL, UNCERTIFIED_PASS, CheckReport, cycle_lengths, p2_status
from nslen.verify.xsets import l_ceiling


def test_theorem1_on_a5():
    report = theorem1_check(build("alternating(5)"), 5, n=1)
    assert report.verdict == PASS
    m = report.measured
    assert (m["e_min"], m["e"], m["lambda"], m["bound"]) == (1, 1, 1, 1)
    assert m["sylow_order"] == "5"
    assert m["alternate"]["word"] == "x1"
    assert report.params["reading"] == "standard"


def test_theorem1_on_soluble_s4(s4):
    report = theorem1_check(s4, 3, n=1)
    assert report.verdict == PASS
    assert report.measured["lambda"] == 0


def test_theorem1_shifted_reading_reports_both(a5):
    report = theorem1_check(a5, 5, n=2, shifted=True)
    assert report.params["word"] == "[x1,x2]"
    assert report.measured["alternate"]["word"] == "[[x1,x2],[x3,x4]]"
    assert report.verdict == PASS


def test_theorem1_e_override(a5):
    report = theorem1_check(a5, 5, n=1, e=3)
    assert (report.measured["e_min"], report.measured["e"], report.measured["bound"]) == (1, 3, 3)


def test_p2_needs_permission(s4):
    with pytest.raises(PreconditionError):
        theorem1_check(s4, 2, n=1)
    report = theorem1_check(s4, 2, n=1, allow_p2=True)
    assert report.measured["p2_status"] == "covered"
    assert p2_status(2, 3) == "conjectural"
    assert p2_status(5, 3) is None


def test_non_prime_is_rejected(a5):
    with pytest.raises(PreconditionError):
        theorem1_check(a5, 9, n=1)
    with pytest.raises(PreconditionError):
        theorem1_check(a5, 5, n=0)


def test_corollary2_with_a_gamma_word(a5, s4xa5):
    report = corollary2_check(a5, 5, parse_word("[[x1,x2],x3]"))
    assert report.verdict == PASS
    assert report.params["n"] == 3
    assert corollary2_check(s4xa5, 3, parse_word("[x1,x2]")).verdict == PASS


@pytest.mark.parametrize("n,e,bound", [(1, 1, 0), (3, 1, 0), (2, 5, 2), (1, 15, 3), (2, 30, 8), (1, 16, 0),
                                       (1, 25, 2), (2, 4, 0)])
def test_corollary3_bound_values(n, e, bound):
    assert corollary3_bound(n, e) == bound


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=3000),
       st.integers(min_value=1, max_value=30))
def test_corollary3_bound_is_monotone_under_divisibility(n, d, k):
    assert corollary3_bound(n, d) <= corollary3_bound(n, d * k)


def test_corollary3_on_a5(a5):
    report = corollary3_check(a5, parse_word("g2"))
    assert report.verdict == PASS
    assert (report.measured["e"], report.measured["bound"], report.measured["lambda"]) == (30, 8, 1)
    with pytest.raises(PreconditionError):
        corollary3_check(a5, parse_word("g2"), e=7)
    assert corollary3_check(a5, parse_word("g2"), e=60).measured["e"] == 60


@pytest.mark.parametrize("fixture", ["s4", "a5", "psl27"])
def test_focal_check(fixture, request):
    report = focal_check(request.getfixturevalue(fixture), parse_word("g2"))
    assert report.verdict == PASS


def test_kernel_lemma(a5, s5, s4xa5):
    assert kernel_lemma_check(a5, 5).verdict == PASS
    report = kernel_lemma_check(s5, 5)
    assert report.measured["kernel_order"] == "2^3*3*5"
    assert report.verdict == PASS
    assert kernel_lemma_check(s4xa5, 2).verdict == PASS


def test_prop22_on_small_groups(a5, s4xa5, s4):
    report = prop22_check(a5, 5)
    assert report.verdict == PASS
    assert report.measured["factors"] == 1
    assert report.measured["violations"] == 0
    assert prop22_check(s4xa5, 5).verdict == PASS
    vacuous = prop22_check(s4, 3)
    assert vacuous.measured["factors"] == 0 and vacuous.verdict == PASS


def test_prop22_explicit_factors_are_validated(s5):
    S = build("alternating(5)")
    H = s5.subgroup([Permutation.parse("(0 1 2)", degree=5)])
    with pytest.raises(PreconditionError):
        prop22_check(s5, 5, factors=[H])
    not_normal = s5.subgroup([Permutation.parse("(0 1 2 3 4)", degree=5)])
    with pytest.raises(NotNormal):
        prop22_check(s5, 5, factors=[not_normal])
    report = prop22_check(s5, 5, factors=[s5.subgroup(S.generators)])
    assert report.verdict == PASS


def test_cycle_lengths():
    F = np.array([[1, 0, 2], [1, 2, 0], [0, 1, 2]])
    assert cycle_lengths(F).tolist() == [[2, 2, 1], [3, 3, 3], [1, 1, 1]]


def test_x_set_on_an_abelian_group():
    C = cyclic(5)
    a = C.generators[0]
    xs = x_set(C, a)
    assert xs.q == 1
    assert len(xs) == 5
    with pytest.raises(NotAMember):
        x_set(C, Permutation.parse("(0 1)", degree=5))


def test_x_set_of_the_top_cycle_in_c5_wr_c5(c5wrc5):
    top = c5wrc5.generators[-1]
    xs = x_set(c5wrc5, top)
    assert xs.q == 5
    assert xs.exact
    for b in xs.member_perms()[:10]:
        assert b.commutator(top).commutator(top).order() == 5


def test_l_parameter_of_c5_wr_c5(c5wrc5):
    P = sylow_subgroup(c5wrc5, 5).subgroup
    assert l_parameter(P, 1, 5) == 1


def test_report_records():
    report = CheckReport("focal", "G", {"p": None}, verdict=UNCERTIFIED_FAIL, certification=["sampled"])
    assert report.failed and not report.certified
    record = report.to_record()
    assert "runtime" not in record
    assert record["certification"] == ["sampled"]
    assert "runtime" in report.to_record(timings=True)
    assert CheckReport("focal", "G", {}, verdict=FAIL).failed


@pytest.mark.slow
def test_prop22_on_a5_wr_c5(a5wrc5):
    report = prop22_check(a5wrc5, 5)
    assert report.measured["factors"] == 5
    assert report.measured["violations"] == 0
    assert report.verdict in (PASS, UNCERTIFIED_PASS)


@pytest.mark.slow
def test_theorem1_on_a5_wr_c5(a5wrc5):
    report = theorem1_check(a5wrc5, 5, n=1)
    assert report.measured["lambda"] == 1
    assert report.measured["sylow_order"] == "5^6"
    assert not report.failed


def test_corollary3_bound_is_monotone_on_small_arguments():
    for n in range(1, 11):
        for e in range(1, 11):
            assert corollary3_bound(n, e) <= corollary3_bound(n + 1, e)
            for k in range(1, 11):
                assert corollary3_bound(n, e) <= corollary3_bound(n, e * k)


@pytest.mark.parametrize("expression", ["symmetric(4)", "alternating(5)", "symmetric(5)", "psl2(7)",
                                        "direct(symmetric(4),alternating(5))", "psl2(11)"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_kernel_lemma_on_the_corpus(expression, p):
    assert kernel_lemma_check(build(expression), p).verdict == PASS


def test_corollary3_reports_sigma(a5, s4):
    report = corollary3_check(a5, parse_word("g2"))
    assert report.measured["sigma"] == [2, 3, 5]
    assert report.measured["sigma_divides_e"]
    assert corollary3_check(s4, parse_word("g2")).measured["sigma"] == []


@pytest.mark.parametrize("fixture,primes", [("s4", []), ("a5", [2, 3, 5]), ("psl27", [2, 3, 7])])
def test_focal_check_reports_sigma(fixture, primes, request):
    report = focal_check(request.getfixturevalue(fixture), parse_word("g2"))
    assert report.measured["sigma"] == primes
    assert set(primes) <= set(report.measured["verbal_primes"])
    assert report.verdict == PASS


def test_failing_report_replays_with_the_same_seed(a5, monkeypatch):
    monkeypatch.setattr(checks, "corollary3_bound", lambda n, e: 0)
    first = corollary3_check(a5, parse_word("g2"), seed=4)
    assert first.verdict == FAIL
    assert first.witness["sigma_not_dividing_e"] == []
    again = corollary3_check(a5, parse_word("g2"), seed=first.seed)
    assert again.verdict == FAIL
    assert again.to_record() == first.to_record()


def test_l_ceiling_of_c5_wr_c5(c5wrc5, a5):
    assert l_ceiling(c5wrc5, 5) == 1
    assert l_ceiling(sylow_subgroup(a5, 5).subgroup, 5) == 0


def test_l_scan_results_are_cached(c5wrc5):
    P = sylow_subgroup(c5wrc5, 5).subgroup
    assert l_parameter(P, 1, 5) == 1
    assert any(isinstance(key, tuple) and key[0] == "l_scan" for key in P.cache)


@pytest.mark.parametrize("p", [3, 7])
@pytest.mark.parametrize("n", [1, 2])
def test_theorem1_on_psl27(psl27, p, n):
    report = theorem1_check(psl27, p, n=n)
    assert report.verdict == PASS
    assert report.measured["lambda"] == 1
    assert report.measured["bound"] == n


def test_theorem1_on_c5_wr_c5(c5wrc5):
    report = theorem1_check(c5wrc5, 5, n=1)
    assert not report.failed
    assert report.measured["lambda"] == 0
    assert report.measured["l"] == 1
    assert report.measured["sylow_order"] == "5^6"


@pytest.mark.slow
def test_theorem1_on_a5_wr_c5_with_n_2(a5wrc5):
    report = theorem1_check(a5wrc5, 5, n=2)
    assert report.measured["lambda"] == 1
    assert not report.failed


def _c3_wr_c3_with_base_factors():
    G = build("wreath(cyclic(3),cyclic(3))")
    return G, [G.subgroup([g]) for g in G.generators[:3]]


def test_prop22_scans_every_pair_of_a_nonabelian_sylow_subgroup():
    G, factors = _c3_wr_c3_with_base_factors()
    report = prop22_check(G, 3, factors=factors)
    assert report.verdict == PASS
    assert report.measured["q_values"] == [3]
    assert report.measured["pairs"] > 0
    assert report.measured["violations"] == 0


def test_prop22_rejects_a_double_commutator_outside_the_sylow_subgroup(monkeypatch):
    G, factors = _c3_wr_c3_with_base_factors()
    stray = np.array([Permutation.parse("(0 1)", degree=9).images])
    real = checks.double_commutators
    monkeypatch.setattr(checks, "double_commutators", lambda rows, a: np.vstack([real(rows, a), stray]))
    with pytest.raises(AssertionError, match="outside the Sylow subgroup"):
        prop22_check(G, 3, factors=factors)


ACCEPTANCE = [
    ("alternating(5)", 5, 1), ("alternating(5)", 5, 2), ("symmetric(5)", 5, 1), ("psl2(7)", 3, 1),
    ("psl2(7)", 7, 1), ("direct(symmetric(4),alternating(5))", 5, 1),
    ("wreath(alternating(5),cyclic(5))", 5, 1), ("wreath(alternating(5),cyclic(5))", 5, 2),
    ("wreath(cyclic(5),cyclic(5))", 5, 1),
]


@pytest.mark.slow
def test_theorem1_acceptance_suite_runs_within_five_minutes():
    start = time.perf_counter()
    for expression, p, n in ACCEPTANCE:
        report = theorem1_check(build(expression), p, n=n)
        assert not report.failed, (expression, p, n)
    assert time.perf_counter() - start < 300
