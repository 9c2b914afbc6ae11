"""Executable checks of the length bounds, the orbit proposition and the p-kernel lemma.

Every check returns a :class:`CheckReport`. A check passes when its inequality
holds; the verdict is ``uncertified-pass`` or ``uncertified-fail`` whenever
some component (radical scan, socle completeness, Sylow climb, value set) was
sampled rather than exhaustive. Failing reports carry a witness.
"""

import logging
from dataclasses import dataclass, field
from random import Random
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

from ..config import AUTO, Budget, Certification, Mode
from ..core.lengths import canonical_series
from ..core.radicals import label_multiset, p_kernel, radical_quotient_socle
from ..core.sylow import sylow_subgroup
from ..core.words import Word, measure_exponent, value_order_lcm, value_set, word_builder
from ..errors import NotNormal, PreconditionError
from ..perm import PermGroup, Permutation, batch, induced_action, is_normal, normal_closure
from ..perm.hom import DEFAULT_INDEX_CAP
from .xsets import SAMPLED_BASES, class_bases, double_commutators, l_scan, scan_rows, x_set_from_rows

logger = logging.getLogger("nslen.verify")

PASS = "pass"
FAIL = "fail"
UNCERTIFIED_PASS = "uncertified-pass"
UNCERTIFIED_FAIL = "uncertified-fail"
VERDICTS = (PASS, FAIL, UNCERTIFIED_PASS, UNCERTIFIED_FAIL)

CHECKS = ("theorem1", "corollary2", "corollary3", "prop22", "kernel", "focal")


@dataclass
class CheckReport:
    check: str
    group: str
    params: Dict[str, Any]
    measured: Dict[str, Any] = field(default_factory=dict)
    verdict: str = PASS
    certification: List[str] = field(default_factory=list)
    seed: int = 0
    witness: Optional[Dict[str, Any]] = None
    runtime: float = 0.0

    @property
    def failed(self) -> bool:
        return self.verdict in (FAIL, UNCERTIFIED_FAIL)

    @property
    def certified(self) -> bool:
        return not self.certification

    def to_record(self, timings: bool = False) -> Dict[str, Any]:
        record = {
            "check": self.check,
            "group": self.group,
            "params": self.params,
            "measured": self.measured,
            "verdict": self.verdict,
            "certified": self.certified,
            "certification": list(self.certification),
            "seed": self.seed,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        if timings:
            record["runtime"] = round(self.runtime, 6)
        return record


def _conclude(report: CheckReport, holds: bool, ledger: Certification,
              witness: Optional[Dict[str, Any]] = None) -> CheckReport:
    if ledger.certified:
        report.verdict = PASS if holds else FAIL
    else:
        report.verdict = UNCERTIFIED_PASS if holds else UNCERTIFIED_FAIL
    report.certification = list(ledger.notes)
    if not holds:
        report.witness = witness or {}
    log = logger.warning if report.failed else logger.info
    log("%s on %s %s: %s", report.check, report.group, report.params, report.verdict)
    return report


def _require_prime(p: int, allow_p2: bool) -> None:
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    if p == 2 and not allow_p2:
        raise PreconditionError("p = 2 is exploratory; pass allow_p2 to run it")


def p2_status(p: int, n: int) -> Optional[str]:
    """For p = 2 the bound is known when n <= 2 and open otherwise."""
    if p != 2:
        return None
    return "covered" if n <= 2 else "conjectural"


def _chosen_e(override: Optional[int], e_min: int) -> int:
    if override is None:
        return e_min
    if override < e_min:
        raise PreconditionError(f"e = {override} is below the measured minimum {e_min}")
    return override


def _sylow(G: PermGroup, p: int, seed: int, ledger: Certification) -> Tuple[PermGroup, Dict[str, Any]]:
    result = sylow_subgroup(G, p, seed)
    if not result.certified:
        ledger.flag(f"Sylow {p}-subgroup of order {result.order} may be proper")
    return result.subgroup, {"sylow_order": str(result.order), "sylow_method": result.method}


def theorem1_check(G: PermGroup, p: int, n: int = 1, mode: Mode = AUTO, budget: Budget = Budget(),
                   seed: int = 0, allow_p2: bool = False, shifted: bool = False, e: Optional[int] = None,
                   index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """``lambda_p(G) <= n + e - 1`` with ``e`` measured on ``delta_n``-values of a Sylow subgroup."""
    _require_prime(p, allow_p2)
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    ledger = Certification()
    P, measured = _sylow(G, p, seed, ledger)
    standard, alternate = word_builder("delta", n), word_builder("delta", n - 1)
    word, other = (alternate, standard) if shifted else (standard, alternate)
    report = CheckReport("theorem1", str(G), {"p": p, "n": n, "word": str(word), "e": e,
                                              "reading": "shifted" if shifted else "standard"}, seed=seed)
    m = measure_exponent(word, P, p, budget, ledger)
    e_used = _chosen_e(e, m.e)
    series = canonical_series(G, p, mode, ledger, index_cap)
    bound = n + e_used - 1
    holds = series.lam <= bound

    diagnostics = Certification()
    m_other = measure_exponent(other, P, p, budget, diagnostics)
    delta_n = m_other if shifted else m
    scan = l_scan(P, n, p, budget, diagnostics)
    measured.update({
        "e_min": m.e,
        "e_raw": m.e_raw,
        "e": e_used,
        "lambda": series.lam,
        "bound": bound,
        "series": series.to_record()["layers"],
        "l": scan.l,
        "l_within_e": scan.l <= delta_n.e_raw,
        "alternate": {
            "word": str(other),
            "e_min": m_other.e,
            "bound": n + m_other.e - 1,
            "holds": series.lam <= n + m_other.e - 1,
        },
    })
    if scan.a is not None:
        measured["l_witness"] = {"a": str(scan.a), "b": str(scan.b)}
    if p == 2:
        measured["p2_status"] = p2_status(p, n)
    report.measured = measured
    return _conclude(report, holds, ledger, {"series": series.to_record(), "e_witness": str(m.witness)})


def corollary2_check(G: PermGroup, p: int, w: Word, mode: Mode = AUTO, budget: Budget = Budget(),
                     seed: int = 0, allow_p2: bool = False, e: Optional[int] = None,
                     index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """``lambda_p(G) <= n + e - 1`` for a multilinear commutator word ``w`` of weight ``n``."""
    _require_prime(p, allow_p2)
    ledger = Certification()
    P, measured = _sylow(G, p, seed, ledger)
    n = w.weight
    report = CheckReport("corollary2", str(G), {"p": p, "n": n, "word": str(w), "e": e}, seed=seed)
    m = measure_exponent(w, P, p, budget, ledger)
    e_used = _chosen_e(e, m.e)
    series = canonical_series(G, p, mode, ledger, index_cap)
    bound = n + e_used - 1
    measured.update({"e_min": m.e, "e_raw": m.e_raw, "e": e_used, "lambda": series.lam, "bound": bound,
                     "series": series.to_record()["layers"]})
    if p == 2:
        measured["p2_status"] = p2_status(p, n)
    report.measured = measured
    return _conclude(report, series.lam <= bound, ledger,
                     {"series": series.to_record(), "e_witness": str(m.witness)})


def corollary3_bound(n: int, e: int) -> int:
    """Upper bound for the nonsoluble length when all ``w``-values have order dividing ``e``.

    With ``m`` odd primes dividing ``e`` and ``nu`` the largest exponent among
    them, ``f(0) = 0`` and ``f(j) = (n + nu - 1) + (n + nu) f(j - 1)``; the bound
    is ``f(m)``.
    """
    if n < 1 or e < 1:
        raise PreconditionError(f"n and e must be positive, got n={n}, e={e}")
    odd = {q: k for q, k in factorint(e).items() if q != 2}
    nu = max(odd.values(), default=0)
    f = 0
    for _ in range(len(odd)):
        f = (n + nu - 1) + (n + nu) * f
    return f


def corollary3_check(G: PermGroup, w: Word, mode: Mode = AUTO, budget: Budget = Budget(), seed: int = 0,
                     e: Optional[int] = None, index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """``lambda(G) <= corollary3_bound(weight(w), e)`` with ``e`` the lcm of ``w``-value orders.

    Also checks that every prime of a nonabelian simple section divides ``e``.
    """
    ledger = Certification()
    report = CheckReport("corollary3", str(G), {"p": None, "n": w.weight, "word": str(w), "e": e}, seed=seed)
    values = value_set(w, G, budget, ledger)
    e_raw = value_order_lcm(values)
    e_measured = max(1, e_raw)
    if e is not None and e % e_measured:
        raise PreconditionError(f"e = {e} is not a multiple of the measured value-order lcm {e_measured}")
    e_used = e if e is not None else e_measured
    series = canonical_series(G, 2, mode, ledger, index_cap)
    bound = corollary3_bound(w.weight, e_used)
    outside = [q for q in series.sigma if e_used % q]
    report.measured = {"e_raw": e_raw, "e_min": e_measured, "e": e_used, "lambda": series.lam,
                       "bound": bound, "sigma": series.sigma, "sigma_divides_e": not outside,
                       "value_count": len(values), "series": series.to_record()["layers"]}
    return _conclude(report, series.lam <= bound and not outside, ledger,
                     {"series": series.to_record(), "sigma_not_dividing_e": outside})


def focal_check(G: PermGroup, w: Word, mode: Mode = AUTO, budget: Budget = Budget(),
                seed: int = 0, index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """Every prime dividing ``|w(G)|`` divides the lcm of the orders of ``w``-values.

    ``G/w(G)`` is soluble, so the primes of nonabelian simple sections must
    divide ``|w(G)|`` as well.
    """
    ledger = Certification()
    report = CheckReport("focal", str(G), {"p": None, "n": w.weight, "word": str(w), "e": None}, seed=seed)
    values = value_set(w, G, budget, ledger)
    e = max(1, value_order_lcm(values))
    V = normal_closure(G, sorted(g for g in values.elements if not g.is_identity()), check=False)
    missing = [q for q in V.order().primes if e % q]
    series = canonical_series(G, None, mode, ledger, index_cap)
    outside = [q for q in series.sigma if V.order().exponent_of(q) == 0]
    report.measured = {"e": e, "verbal_order": str(V.order()), "verbal_primes": list(V.order().primes),
                       "value_primes": sorted(factorint(e)), "sigma": series.sigma}
    return _conclude(report, not missing and not outside, ledger,
                     {"primes_not_dividing_e": missing, "sigma_not_dividing_verbal_order": outside})


def kernel_lemma_check(G: PermGroup, p: int, mode: Mode = AUTO, seed: int = 0,
                       index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """The p-kernel subgroup has non-p-soluble length at most 1."""
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    ledger = Certification()
    report = CheckReport("kernel", str(G), {"p": p, "n": None, "word": None, "e": None}, seed=seed)
    K = p_kernel(G, p, mode, ledger, index_cap)
    series = canonical_series(K, p, mode, ledger, index_cap)
    report.measured = {"kernel_order": str(K.order()), "lambda": series.lam, "bound": 1,
                       "series": series.to_record()["layers"]}
    return _conclude(report, series.lam <= 1, ledger,
                     {"kernel_generators": [str(g) for g in K.generators], "series": series.to_record()})


class FactorPermutations:
    """Permutations induced on a list of subgroups by conjugation, row by row."""

    def __init__(self, H: PermGroup, factors: Sequence[PermGroup]) -> None:
        self.factors = list(factors)
        supports = [frozenset(x for g in S.generators for x in g.support()) for S in self.factors]
        self.disjoint = all(supports) and sum(map(len, supports)) == len(frozenset().union(*supports))
        self._hom = induced_action(H, self.factors)
        if self.disjoint:
            owner = np.full(H.degree, -1, dtype=np.int64)
            for i, sup in enumerate(supports):
                owner[list(sup)] = i
            self._owner = owner
            self._points = np.asarray([min(sup) for sup in supports])

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        if self.disjoint:
            return self._owner[rows[:, self._points]]
        return np.asarray([self._hom(g).images for g in batch.to_perms(rows)], dtype=np.int64).reshape(
            rows.shape[0], len(self.factors))

    def single(self, g: Permutation) -> Tuple[int, ...]:
        return self._hom(g).images


def cycle_lengths(F: np.ndarray) -> np.ndarray:
    """Length of the cycle through each position, for each row of a batch of permutations."""
    k, m = F.shape
    positions = np.broadcast_to(np.arange(m), (k, m))
    lengths = np.zeros((k, m), dtype=np.int64)
    current = F.copy()
    for t in range(1, m + 1):
        hit = (current == positions) & (lengths == 0)
        lengths[hit] = t
        current = np.take_along_axis(F, current, axis=1)
    return lengths


def _orbit_of(images: Tuple[int, ...], start: int) -> List[int]:
    orbit, x = [start], images[start]
    while x != start:
        orbit.append(x)
        x = images[x]
    return sorted(orbit)


def _stabilizes(images: Tuple[int, ...], block: List[int]) -> bool:
    return {images[i] for i in block} == set(block)


def prop22_check(G: PermGroup, p: int, factors: Optional[Sequence[PermGroup]] = None, mode: Mode = AUTO,
                 budget: Budget = Budget(), seed: int = 0, reduced: bool = True, allow_p2: bool = False,
                 index_cap: int = DEFAULT_INDEX_CAP) -> CheckReport:
    """``[b,a,a]`` has no orbit of length ``q = |[b,a,a]| > 1`` on the simple factors.

    With ``factors`` omitted the check runs on ``G/R_p(G)`` and its socle
    factors. For each length-``q`` orbit found, it also checks that ``a`` and
    ``a^b`` map the orbit onto itself.
    """
    _require_prime(p, allow_p2)
    ledger = Certification()
    if factors is None:
        _, H, system = radical_quotient_socle(G, p, mode, ledger, index_cap)
        factors = system.factors
    else:
        H = G
        for S in factors:
            if S.order().exponent_of(p) == 0:
                raise PreconditionError(f"factor of order {S.order()} has order prime to {p}")
        product = H.subgroup([g for S in factors for g in S.generators])
        if not is_normal(product, H):
            raise NotNormal("the product of the factors is not normal")
    report = CheckReport("prop22", str(G), {"p": p, "n": None, "word": None, "e": None,
                                            "scan": "classes" if reduced else "elements"}, seed=seed)
    measured: Dict[str, Any] = {"factors": len(factors), "factor_labels": label_multiset(S.order() for S in factors)}
    if not factors:
        measured.update({"pairs": 0, "violations": 0})
        report.measured = measured
        return _conclude(report, True, ledger)
    P, sylow_info = _sylow(H, p, seed, ledger)
    measured.update(sylow_info)
    action = FactorPermutations(H, factors)
    rng = Random(seed)
    rows, exact = scan_rows(P, budget, rng, samples=max(1, budget.samples // SAMPLED_BASES))
    if exact:
        bases = class_bases(P, rows) if reduced else batch.to_perms(rows)
    else:
        bases = [P.random_element(rng) for _ in range(SAMPLED_BASES)]
        ledger.flag(f"orbit scan on a Sylow subgroup of order {P.order()} is sampled")

    pairs = vacuous = 0
    q_values = set()
    violations: List[Dict[str, Any]] = []
    stabilizer_failures = 0
    image_orders_ok = True
    for a in bases:
        xs = x_set_from_rows(rows, a, p, exact)
        if xs.q == 1:
            vacuous += 1
            continue
        q_values.add(xs.q)
        c = double_commutators(xs.members, a)
        outside = next((g for g in batch.to_perms(batch.unique(c)) if not P.contains(g)), None)
        if outside is not None:
            raise AssertionError(f"[b,a,a] = {outside} is outside the Sylow subgroup")
        lengths = cycle_lengths(action(c))
        if np.any(xs.q % lengths):
            raise AssertionError("an orbit length of [b,a,a] does not divide its order")
        pairs += c.shape[0]
        longest = lengths.max(axis=1)
        image_orders_ok = image_orders_ok and bool(np.all(longest < xs.q))
        for k in np.flatnonzero(longest == xs.q):
            b = batch.to_perms(xs.members[k:k + 1])[0]
            images = tuple(int(j) for j in action(c[k:k + 1])[0])
            orbit = _orbit_of(images, int(np.argmax(lengths[k] == xs.q)))
            a_ok = _stabilizes(action.single(a), orbit)
            ab_ok = _stabilizes(action.single(a.conjugate(b)), orbit)
            stabilizer_failures += (not a_ok) + (not ab_ok)
            violations.append({"a": str(a), "b": str(b), "q": xs.q, "orbit": orbit,
                               "a_stabilizes": a_ok, "a_conj_b_stabilizes": ab_ok})
    measured.update({
        "exact": exact,
        "bases": len(bases),
        "vacuous_bases": vacuous,
        "pairs": pairs,
        "q_values": sorted(q_values),
        "violations": len(violations),
        "stabilizer_failures": stabilizer_failures,
        "image_order_divides_q_over_p": image_orders_ok,
    })
    report.measured = measured
    return _conclude(report, not violations, ledger, {"violations": violations[:10]})

