"""Maximizing sets ``X_P(a)`` and the ``l`` parameter.

For ``a`` in a p-group ``P``, ``X_P(a)`` collects the ``x`` in ``P`` for which
``[x,a,a]`` has the largest order ``q``. Scans are vectorized over the rows of
``P``: exhaustive when ``|P|`` is within ``budget.scan_cap``, sampled otherwise.
"""

import logging
from dataclasses import dataclass
from random import Random
from typing import List, Optional, Tuple

import numpy as np

from ..config import Budget, Certification
from ..core.words import value_set, word_builder
from ..errors import NotAMember, PreconditionError
from ..perm import FactoredInteger, PermGroup, Permutation, batch, derived_subgroup

logger = logging.getLogger("nslen.verify")

SAMPLED_BASES = 100


@dataclass
class XSet:
    a: Permutation
    members: np.ndarray
    q: int
    exact: bool

    def member_perms(self) -> List[Permutation]:
        return batch.to_perms(self.members)

    def __len__(self) -> int:
        return self.members.shape[0]


def prime_of(P: PermGroup) -> Optional[int]:
    primes = P.order().primes
    if len(primes) > 1:
        raise PreconditionError(f"group of order {P.order()} is not a p-group")
    return primes[0] if primes else None


def scan_rows(P: PermGroup, budget: Budget, rng: Random, samples: Optional[int] = None) -> Tuple[np.ndarray, bool]:
    """Rows of ``P`` to scan, and whether they are all of ``P``."""
    if P.order_int <= budget.scan_cap:
        return batch.stack(P.elements(budget.scan_cap), P.degree), True
    count = samples or budget.samples
    logger.info("x-set scan: |P| = %s above scan cap, sampling %d elements", P.order(), count)
    return batch.unique(batch.stack([P.random_element(rng) for _ in range(count)], P.degree)), False


def double_commutators(rows: np.ndarray, a: Permutation) -> np.ndarray:
    """``[x,a,a]`` for every row ``x``."""
    return batch.commutator_right(batch.commutator_right(rows, a), a)


def x_set_from_rows(rows: np.ndarray, a: Permutation, p: Optional[int], exact: bool) -> XSet:
    if p is None:
        return XSet(a, rows, 1, exact)
    exps = batch.p_exponents(double_commutators(rows, a), p)
    top = int(exps.max())
    return XSet(a, rows[exps == top], p ** top, exact)


def x_set(P: PermGroup, a: Permutation, budget: Budget = Budget()) -> XSet:
    """The elements ``x`` of ``P`` maximizing the order of ``[x,a,a]``."""
    if not P.contains(a):
        raise NotAMember(f"{a} is not an element of the group")
    rows, exact = scan_rows(P, budget, Random(budget.seed))
    return x_set_from_rows(rows, a, prime_of(P), exact)


def class_bases(P: PermGroup, rows: np.ndarray) -> List[Permutation]:
    """One element from each ``P``-class meeting ``rows``, highest order first."""
    reps = batch.class_representatives(batch.unique(rows), P.generators)
    p = prime_of(P)
    if p is None or reps.shape[0] == 0:
        return batch.to_perms(reps)
    exps = batch.p_exponents(reps, p)
    return batch.to_perms(reps[np.argsort(-exps, kind="stable")])


def l_ceiling(P: PermGroup, p: int, budget: Budget = Budget()) -> int:
    """An upper bound for ``log_p |[b,a,a]|``: every ``[b,a,a]`` lies in the derived subgroup."""
    D = derived_subgroup(P)
    if D.order_int <= budget.scan_cap:
        return int(batch.p_exponents(batch.stack(D.elements(budget.scan_cap), P.degree), p).max(initial=0))
    ceiling, length = 0, p
    while length <= P.degree:
        ceiling, length = ceiling + 1, length * p
    return ceiling


@dataclass
class LScan:
    l: int
    a: Optional[Permutation]
    b: Optional[Permutation]
    exact: bool


def _scan_l(P: PermGroup, n: int, p: int, budget: Budget, ledger: Optional[Certification]) -> LScan:
    values = value_set(word_builder("delta", n - 1), P, budget, ledger)
    rng = Random(budget.seed)
    rows, exact = scan_rows(P, budget, rng, samples=max(1, budget.samples // SAMPLED_BASES))
    if values.exact:
        # X_P(a^g) = X_P(a)^g, so one value per class suffices
        bases = class_bases(P, values.rows)
    else:
        bases = sorted(values.elements)[:SAMPLED_BASES]
    best = LScan(0, None, None, exact and values.exact)
    ceiling = l_ceiling(P, p, budget)
    for a in bases:
        if best.l >= ceiling:
            break
        if a.is_identity():
            continue
        xs = x_set_from_rows(rows, a, p, exact)
        l = FactoredInteger.from_int(xs.q).exponent_of(p)
        if l > best.l:
            best = LScan(l, a, xs.member_perms()[0], best.exact)
    return best


def l_scan(P: PermGroup, n: int, p: int, budget: Budget = Budget(),
           ledger: Optional[Certification] = None) -> LScan:
    """Largest ``log_p |[b,a,a]|`` over ``delta_{n-1}``-values ``a`` and ``b`` in ``X_P(a)``.

    The scan stops once ``l`` reaches :func:`l_ceiling`; results are cached on ``P``.
    """
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    key = ("l_scan", n, p, budget)
    if key not in P.cache:
        P.cache[key] = _scan_l(P, n, p, budget, ledger)
    best = P.cache[key]
    if not best.exact and ledger is not None:
        ledger.flag(f"l parameter for n={n} on a group of order {P.order()} is sampled")
    return best


def l_parameter(P: PermGroup, n: int, p: int, budget: Budget = Budget()) -> int:
    return l_scan(P, n, p, budget).l
