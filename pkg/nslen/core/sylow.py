"""Sylow p-subgroups by a cascade of strategies.

1. ``metadata``: products built by :mod:`nslen.core.constructions` carry a
   recipe; a Sylow subgroup of ``A x B`` is the product of Sylow subgroups of
   the factors, and one of ``A wr B`` is ``Syl(A) wr Syl(B)`` in the same
   coordinates.
2. ``exhaustive``: for small groups, grow a p-subgroup by p-elements that
   normalize it. A p-subgroup that is not Sylow always has such an element
   outside it, so the search ends at a Sylow subgroup.
3. ``climb``: sample p-parts of random elements and their conjugates, and keep
   those that leave the join a p-group.
"""

import logging
from dataclasses import dataclass
from random import Random
from typing import Iterable, Optional

from sympy import isprime

from ..errors import PreconditionError
from ..perm import FactoredInteger, PermGroup, Permutation, join, p_part, p_part_element
from .constructions import direct_product, wreath_product

logger = logging.getLogger("nslen.sylow")

EXHAUSTIVE_CAP = 10 ** 5
CLIMB_BUDGET = 4096

METADATA = "metadata"
EXHAUSTIVE = "exhaustive"
CLIMB = "climb"


@dataclass
class SylowResult:
    subgroup: PermGroup
    certified: bool
    method: str

    @property
    def order(self) -> FactoredInteger:
        return self.subgroup.order()


def sylow_subgroup(G: PermGroup, p: int, seed: int = 0, exhaustive_cap: int = EXHAUSTIVE_CAP,
                   budget: int = CLIMB_BUDGET) -> SylowResult:
    """A Sylow ``p``-subgroup of ``G``; uncertified only when the climb stalls."""
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    key = ("sylow", p, seed, exhaustive_cap, budget)
    if key in G.cache:
        return G.cache[key]
    target = p_part(G.order(), p)
    if target.is_one():
        result = SylowResult(G.subgroup([], name="1"), True, EXHAUSTIVE)
    else:
        result = _from_metadata(G, p, seed, exhaustive_cap, budget)
        if result is None and G.order_int <= exhaustive_cap:
            result = SylowResult(_exhaustive(G, p), True, EXHAUSTIVE)
        if result is None:
            result = _climb(G, p, target, seed, budget)
    _assert_p_subgroup(result.subgroup, G, p)
    result.certified = result.subgroup.order() == target
    result.subgroup.name = f"Syl{p}({G})"
    logger.info("Sylow %d-subgroup of %s: order %s via %s%s", p, G, result.order, result.method,
                "" if result.certified else " (uncertified)")
    G.cache[key] = result
    return result


def _assert_p_subgroup(Q: PermGroup, G: PermGroup, p: int) -> None:
    if not Q.is_p_group(p):
        raise AssertionError(f"Sylow candidate of order {Q.order()} is not a {p}-group")
    if not Q.is_subgroup_of(G):
        raise AssertionError("Sylow candidate is not contained in the group")


def _from_metadata(G: PermGroup, p: int, seed: int, exhaustive_cap: int, budget: int) -> Optional[SylowResult]:
    meta = G.metadata
    if meta is None or meta.sylow_recipe is None or meta.opaque:
        return None
    A, B = meta.components()
    SA = sylow_subgroup(A, p, seed, exhaustive_cap, budget)
    SB = sylow_subgroup(B, p, seed, exhaustive_cap, budget)
    if not (SA.certified and SB.certified):
        return None
    if meta.sylow_recipe == "direct":
        Q = direct_product(SA.subgroup, SB.subgroup)
    elif meta.sylow_recipe == "wreath":
        Q = wreath_product(SA.subgroup, SB.subgroup)
    else:
        logger.warning("unknown Sylow recipe %r", meta.sylow_recipe)
        return None
    if Q.degree != G.degree or not all(G.contains(g) for g in Q.generators):
        logger.warning("metadata of %s does not match its generators; ignoring the Sylow recipe", G)
        return None
    return SylowResult(G.subgroup(Q.generators), True, METADATA)


def _normalizes(x: Permutation, Q: PermGroup) -> bool:
    return all(Q.contains(g.conjugate(x)) for g in Q.generators)


def _grow(Q: PermGroup, candidates: Iterable[Permutation]) -> PermGroup:
    changed = True
    pool = list(candidates)
    while changed:
        changed = False
        for x in pool:
            if Q.contains(x) or not _normalizes(x, Q):
                continue
            Q = Q.subgroup(Q.generators + (x,))
            changed = True
    return Q


def _exhaustive(G: PermGroup, p: int) -> PermGroup:
    p_elements = [x for x in G.elements() if not x.is_identity() and FactoredInteger.from_int(x.order()).is_p_power(p)]
    return _grow(G.subgroup([]), p_elements)


def _climb(G: PermGroup, p: int, target: FactoredInteger, seed: int, budget: int) -> SylowResult:
    rng = Random(seed)
    Q = G.subgroup([])
    for _ in range(budget):
        if Q.order() == target:
            break
        y = p_part_element(G.random_element(rng), p)
        if y.is_identity():
            continue
        y = y.conjugate(G.random_element(rng))
        if Q.contains(y):
            continue
        if _normalizes(y, Q):
            Q = Q.subgroup(Q.generators + (y,))
            continue
        J = join(G, Q, G.subgroup([y]))
        if J.is_p_group(p):
            Q = J
    if Q.order() != target:
        logger.warning("Sylow climb for p=%d stalled at order %s of %s after %d attempts",
                       p, Q.order(), target, budget)
    return SylowResult(Q, Q.order() == target, CLIMB)

