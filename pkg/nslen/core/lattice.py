"""Brute-force oracles over the lattice of normal subgroups of a small group.

Groups are handled as explicit element sets, with no stabilizer chains, so the
answers here are independent of :mod:`nslen.core.radicals` and
:mod:`nslen.core.lengths`. Properties of a normal subgroup ``M/N`` are read
off a chief series between ``N`` and ``M``: an abelian chief factor has prime
power order, a nonabelian one does not.
"""

import logging
from collections import deque
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Sequence

from ..errors import CapExceeded, PreconditionError
from ..perm import FactoredInteger, PermGroup
from .radicals import P_GROUP, P_PRIME_GROUP, P_SOLUBLE, PREDICATES, SOLUBLE

logger = logging.getLogger("nslen.lattice")

ORACLE_CAP = 2000
LATTICE_CAP = 200

Subset = FrozenSet[Hashable]


class FiniteGroup:
    """A group given by its element list and multiplication."""

    def __init__(self, elements: Sequence[Hashable], op: Callable, inv: Callable, identity: Hashable,
                 generators: Sequence[Hashable]) -> None:
        self.elements = list(elements)
        self.op = op
        self.inv = inv
        self.identity = identity
        self.generators = list(generators)
        self._classes: Optional[List[Subset]] = None
        self._lattice: Optional[List[Subset]] = None

    @classmethod
    def from_perm_group(cls, G: PermGroup, cap: int = ORACLE_CAP) -> "FiniteGroup":
        if G.order_int > cap:
            raise CapExceeded(f"oracle needs |G| <= {cap}, got {G.order()}", order=G.order_int, cap=cap)
        return cls(G.elements(cap), lambda a, b: a * b, lambda a: a.inverse(), G.identity(), G.generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def whole(self) -> Subset:
        return frozenset(self.elements)

    def conj(self, x, g):
        return self.op(self.op(self.inv(g), x), g)

    def generated(self, gens: Sequence[Hashable]) -> Subset:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.op(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generating_set(self, H: Subset) -> List[Hashable]:
        gens: List[Hashable] = []
        current = frozenset([self.identity])
        for x in H:
            if x not in current:
                gens.append(x)
                current = self.generated(gens)
        return gens

    def normal_closure(self, xs: Sequence[Hashable], conjugators: Optional[Sequence[Hashable]] = None) -> Subset:
        conjugators = self.generators if conjugators is None else conjugators
        gens = [x for x in xs if x != self.identity]
        H = self.generated(gens)
        grown = True
        while grown:
            grown = False
            for h in list(gens):
                for g in conjugators:
                    c = self.conj(h, g)
                    if c not in H:
                        gens.append(c)
                        H = self.generated(gens)
                        grown = True
        return H

    def classes(self) -> List[Subset]:
        if self._classes is None:
            seen = set()
            out = []
            for x in self.elements:
                if x in seen:
                    continue
                orbit = {x}
                queue = deque([x])
                while queue:
                    y = queue.popleft()
                    for g in self.generators:
                        z = self.conj(y, g)
                        if z not in orbit:
                            orbit.add(z)
                            queue.append(z)
                seen |= orbit
                out.append(frozenset(orbit))
            self._classes = out
        return self._classes

    def product(self, A: Subset, B: Subset) -> Subset:
        if B <= A:
            return A
        if A <= B:
            return B
        return frozenset(self.op(a, b) for a in A for b in B)

    def normal_lattice(self, cap: Optional[int] = None) -> List[Subset]:
        """Every normal subgroup, smallest first."""
        if self._lattice is None:
            closures = {self.normal_closure([next(iter(c))]) for c in self.classes()}
            trivial = frozenset([self.identity])
            members = {trivial}
            queue = deque([trivial])
            while queue:
                N = queue.popleft()
                for C in closures:
                    J = self.product(N, C)
                    if J not in members:
                        members.add(J)
                        queue.append(J)
                        if cap is not None and len(members) > cap:
                            raise CapExceeded(f"normal lattice has more than {cap} members",
                                              order=self.order, cap=cap)
            self._lattice = sorted(members, key=lambda N: (len(N), sorted(map(str, N))))
        if cap is not None and len(self._lattice) > cap:
            raise CapExceeded(f"normal lattice has more than {cap} members", order=self.order, cap=cap)
        return self._lattice

    def quotient(self, M: Subset, N: Subset) -> "FiniteGroup":
        """``M/N`` for normal subgroups ``N <= M`` of this group."""
        coset: Dict[Hashable, int] = {}
        reps: List[Hashable] = []
        for m in sorted(M, key=str):
            if m in coset:
                continue
            index = len(reps)
            reps.append(m)
            for n in N:
                coset[self.op(n, m)] = index
        gens = sorted({coset[g] for g in self.generating_set(M)})
        return FiniteGroup(range(len(reps)), lambda i, j: coset[self.op(reps[i], reps[j])],
                           lambda i: coset[self.inv(reps[i])], coset[self.identity], gens)

    def subgroup(self, H: Subset) -> "FiniteGroup":
        return FiniteGroup(sorted(H, key=str), self.op, self.inv, self.identity, self.generating_set(H))


def _prime_power(n: int) -> bool:
    return n == 1 or len(FactoredInteger.from_int(n).primes) == 1


def _chief_orders(lattice: List[Subset], N: Subset, M: Subset) -> List[int]:
    """Orders of the factors of a chief series of the ambient group from ``N`` to ``M``."""
    orders = []
    current = N
    while current != M:
        cover = next(L for L in lattice if current < L <= M)
        orders.append(len(cover) // len(current))
        current = cover
    return orders


def _factor_ok(order: int, pred: str, p: Optional[int]) -> bool:
    if pred == SOLUBLE:
        return _prime_power(order)
    if pred == P_SOLUBLE:
        return FactoredInteger.from_int(order).is_p_power(p) or order % p != 0
    raise PreconditionError(f"unknown chief-factor property {pred!r}")


def has_property(lattice: List[Subset], N: Subset, M: Subset, pred: str, p: Optional[int] = None) -> bool:
    """Whether ``M/N`` has ``pred``, for ambient-normal ``N <= M``."""
    order = len(M) // len(N)
    if pred == P_GROUP:
        return FactoredInteger.from_int(order).is_p_power(p)
    if pred == P_PRIME_GROUP:
        return order % p != 0
    return all(_factor_ok(o, pred, p) for o in _chief_orders(lattice, N, M))


def oracle_core(G: FiniteGroup, pred: str, p: Optional[int] = None) -> Subset:
    if pred not in PREDICATES:
        raise PreconditionError(f"unknown radical property {pred!r}")
    lattice = G.normal_lattice()
    trivial = lattice[0]
    good = [N for N in lattice if has_property(lattice, trivial, N, pred, p)]
    core = good[-1]
    if not all(N <= core for N in good):
        raise AssertionError(f"{pred} subgroups have no largest member")
    return core


def oracle_minimal_normals(G: FiniteGroup) -> List[Subset]:
    lattice = G.normal_lattice()
    nontrivial = lattice[1:]
    return [N for N in nontrivial if not any(M < N for M in nontrivial)]


def _is_simple(S: FiniteGroup) -> bool:
    whole = S.whole()
    if S.order == 1:
        return False
    return all(S.normal_closure([x], S.generators) == whole
               for x in (next(iter(c)) for c in S.classes()) if x != S.identity)


def is_semisimple(Q: FiniteGroup, p: Optional[int] = None) -> bool:
    """Whether ``Q`` is a direct product of nonabelian simple groups of order divisible by ``p``."""
    if Q.order == 1:
        return False
    socle = frozenset([Q.identity])
    for M in oracle_minimal_normals(Q):
        if _prime_power(len(M)) or (p is not None and len(M) % p != 0):
            return False
        if not _is_simple(Q.subgroup(M)):
            return False
        socle = Q.product(socle, M)
    return len(socle) == Q.order


def oracle_lambda(G: FiniteGroup, p: Optional[int], cap: int = LATTICE_CAP) -> int:
    """Fewest semisimple factors over all normal series with p-soluble or semisimple factors.

    ``p=None`` asks for soluble and nonabelian-simple factors instead.
    """
    lattice = G.normal_lattice(cap)
    pred = SOLUBLE if p is None else P_SOLUBLE
    best: Dict[Subset, int] = {lattice[0]: 0}
    for M in lattice[1:]:
        options = []
        for N in lattice:
            if not N < M or N not in best:
                continue
            if has_property(lattice, N, M, pred, p):
                options.append(best[N])
            elif all(not _prime_power(o) for o in _chief_orders(lattice, N, M)) \
                    and is_semisimple(G.quotient(M, N), p):
                options.append(best[N] + 1)
        if options:
            best[M] = min(options)
    logger.debug("lattice of %d members, p=%s: lambda=%d", len(lattice), p, best[lattice[-1]])
    return best[lattice[-1]]
