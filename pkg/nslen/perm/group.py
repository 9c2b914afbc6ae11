"""Permutation groups given by generators.

A :class:`PermGroup` is immutable: its generators never change, and its
stabilizer chain, conjugacy classes and other derived data are computed on
first use and cached.
"""

import logging
from collections import deque
from functools import cached_property
from random import Random
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..errors import CapExceeded, DegreeMismatch, ExactCapExceeded, NotAMember
from .chain import VERIFY_CAP, StabilizerChain
from .factored import FactoredInteger
from .permutation import Permutation

logger = logging.getLogger("nslen.group")

DEFAULT_ENUM_CAP = 10 ** 6
DEFAULT_CHAIN_SEED = 0


class PermGroup:
    """A finitely generated group of permutations of {0, ..., degree-1}."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 name: Optional[str] = None, metadata=None, seed: Optional[int] = DEFAULT_CHAIN_SEED,
                 chain: Optional[StabilizerChain] = None) -> None:
        if degree < 1:
            raise DegreeMismatch(f"degree must be positive, got {degree}")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self.metadata = metadata
        self._seed = seed
        self.cache: Dict = {}
        if chain is not None:
            self.__dict__["chain"] = chain

    @cached_property
    def chain(self) -> StabilizerChain:
        return build_chain(self.generators, self.degree, seed=self._seed)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def order(self) -> FactoredInteger:
        return self.chain.order()

    @property
    def order_int(self) -> int:
        return self.chain.order().value

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element of degree {g.degree} tested in group of degree {self.degree}")
        return self.chain.contains(g)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all((a * b) == (b * a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_p_group(self, p: int) -> bool:
        return self.order().is_p_power(p)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def is_normal_in(self, other: "PermGroup") -> bool:
        return is_normal(self, other)

    def subgroup(self, generators: Iterable[Permutation], name: Optional[str] = None,
                 chain: Optional[StabilizerChain] = None) -> "PermGroup":
        return PermGroup(self.degree, generators, name=name, seed=self._seed, chain=chain)

    def random_element(self, seed: Union[int, Random]) -> Permutation:
        return random_element(self, seed)

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> List[Permutation]:
        return list(enumerate_elements(self, cap))

    def conjugacy_classes(self, cap: int) -> List[FrozenSet[Permutation]]:
        key = "_classes"
        cached = self.__dict__.get(key)
        if cached is None:
            if self.order_int > cap:
                raise ExactCapExceeded(
                    f"conjugacy classes need |G| <= {cap}, got {self.order()}",
                    order=self.order_int, cap=cap)
            cached = conjugation_orbits(self, self.elements(cap))
            self.__dict__[key] = cached
        return cached

    def class_representatives(self, cap: int) -> List[Permutation]:
        return [min(cls) for cls in self.conjugacy_classes(cap)]

    def orbits(self) -> List[Tuple[int, ...]]:
        return orbit_partition(self)

    def __str__(self) -> str:
        return self.name or f"<group of degree {self.degree} with {len(self.generators)} generators>"

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)}, name={self.name!r})"


def build_chain(generators: Sequence[Permutation], degree: Optional[int] = None,
                seed: Optional[int] = DEFAULT_CHAIN_SEED,
                base_prefix: Sequence[int] = (), verify_cap: int = VERIFY_CAP) -> StabilizerChain:
    """Build a stabilizer chain for ``<generators>``, rechecked when its order is at most ``verify_cap``."""
    if degree is None:
        if not generators:
            raise DegreeMismatch("degree is required for an empty generating set")
        degree = generators[0].degree
    return StabilizerChain.build(degree, generators, seed=seed, base_prefix=base_prefix, verify_cap=verify_cap)


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def order(G: PermGroup) -> FactoredInteger:
    return G.order()


def random_element(G: PermGroup, seed: Union[int, Random]) -> Permutation:
    """A uniformly distributed element: a product of uniform transversal choices."""
    rng = seed if isinstance(seed, Random) else Random(seed)
    return G.chain.random_element(rng)


def enumerate_elements(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Permutation]:
    size = G.order_int
    if size > cap:
        raise CapExceeded(f"group order {size} exceeds enumeration cap {cap}", order=size, cap=cap)
    return G.chain.elements()


def normal_closure(G: PermGroup, elements: Iterable[Permutation], check: bool = True) -> PermGroup:
    """The smallest normal subgroup of ``G`` containing ``elements``."""
    chain = StabilizerChain(G.degree)
    gens: List[Permutation] = []
    pending = deque()
    for s in elements:
        if check and not G.contains(s):
            raise NotAMember(f"{s} is not an element of {G}")
        if chain.add_generator(s):
            gens.append(s)
            pending.append(s)
    while pending:
        n = pending.popleft()
        for g in G.generators:
            c = n.conjugate(g)
            if chain.add_generator(c):
                gens.append(c)
                pending.append(c)
    return G.subgroup(gens, chain=chain)


def join(G: PermGroup, *subgroups: PermGroup) -> PermGroup:
    """The subgroup of ``G`` generated by the given subgroups."""
    chain = StabilizerChain(G.degree)
    gens = []
    for H in subgroups:
        for h in H.generators:
            if chain.add_generator(h):
                gens.append(h)
    return G.subgroup(gens, chain=chain)


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    commutators = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, [c for c in commutators if not c.is_identity()], check=False)


def derived_series(G: PermGroup, max_len: int = 64) -> Tuple[List[PermGroup], bool]:
    """Successive derived subgroups; the flag tells whether the series reached 1."""
    series = [G]
    if G.is_trivial():
        return series, True
    while len(series) < max_len:
        last = series[-1]
        D = derived_subgroup(last)
        series.append(D)
        if D.is_trivial():
            return series, True
        if D.order() == last.order():
            return series, False
    return series, series[-1].is_trivial()


def is_soluble(G: PermGroup) -> bool:
    return derived_series(G)[1]


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    return all(N.contains(n.conjugate(g)) for n in N.generators for g in G.generators)


def commutes_elementwise(A: PermGroup, B: PermGroup) -> bool:
    return all(a * b == b * a for a in A.generators for b in B.generators)


def orbit_partition(H: PermGroup, domain: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
    """Orbits of ``H`` on ``domain`` (all points by default), sorted by smallest point."""
    points = sorted(set(domain)) if domain is not None else list(range(H.degree))
    seen = set()
    orbits = []
    for start in points:
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for g in H.generators:
                b = g.images[a]
                if b not in orbit:
                    orbit.add(b)
                    queue.append(b)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def conjugation_orbits(H: PermGroup, elements: Iterable[Permutation]) -> List[FrozenSet[Permutation]]:
    """Split an ``H``-invariant set of elements into ``H``-conjugacy classes."""
    seen = set()
    classes = []
    for x in elements:
        if x in seen:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in H.generators:
                z = y.conjugate(g)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        seen |= orbit
        classes.append(frozenset(orbit))
    return classes


def pointwise_stabilizer(G: PermGroup, points: Sequence[int]) -> PermGroup:
    """Elements of ``G`` fixing every point in ``points``, via a chain with that base prefix."""
    points = list(dict.fromkeys(points))
    chain = StabilizerChain.build(G.degree, G.generators, seed=G._seed, base_prefix=points)
    return G.subgroup(chain.stabilizer_generators(len(points)))


def p_part_element(g: Permutation, p: int) -> Permutation:
    """The p-part of ``g``: ``g**m`` where ``|g| = p^a * m`` with ``p`` not dividing ``m``."""
    n = g.order()
    m = n
    while m % p == 0:
        m //= p
    return g ** m
