"""Homomorphisms given by actions: block actions, factor actions and coset actions.

Every :class:`GroupHom` is produced by an action of the source group, so the
generator images always extend to a homomorphism. Kernels and lifts use an
augmented domain: the source acts on its own points and, shifted past them, on
the target points. Placing the image's base first in the augmented chain makes
the stabilizer of that prefix the kernel.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Union

from ..errors import DegreeMismatch, IndexCapExceeded, NotInImage, NotInvariant, NotNormal
from .chain import StabilizerChain
from .group import PermGroup, is_normal, orbit_partition
from .permutation import Permutation

logger = logging.getLogger("nslen.hom")

DEFAULT_INDEX_CAP = 10 ** 5

Block = Union[Sequence[int], PermGroup]


class GroupHom:
    """A homomorphism from ``source`` into the symmetric group of degree ``target_degree``."""

    def __init__(self, source: PermGroup, target_degree: int, images: Sequence[Permutation],
                 act: Callable[[Permutation], Permutation]) -> None:
        if len(images) != len(source.generators):
            raise ValueError("one image per source generator is required")
        for h in images:
            if h.degree != target_degree:
                raise DegreeMismatch(f"image {h} does not have degree {target_degree}")
        self.source = source
        self.target_degree = target_degree
        self.images = tuple(images)
        self._act = act

    def apply(self, g: Permutation) -> Permutation:
        return self._act(g)

    __call__ = apply

    @cached_property
    def image(self) -> PermGroup:
        return PermGroup(self.target_degree, self.images, seed=self.source._seed)

    @cached_property
    def _augmented(self) -> StabilizerChain:
        d = self.source.degree
        gens = [Permutation._raw(g.images + tuple(d + j for j in h.images))
                for g, h in zip(self.source.generators, self.images)]
        prefix = [d + b for b in self.image.chain.base]
        return StabilizerChain.build(d + self.target_degree, gens, seed=self.source._seed,
                                     base_prefix=prefix)

    @cached_property
    def kernel(self) -> PermGroup:
        d = self.source.degree
        depth = len(self.image.chain.base)
        gens = [g.restricted(d) for g in self._augmented.stabilizer_generators(depth)]
        return self.source.subgroup(gens)

    def lift(self, h: Permutation) -> Permutation:
        """An element of the source mapping to ``h``."""
        if h.degree != self.target_degree:
            raise DegreeMismatch(f"{h} does not have the target degree {self.target_degree}")
        d = self.source.degree
        depth = len(self.image.chain.base)
        full = Permutation._raw(tuple(range(d)) + tuple(d + j for j in h.images))
        residue, reached = self._augmented.sift(full, 0, depth)
        if reached < depth or any(residue.images[d + i] != d + i for i in range(self.target_degree)):
            raise NotInImage(f"{h} is not in the image")
        return (residue.inverse() * full).restricted(d)


class CosetHom(GroupHom):
    """The action of ``G`` on the right cosets of a normal subgroup ``N``.

    The kernel is ``N`` and ``G/N`` acts regularly, so the coset representative
    of ``0^h`` is a lift of ``h``.
    """

    def __init__(self, source: PermGroup, normal: PermGroup, reps: List[Permutation],
                 canon: Callable[[Permutation], Permutation], index: Dict[Permutation, int]) -> None:
        self.normal = normal
        self.reps = reps
        self._canon = canon
        self._index = index
        images = [self._coset_image(g) for g in source.generators]
        super().__init__(source, len(reps), images, self._coset_image)

    def _coset_image(self, g: Permutation) -> Permutation:
        return Permutation._raw(tuple(self._index[self._canon(r * g)] for r in self.reps))

    @cached_property
    def kernel(self) -> PermGroup:
        return self.normal

    def lift(self, h: Permutation) -> Permutation:
        if h.degree != self.target_degree:
            raise DegreeMismatch(f"{h} does not have the target degree {self.target_degree}")
        x = self.reps[h.images[0]]
        if self._coset_image(x) != h:
            raise NotInImage(f"{h} is not in the image")
        return x


def induced_action(G: PermGroup, blocks: Sequence[Block]) -> GroupHom:
    """The action of ``G`` on a list of point blocks or, by conjugation, of subgroups."""
    if not blocks:
        raise ValueError("at least one block is required")
    if all(isinstance(b, PermGroup) for b in blocks):
        return _factor_action(G, list(blocks))
    return _block_action(G, [tuple(b) for b in blocks])


def _block_action(G: PermGroup, blocks: List[tuple]) -> GroupHom:
    owner: Dict[int, int] = {}
    for i, block in enumerate(blocks):
        if not block:
            raise ValueError("blocks must be nonempty")
        for point in block:
            if point in owner:
                raise ValueError(f"point {point} lies in two blocks")
            owner[point] = i
    block_sets = [frozenset(b) for b in blocks]

    def act(g: Permutation) -> Permutation:
        return Permutation._raw(tuple(owner[g.images[b[0]]] for b in blocks))

    images = []
    for g in G.generators:
        h = []
        for i, block in enumerate(blocks):
            j = owner.get(g.images[block[0]])
            if j is None or frozenset(g.images[x] for x in block) != block_sets[j]:
                raise NotInvariant(f"generator {g} maps block {i} outside the block list")
            h.append(j)
        images.append(Permutation._raw(tuple(h)))
    return GroupHom(G, len(blocks), images, act)


def _support(S: PermGroup) -> frozenset:
    return frozenset(x for g in S.generators for x in g.support())


def _factor_action(G: PermGroup, factors: List[PermGroup]) -> GroupHom:
    supports = [_support(S) for S in factors]
    disjoint = all(supports) and sum(map(len, supports)) == len(frozenset().union(*supports))
    owner = {x: i for i, sup in enumerate(supports) for x in sup} if disjoint else {}

    def target_by_support(g: Permutation, i: int) -> Optional[int]:
        j = owner.get(g.images[min(supports[i])])
        if j is None or frozenset(g.images[x] for x in supports[i]) != supports[j]:
            return None
        return j

    def target_by_membership(g: Permutation, i: int) -> Optional[int]:
        conj = [s.conjugate(g) for s in factors[i].generators]
        for j, S in enumerate(factors):
            if S.order() == factors[i].order() and all(S.contains(c) for c in conj):
                return j
        return None

    def act(g: Permutation) -> Permutation:
        find = target_by_support if disjoint else target_by_membership
        return Permutation._raw(tuple(find(g, i) for i in range(len(factors))))

    images = []
    for g in G.generators:
        h = []
        for i, S in enumerate(factors):
            j = target_by_support(g, i) if disjoint else target_by_membership(g, i)
            if j is not None and disjoint:
                if not all(factors[j].contains(s.conjugate(g)) for s in S.generators):
                    j = None
            if j is None:
                raise NotInvariant(f"generator {g} conjugates factor {i} outside the factor list")
            h.append(j)
        if sorted(h) != list(range(len(factors))):
            raise NotInvariant(f"generator {g} does not permute the factor list")
        images.append(Permutation._raw(tuple(h)))
    return GroupHom(G, len(factors), images, act)


def identity_hom(G: PermGroup) -> GroupHom:
    return _block_action(G, [(i,) for i in range(G.degree)])


def coset_action(G: PermGroup, N: PermGroup, index_cap: int = DEFAULT_INDEX_CAP) -> CosetHom:
    """Action of ``G`` on the right cosets of the normal subgroup ``N``."""
    if not is_normal(N, G):
        raise NotNormal(f"{N} is not normal in {G}")
    index = (G.order() / N.order()).value
    if index > index_cap:
        raise IndexCapExceeded(f"index {index} exceeds the coset cap {index_cap}",
                               order=index, cap=index_cap)
    levels = N.chain.levels

    def canon(x: Permutation) -> Permutation:
        # lexicographically least base images over the coset N x
        for level in levels:
            omega = min(level.orbit, key=lambda w: x.images[w])
            x = level.transversal[omega] * x
        return x

    first = canon(G.identity())
    reps = [first]
    positions = {first: 0}
    for r in reps:
        for g in G.generators:
            c = canon(r * g)
            if c not in positions:
                positions[c] = len(reps)
                reps.append(c)
    logger.debug("coset action: index %d", len(reps))
    return CosetHom(G, N, reps, canon, positions)


def preimage(f: GroupHom, H: PermGroup) -> PermGroup:
    """The full inverse image of ``H`` under ``f``."""
    if H.degree != f.target_degree:
        raise DegreeMismatch(f"subgroup degree {H.degree} differs from target degree {f.target_degree}")
    for h in H.generators:
        if not f.image.contains(h):
            raise NotInImage(f"{h} is not in the image of the homomorphism")
    gens = list(f.kernel.generators) + [f.lift(h) for h in H.generators]
    return f.source.subgroup([g for g in gens if not g.is_identity()])


def quotient(G: PermGroup, N: PermGroup, index_cap: int = DEFAULT_INDEX_CAP) -> GroupHom:
    """A homomorphism with kernel ``N``, preferring the small action on ``N``-orbits."""
    if N.is_trivial():
        return identity_hom(G)
    orbits = orbit_partition(N)
    moved = [b for b in orbits if any(g.images[b[0]] not in b for g in G.generators)]
    try:
        f = _block_action(G, moved or orbits[:1])
    except NotInvariant:
        f = None
    if f is not None and f.kernel.order() == N.order():
        logger.debug("quotient via %d orbit blocks", f.target_degree)
        return f
    return coset_action(G, N, index_cap)
