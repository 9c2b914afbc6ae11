"""Stabilizer chains by the Schreier-Sims algorithm.

A chain is built in two phases. An optional randomized phase (seeded product
replacement, sifting random elements and keeping the residues) produces a
small strong generating set quickly. The deterministic phase then sifts every
Schreier generator of every level exactly once; residues that do not sift are
added as new strong generators, which queues their own Schreier generators.
When the queue is empty every Schreier generator sifts to the identity, so the
chain is a base and strong generating set whatever the randomized phase did.
"""

import logging
from collections import deque
from random import Random
from typing import Deque, Dict, Iterator, List, Optional, Sequence, Tuple

from .factored import FactoredInteger
from .permutation import Permutation

logger = logging.getLogger("nslen.chain")

RANDOM_EXIT_ROUNDS = 10
RANDOM_MAX_ROUNDS = 2000
VERIFY_CAP = 10 ** 5


class _Level:
    __slots__ = ("base_point", "generators", "orbit", "transversal", "inverses", "queue")

    def __init__(self, base_point: int, degree: int) -> None:
        identity = Permutation.identity(degree)
        self.base_point = base_point
        self.generators: List[Permutation] = []
        self.orbit: List[int] = [base_point]
        self.transversal: Dict[int, Permutation] = {base_point: identity}
        self.inverses: Dict[int, Permutation] = {base_point: identity}
        self.queue: Deque[Tuple[int, int]] = deque()


class _ProductReplacer:
    """Approximately uniform random elements of <gens> (the "rattle" variant)."""

    def __init__(self, gens: Sequence[Permutation], rng: Random, slots: int = 10,
                 scramble: int = 50) -> None:
        self.rng = rng
        self.state = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.accumulator = Permutation.identity(gens[0].degree)
        for _ in range(max(scramble, 4 * len(gens))):
            self.next()

    def next(self) -> Permutation:
        i, j = self.rng.sample(range(len(self.state)), 2)
        other = self.state[j]
        if self.rng.randrange(2):
            other = other.inverse()
        if self.rng.randrange(2):
            self.state[i] = self.state[i] * other
        else:
            self.state[i] = other * self.state[i]
        self.accumulator = self.accumulator * self.state[i]
        return self.accumulator


class StabilizerChain:
    """Base, transversals and strong generators of a permutation group."""

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()) -> None:
        self.degree = degree
        self.levels: List[_Level] = []
        self.verified = False
        for point in base_prefix:
            self.levels.append(_Level(point, degree))

    @classmethod
    def build(cls, degree: int, generators: Sequence[Permutation], seed: Optional[int] = None,
              base_prefix: Sequence[int] = (), verify_cap: int = 0) -> "StabilizerChain":
        """Build the chain; rerun :meth:`verify` when the order is at most ``verify_cap``."""
        chain = cls(degree, base_prefix)
        gens = [g for g in generators if not g.is_identity()]
        if seed is not None and gens:
            chain._random_phase(gens, Random(seed))
        for g in gens:
            chain.add_generator(g, complete=False)
        chain.complete()
        if chain.order().value <= verify_cap and not chain.verify():
            raise AssertionError(f"stabilizer chain of order {chain.order()} failed Schreier verification")
        logger.debug("chain: degree=%d base_length=%d order=%s",
                     degree, len(chain.levels), chain.order())
        return chain

    @property
    def base(self) -> Tuple[int, ...]:
        return tuple(level.base_point for level in self.levels)

    @property
    def strong_generators(self) -> List[Permutation]:
        seen = set()
        out = []
        for level in self.levels:
            for g in level.generators:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def stabilizer_generators(self, depth: int) -> List[Permutation]:
        """Generators of the pointwise stabilizer of the first ``depth`` base points."""
        if depth >= len(self.levels):
            return []
        return list(self.levels[depth].generators)

    def transversal_sizes(self) -> List[int]:
        return [len(level.orbit) for level in self.levels]

    def order(self) -> FactoredInteger:
        return FactoredInteger.product(
            FactoredInteger.from_int(size) for size in self.transversal_sizes())

    def sift(self, g: Permutation, start: int = 0,
             stop: Optional[int] = None) -> Tuple[Permutation, int]:
        """Strip ``g`` through the levels; return the residue and the level reached."""
        stop = len(self.levels) if stop is None else min(stop, len(self.levels))
        for index in range(start, stop):
            level = self.levels[index]
            inverse = level.inverses.get(g.images[level.base_point])
            if inverse is None:
                return g, index
            g = g * inverse
        return g, stop

    def contains(self, g: Permutation) -> bool:
        residue, depth = self.sift(g)
        return depth == len(self.levels) and residue.is_identity()

    def add_generator(self, g: Permutation, complete: bool = True) -> bool:
        """Add ``g`` to the group; return True when the group grew."""
        residue, depth = self.sift(g)
        if depth == len(self.levels) and residue.is_identity():
            return False
        self._add_strong(residue, 0, depth)
        self.verified = False
        if complete:
            self.complete()
        return True

    def complete(self) -> None:
        """Sift every pending Schreier generator until none is left."""
        while True:
            index = self._deepest_pending()
            if index is None:
                break
            level = self.levels[index]
            beta, gen_index = level.queue.popleft()
            s = level.generators[gen_index]
            image = s.images[beta]
            u = level.transversal[beta]
            if image not in level.transversal:
                rep = u * s
                level.transversal[image] = rep
                level.inverses[image] = rep.inverse()
                level.orbit.append(image)
                for k in range(len(level.generators)):
                    level.queue.append((image, k))
                continue
            schreier = u * s * level.inverses[image]
            if schreier.is_identity():
                continue
            residue, depth = self.sift(schreier, index + 1)
            if depth == len(self.levels) and residue.is_identity():
                continue
            self._add_strong(residue, index + 1, depth)
        self.verified = True

    def verify(self) -> bool:
        """Recheck from scratch that every Schreier generator sifts to the identity."""
        self.verified = all(self._level_sifts(index) for index in range(len(self.levels)))
        return self.verified

    def _level_sifts(self, index: int) -> bool:
        level = self.levels[index]
        for beta in level.orbit:
            u = level.transversal[beta]
            for s in level.generators:
                image = s.images[beta]
                if image not in level.transversal:
                    return False
                residue, depth = self.sift(u * s * level.inverses[image], index + 1)
                if depth != len(self.levels) or not residue.is_identity():
                    return False
        return True

    def random_element(self, rng: Random) -> Permutation:
        g = Permutation.identity(self.degree)
        for level in reversed(self.levels):
            g = g * level.transversal[level.orbit[rng.randrange(len(level.orbit))]]
        return g

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, depth first over the transversals."""
        reps = [[level.transversal[b] for b in level.orbit] for level in self.levels]

        def walk(index: int, acc: Permutation) -> Iterator[Permutation]:
            if index < 0:
                yield acc
                return
            for u in reps[index]:
                yield from walk(index - 1, acc * u)

        yield from walk(len(self.levels) - 1, Permutation.identity(self.degree))

    def _deepest_pending(self) -> Optional[int]:
        for index in range(len(self.levels) - 1, -1, -1):
            if self.levels[index].queue:
                return index
        return None

    def _add_strong(self, h: Permutation, first: int, last: int) -> None:
        if last == len(self.levels):
            self.levels.append(_Level(h.support()[0], self.degree))
        for index in range(first, last + 1):
            level = self.levels[index]
            level.generators.append(h)
            k = len(level.generators) - 1
            for beta in level.orbit:
                level.queue.append((beta, k))

    def _random_phase(self, gens: Sequence[Permutation], rng: Random) -> None:
        replacer = _ProductReplacer(gens, rng)
        quiet = 0
        rounds = 0
        while quiet < RANDOM_EXIT_ROUNDS and rounds < RANDOM_MAX_ROUNDS:
            rounds += 1
            residue, depth = self.sift(replacer.next())
            if depth == len(self.levels) and residue.is_identity():
                quiet += 1
                continue
            quiet = 0
            self._add_strong(residue, 0, depth)
            self._extend_orbits()
        logger.debug("random phase: %d rounds, base length %d", rounds, len(self.levels))

    def _extend_orbits(self) -> None:
        for level in self.levels:
            pending = deque(level.orbit)
            while pending:
                beta = pending.popleft()
                u = level.transversal[beta]
                for s in level.generators:
                    image = s.images[beta]
                    if image not in level.transversal:
                        rep = u * s
                        level.transversal[image] = rep
                        level.inverses[image] = rep.inverse()
                        level.orbit.append(image)
                        pending.append(image)
                        for k in range(len(level.generators)):
                            level.queue.append((image, k))
