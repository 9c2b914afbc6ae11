"""Permutations of {0, ..., degree-1} stored as image tuples.

Products act on the right: ``(g * h)(i) == h(g(i))``, conjugation is
``x ** g == g^-1 x g`` and commutators are ``[u, v] = u^-1 v^-1 u v``.
"""

import math
import re
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import DegreeMismatch, NslenError

_CYCLE_RE = re.compile(r"\(\s*([0-9,\s]*?)\s*\)")
_SEP_RE = re.compile(r"[\s,]+")


class Permutation:
    """An immutable permutation given by its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]) -> None:
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: Tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation from cycles, applied left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            if not cycle:
                continue
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle!r}")
            if max(cycle) >= degree or min(cycle) < 0:
                raise DegreeMismatch(f"cycle {cycle!r} does not fit degree {degree}")
            images = list(range(degree))
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            images[cycle[-1]] = cycle[0]
            result = result * cls._raw(tuple(images))
        return result

    @classmethod
    def parse(cls, text: str, degree: Optional[int] = None) -> "Permutation":
        """Parse cycle notation such as ``"(0 1 2)(3 4)"`` or ``"()"``."""
        stripped = text.strip()
        pos = 0
        cycles: List[List[int]] = []
        while pos < len(stripped):
            if stripped[pos].isspace():
                pos += 1
                continue
            match = _CYCLE_RE.match(stripped, pos)
            if not match:
                raise NslenError(f"could not parse permutation {text!r} at offset {pos}")
            body = match.group(1).strip(" ,\t\n")
            if body:
                cycles.append([int(tok) for tok in _SEP_RE.split(body) if tok])
            pos = match.end()
        needed = max((max(c) for c in cycles), default=-1) + 1
        if degree is None:
            degree = max(needed, 1)
        elif needed > degree:
            raise DegreeMismatch(f"permutation {text!r} moves points beyond degree {degree}")
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def _check(self, other: "Permutation") -> None:
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degree mismatch: {len(self.images)} vs {len(other.images)}")

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        self._check(other)
        return Permutation._raw(tuple(map(other.images.__getitem__, self.images)))

    compose = __mul__

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    __invert__ = inverse

    def __pow__(self, exponent) -> "Permutation":
        if isinstance(exponent, Permutation):
            return self.conjugate(exponent)
        n = int(exponent)
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = Permutation.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return ``g^-1 * self * g``."""
        self._check(g)
        # the conjugate maps g(i) to g(self(i))
        images = [0] * len(self.images)
        gi = g.images
        for i, j in enumerate(self.images):
            images[gi[i]] = gi[j]
        return Permutation._raw(tuple(images))

    def commutator(self, other: "Permutation") -> "Permutation":
        return self.inverse() * self.conjugate(other)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_lengths(self) -> List[int]:
        return [len(c) for c in self.cycles(include_fixed=True)]

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.images else 1

    def order_factored(self):
        from .factored import FactoredInteger
        return FactoredInteger.from_int(self.order())

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i != j)

    def restricted(self, degree: int) -> "Permutation":
        """Restrict to the first ``degree`` points, which must be an invariant set."""
        images = self.images[:degree]
        if any(j >= degree for j in images):
            raise DegreeMismatch(f"points 0..{degree - 1} are not invariant")
        return Permutation._raw(images)

    def extended(self, degree: int, offset: int = 0) -> "Permutation":
        """Embed into degree ``degree``, moving points ``offset .. offset+self.degree-1``."""
        if offset + self.degree > degree:
            raise DegreeMismatch(f"cannot embed degree {self.degree} at {offset} into {degree}")
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[offset + i] = offset + j
        return Permutation._raw(tuple(images))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, degree={self.degree})"


def permutation_algebra(op: str, *args):
    """Dispatch for the basic algebra: compose, invert, power, order.

    ``order`` returns a :class:`FactoredInteger`; the others a :class:`Permutation`.
    """
    if op == "compose":
        result = args[0]
        for other in args[1:]:
            result = result * other
        return result
    if op == "invert":
        return args[0].inverse()
    if op == "power":
        return args[0] ** args[1]
    if op == "order":
        return args[0].order_factored()
    raise ValueError(f"unknown permutation operation {op!r}")
