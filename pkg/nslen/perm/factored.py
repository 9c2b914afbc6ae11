"""Group orders kept as prime-exponent maps."""

from functools import reduce
from typing import Dict, Iterable, Mapping, Tuple

from sympy import factorint, isprime


class FactoredInteger:
    """A positive integer stored as ``{prime: exponent}``; the empty map is 1."""

    __slots__ = ("_factors",)

    def __init__(self, factors: Mapping[int, int] = None) -> None:
        clean: Dict[int, int] = {}
        for p, e in (factors or {}).items():
            p, e = int(p), int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e} for prime {p}")
            if e == 0:
                continue
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            clean[p] = e
        self._factors: Tuple[Tuple[int, int], ...] = tuple(sorted(clean.items()))

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        n = int(n)
        if n < 1:
            raise ValueError(f"expected a positive integer, got {n}")
        return cls(factorint(n))

    @classmethod
    def product(cls, items: Iterable["FactoredInteger"]) -> "FactoredInteger":
        return reduce(lambda a, b: a * b, items, cls())

    @classmethod
    def lcm_of(cls, items: Iterable["FactoredInteger"]) -> "FactoredInteger":
        out: Dict[int, int] = {}
        for item in items:
            for p, e in item.factors.items():
                out[p] = max(out.get(p, 0), e)
        return cls(out)

    @property
    def factors(self) -> Dict[int, int]:
        return dict(self._factors)

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self._factors)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self._factors:
            out *= p ** e
        return out

    def __int__(self) -> int:
        return self.value

    def exponent_of(self, p: int) -> int:
        return dict(self._factors).get(int(p), 0)

    def p_part(self, p: int) -> "FactoredInteger":
        e = self.exponent_of(p)
        return FactoredInteger({p: e} if e else {})

    def p_prime_part(self, p: int) -> "FactoredInteger":
        return FactoredInteger({q: e for q, e in self._factors if q != int(p)})

    def is_one(self) -> bool:
        return not self._factors

    def is_p_power(self, p: int) -> bool:
        return all(q == int(p) for q, _ in self._factors)

    def divides(self, other: "FactoredInteger") -> bool:
        theirs = other.factors
        return all(theirs.get(p, 0) >= e for p, e in self._factors)

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        out = self.factors
        for p, e in other._factors:
            out[p] = out.get(p, 0) + e
        return FactoredInteger(out)

    def __pow__(self, k: int) -> "FactoredInteger":
        return FactoredInteger({p: e * int(k) for p, e in self._factors})

    def __truediv__(self, other: "FactoredInteger") -> "FactoredInteger":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        out = self.factors
        for p, e in other._factors:
            out[p] -= e
        return FactoredInteger(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other
        if not isinstance(other, FactoredInteger):
            return NotImplemented
        return self._factors == other._factors

    def __lt__(self, other: "FactoredInteger") -> bool:
        return self.value < int(other)

    def __le__(self, other: "FactoredInteger") -> bool:
        return self.value <= int(other)

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        if not self._factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self._factors)

    def __repr__(self) -> str:
        return f"FactoredInteger({dict(self._factors)!r})"


def p_part(n: FactoredInteger, p: int) -> FactoredInteger:
    """The p-component of ``n``."""
    return n.p_part(p)
