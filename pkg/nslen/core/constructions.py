"""Builders for named permutation groups, direct and wreath products.

Every built group carries a :class:`StructureMetadata` whose ``parts`` are
construction expressions, so the components of a product can be rebuilt from a
saved group file. The metadata is advisory: nothing computed from it is
unavailable without it.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import isprime, primitive_root

from ..errors import UnsupportedConstruction
from ..perm import PermGroup, Permutation

logger = logging.getLogger("nslen.constructions")

PSL2_MAX_Q = 101
KINDS = ("named", "direct", "wreath")


@dataclass(frozen=True)
class StructureMetadata:
    kind: str
    parts: Tuple[str, ...]
    blocks: Tuple[Tuple[int, ...], ...]
    sylow_recipe: Optional[str] = None

    @property
    def expression(self) -> str:
        if self.kind == "named":
            return self.parts[0]
        return f"{self.kind}({','.join(self.parts)})"

    @property
    def opaque(self) -> bool:
        """True when some component has no construction expression."""
        return any(not part for part in self.parts)

    def components(self) -> List[PermGroup]:
        return [build(part) for part in self.parts]

    def to_record(self) -> Dict:
        return {
            "kind": self.kind,
            "parts": list(self.parts),
            "blocks": [list(b) for b in self.blocks],
            "sylow_recipe": self.sylow_recipe,
        }

    @classmethod
    def from_record(cls, record: Dict) -> "StructureMetadata":
        kind = record["kind"]
        if kind not in KINDS:
            raise ValueError(f"unknown structure kind {kind!r}")
        parts = tuple(str(p) for p in record["parts"])
        blocks = tuple(tuple(int(x) for x in b) for b in record["blocks"])
        recipe = record.get("sylow_recipe")
        return cls(kind, parts, blocks, recipe)

    def check(self, degree: int) -> None:
        points = sorted(x for b in self.blocks for x in b)
        if points != list(range(degree)):
            raise ValueError(f"metadata blocks do not partition {degree} points")


def _named(expression: str, degree: int, gens: Sequence[Permutation], name: str) -> PermGroup:
    meta = StructureMetadata("named", (expression,), (tuple(range(degree)),))
    return PermGroup(degree, [g for g in gens if not g.is_identity()], name=name, metadata=meta)


def symmetric(n: int) -> PermGroup:
    _require(n >= 1, f"symmetric needs n >= 1, got {n}")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [range(n)]))
    return _named(f"symmetric({n})", n, gens, f"S{n}")


def alternating(n: int) -> PermGroup:
    _require(n >= 1, f"alternating needs n >= 1, got {n}")
    gens = []
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [(0, 1, 2)]))
    if n >= 4:
        long_cycle = range(n) if n % 2 else range(1, n)
        gens.append(Permutation.from_cycles(n, [long_cycle]))
    return _named(f"alternating({n})", n, gens, f"A{n}")


def cyclic(n: int) -> PermGroup:
    _require(n >= 1, f"cyclic needs n >= 1, got {n}")
    return _named(f"cyclic({n})", n, [Permutation.from_cycles(n, [range(n)])], f"C{n}")


def dihedral(n: int) -> PermGroup:
    """The dihedral group of order 2n: on 2 points for n = 1, regular Klein four for n = 2."""
    _require(n >= 1, f"dihedral needs n >= 1, got {n}")
    if n == 1:
        return _named("dihedral(1)", 2, [Permutation.from_cycles(2, [(0, 1)])], "D2")
    if n == 2:
        gens = [Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])]
        return _named("dihedral(2)", 4, gens, "D4")
    rotation = Permutation.from_cycles(n, [range(n)])
    reflection = Permutation([(-i) % n for i in range(n)])
    return _named(f"dihedral({n})", n, [rotation, reflection], f"D{2 * n}")


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the projective line, with infinity as point ``q``."""
    _require(isprime(q) and q % 2 == 1 and q <= PSL2_MAX_Q,
             f"psl2 needs an odd prime q <= {PSL2_MAX_Q}, got {q}")
    inf = q
    k2 = pow(int(primitive_root(q)), 2, q)
    translate = [(x + 1) % q for x in range(q)] + [inf]
    scale = [(k2 * x) % q for x in range(q)] + [inf]
    invert = [inf] + [(-pow(x, -1, q)) % q for x in range(1, q)] + [0]
    gens = [Permutation(translate), Permutation(scale), Permutation(invert)]
    return _named(f"psl2({q})", q + 1, gens, f"PSL(2,{q})")


def trivial(n: int = 1) -> PermGroup:
    _require(n >= 1, f"trivial needs n >= 1, got {n}")
    return _named(f"trivial({n})", n, [], "1")


def _expression(G: PermGroup) -> str:
    return G.metadata.expression if G.metadata is not None else ""


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    d = A.degree + B.degree
    gens = [a.extended(d, 0) for a in A.generators] + [b.extended(d, A.degree) for b in B.generators]
    blocks = (tuple(range(A.degree)), tuple(range(A.degree, d)))
    meta = StructureMetadata("direct", (_expression(A), _expression(B)), blocks, "direct")
    return PermGroup(d, gens, name=f"{A}x{B}", metadata=meta)


def wreath_product(A: PermGroup, B: PermGroup) -> PermGroup:
    """``A wr B``: ``B.degree`` copies of ``A`` on blocks ``j*deg(A) + i``, permuted by ``B``."""
    da, k = A.degree, B.degree
    d = da * k
    gens = [a.extended(d, j * da) for j in range(k) for a in A.generators]
    for b in B.generators:
        gens.append(Permutation._raw(tuple(b.images[j] * da + i for j in range(k) for i in range(da))))
    blocks = tuple(tuple(range(j * da, (j + 1) * da)) for j in range(k))
    meta = StructureMetadata("wreath", (_expression(A), _expression(B)), blocks, "wreath")
    return PermGroup(d, gens, name=f"{A}wr{B}", metadata=meta)


def build_named(kind: str, n: int) -> PermGroup:
    builder = NAMED_BUILDERS.get(kind)
    if builder is None:
        raise UnsupportedConstruction(f"unknown group family {kind!r}")
    return builder(n)


NAMED_BUILDERS = {
    "symmetric": symmetric,
    "alternating": alternating,
    "cyclic": cyclic,
    "dihedral": dihedral,
    "psl2": psl2,
    "trivial": trivial,
}
PRODUCTS = {"direct": direct_product, "wreath": wreath_product}

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<punct>[(),]))")

Node = Union[int, Tuple[str, list]]


class _ExpressionParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if not match:
                raise UnsupportedConstruction(f"cannot parse construction {text!r} at offset {pos}")
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind)))
            pos = match.end()
        self.index = 0

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else (None, None)

    def _take(self, value: Optional[str] = None):
        token = self._peek()
        if token[0] is None or (value is not None and token[1] != value):
            raise UnsupportedConstruction(f"malformed construction {self.text!r}: expected {value or 'more input'}")
        self.index += 1
        return token

    def parse(self) -> Node:
        node = self._node()
        if self.index != len(self.tokens):
            raise UnsupportedConstruction(f"trailing input in construction {self.text!r}")
        return node

    def _node(self) -> Node:
        kind, value = self._take()
        if kind == "int":
            return int(value)
        if kind != "name":
            raise UnsupportedConstruction(f"malformed construction {self.text!r}")
        self._take("(")
        args = []
        if self._peek()[1] != ")":
            args.append(self._node())
            while self._peek()[1] == ",":
                self._take(",")
                args.append(self._node())
        self._take(")")
        return (value.lower(), args)


def _construct(node: Node) -> PermGroup:
    if isinstance(node, int):
        raise UnsupportedConstruction(f"expected a group, got the number {node}")
    name, args = node
    if name in PRODUCTS:
        if len(args) != 2:
            raise UnsupportedConstruction(f"{name} takes two groups, got {len(args)} arguments")
        return PRODUCTS[name](_construct(args[0]), _construct(args[1]))
    if name in NAMED_BUILDERS:
        if len(args) > 1 or not all(isinstance(a, int) for a in args):
            raise UnsupportedConstruction(f"{name} takes one integer argument")
        if not args and name != "trivial":
            raise UnsupportedConstruction(f"{name} needs an integer argument")
        return build_named(name, *args)
    raise UnsupportedConstruction(f"unknown construction {name!r}")


def build(expression: str) -> PermGroup:
    """Build a group from an expression such as ``wreath(alternating(5),cyclic(5))``."""
    return _construct(_ExpressionParser(expression).parse())


STANDARD_CORPUS = (
    ("A5", "alternating(5)"),
    ("S5", "symmetric(5)"),
    ("PSL2_7", "psl2(7)"),
    ("S4xA5", "direct(symmetric(4),alternating(5))"),
    ("A5wrC5", "wreath(alternating(5),cyclic(5))"),
    ("C5wrC5", "wreath(cyclic(5),cyclic(5))"),
    ("A5wrA5", "wreath(alternating(5),alternating(5))"),
    ("S4", "symmetric(4)"),
    ("S3", "symmetric(3)"),
    ("A4", "alternating(4)"),
    ("C5", "cyclic(5)"),
    ("PSL2_11", "psl2(11)"),
    ("D8", "dihedral(4)"),
)


def standard_corpus() -> List[PermGroup]:
    groups = []
    for name, expression in STANDARD_CORPUS:
        G = build(expression)
        G.name = name
        groups.append(G)
    return groups


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UnsupportedConstruction(message)
