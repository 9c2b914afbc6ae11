"""Multilinear commutator words.

Words are trees of commutators over distinct variables ``x1, x2, ...``. The
concrete syntax brackets comma-separated words, left-normed, so ``[x1,x2,x3]``
is ``[[x1,x2],x3]``. Since the two sides of a commutator never share a
variable, the values of ``[A,B]`` on a group are exactly the commutators of a
value of ``A`` with a value of ``B``; value sets are computed level by level on
that basis.
"""

import logging
import re
from dataclasses import dataclass, field
from math import lcm
from random import Random
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..config import Budget, Certification
from ..errors import ArityMismatch, DegreeMismatch, PreconditionError, RepeatedVariable, WordSyntaxError
from ..perm import PermGroup, Permutation, batch, normal_closure

logger = logging.getLogger("nslen.words")


class Word:
    """Base class of word trees."""

    @property
    def variables(self) -> Tuple[int, ...]:
        raise NotImplementedError

    @property
    def weight(self) -> int:
        return len(self.variables)

    def shifted(self, offset: int) -> "Word":
        raise NotImplementedError


@dataclass(frozen=True)
class Leaf(Word):
    index: int

    @property
    def variables(self) -> Tuple[int, ...]:
        return (self.index,)

    def shifted(self, offset: int) -> "Leaf":
        return Leaf(self.index + offset)

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Commutator(Word):
    left: Word
    right: Word

    def __post_init__(self) -> None:
        shared = set(self.left.variables) & set(self.right.variables)
        if shared:
            raise RepeatedVariable(f"variable x{min(shared)} appears on both sides of a commutator")

    @property
    def variables(self) -> Tuple[int, ...]:
        return self.left.variables + self.right.variables

    def shifted(self, offset: int) -> "Commutator":
        return Commutator(self.left.shifted(offset), self.right.shifted(offset))

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<num>\d+))|(?P<punct>[\[\],]))")
_SHORTHAND = re.compile(r"^\s*([dg])(\d+)\s*$")


class _WordParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if not match:
                raise WordSyntaxError(f"unexpected character in {text!r}", position=pos)
            if match.group("var"):
                self.tokens.append(("var", match.group("num"), match.start("var")))
            else:
                self.tokens.append(("punct", match.group("punct"), match.start("punct")))
            pos = match.end()
        self.index = 0
        self.seen: Set[int] = set()

    def _next(self) -> Tuple[str, str, int]:
        if self.index >= len(self.tokens):
            raise WordSyntaxError(f"unexpected end of word {self.text!r}", position=len(self.text))
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> Word:
        word = self._word()
        if self.index != len(self.tokens):
            raise WordSyntaxError(f"trailing input in word {self.text!r}", position=self.tokens[self.index][2])
        return word

    def _word(self) -> Word:
        kind, value, pos = self._next()
        if kind == "var":
            index = int(value)
            if index < 1:
                raise WordSyntaxError("variable indices start at 1", position=pos)
            if index in self.seen:
                raise RepeatedVariable(f"variable x{index} is repeated", position=pos)
            self.seen.add(index)
            return Leaf(index)
        if value != "[":
            raise WordSyntaxError(f"expected a variable or '[' but found {value!r}", position=pos)
        items = [self._word()]
        while True:
            kind, value, pos = self._next()
            if value == "]":
                break
            if value != ",":
                raise WordSyntaxError(f"expected ',' or ']' but found {value!r}", position=pos)
            items.append(self._word())
        if len(items) < 2:
            raise WordSyntaxError("a commutator needs at least two entries", position=pos)
        word = items[0]
        for item in items[1:]:
            word = Commutator(word, item)
        return word


def parse_word(text: str) -> Word:
    """Parse ``[x1,x2]``-style syntax, or the ``dN`` / ``gN`` shorthands."""
    short = _SHORTHAND.match(text)
    if short:
        return word_builder("delta" if short.group(1) == "d" else "gamma", int(short.group(2)))
    return _WordParser(text).parse()


def word_builder(kind: str, k: int) -> Word:
    """``delta(k)`` on 2^k variables or the left-normed ``gamma(k)`` on k variables."""
    if kind == "delta":
        if k < 0:
            raise PreconditionError(f"delta needs k >= 0, got {k}")
        word: Word = Leaf(1)
        for level in range(k):
            word = Commutator(word, word.shifted(2 ** level))
        return word
    if kind == "gamma":
        if k < 1:
            raise PreconditionError(f"gamma needs k >= 1, got {k}")
        word = Leaf(1)
        for i in range(2, k + 1):
            word = Commutator(word, Leaf(i))
        return word
    raise PreconditionError(f"unknown word family {kind!r}")


def evaluate(w: Word, values: Sequence[Permutation]) -> Permutation:
    """Evaluate ``w``, binding variables in increasing index order to ``values``."""
    if len(values) != w.weight:
        raise ArityMismatch(f"word of weight {w.weight} given {len(values)} values")
    degrees = {g.degree for g in values}
    if len(degrees) > 1:
        raise DegreeMismatch(f"values have different degrees {sorted(degrees)}")
    binding = dict(zip(sorted(w.variables), values))

    def walk(node: Word) -> Permutation:
        if isinstance(node, Leaf):
            return binding[node.index]
        return walk(node.left).commutator(walk(node.right))

    return walk(w)


@dataclass
class ValueSet:
    elements: FrozenSet[Permutation]
    exact: bool
    budget_used: Dict[str, int] = field(default_factory=dict)
    rows: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self.elements


class _Level:
    """A conjugation-closed set of rows, with its class representatives on demand."""

    def __init__(self, rows: np.ndarray, exact: bool) -> None:
        self.rows = rows
        self.exact = exact
        self._reps: Optional[np.ndarray] = None

    def reps(self, H: PermGroup) -> np.ndarray:
        if self._reps is None:
            self._reps = batch.class_representatives(self.rows, H.generators)
        return self._reps


def _close_under_conjugation(rows: np.ndarray, H: PermGroup) -> np.ndarray:
    known = set(map(tuple, rows.tolist()))
    frontier = rows
    while frontier.shape[0]:
        fresh = []
        for g in H.generators:
            for row in batch.conjugate(frontier, g).tolist():
                key = tuple(row)
                if key not in known:
                    known.add(key)
                    fresh.append(row)
        frontier = np.asarray(fresh, dtype=rows.dtype).reshape(-1, rows.shape[1])
    return batch.unique(np.asarray(sorted(known), dtype=rows.dtype).reshape(-1, rows.shape[1]))


class _ValueSetComputation:
    def __init__(self, H: PermGroup, budget: Budget) -> None:
        self.H = H
        self.budget = budget
        self.rng = Random(budget.seed)
        self.used = {"pair_products": 0, "sampled_levels": 0}
        self._leaf: Optional[_Level] = None

    def leaf(self) -> _Level:
        if self._leaf is None:
            if self.H.order_int <= self.budget.enum_cap:
                rows = batch.stack(self.H.elements(self.budget.enum_cap), self.H.degree)
                self._leaf = _Level(batch.unique(rows), True)
            else:
                sample = [self.H.random_element(self.rng) for _ in range(self.budget.samples)]
                rows = batch.unique(batch.stack(sample, self.H.degree))
                self.used["sampled_levels"] += 1
                logger.info("value set: |H| = %s above enumeration cap, sampled %d elements",
                            self.H.order(), len(sample))
                self._leaf = _Level(rows, False)
        return self._leaf

    def level(self, node: Word) -> _Level:
        if isinstance(node, Leaf):
            return self.leaf()
        left, right = self.level(node.left), self.level(node.right)
        exact = left.exact and right.exact
        if exact:
            left_cost = self._cost(left, right)
            right_cost = self._cost(right, left)
            cost = min(left_cost, right_cost)
            if cost <= self.budget.exhaustive_cap:
                return self._exhaustive(left, right, use_left_reps=left_cost <= right_cost)
            logger.info("value set: %d pair products exceed cap %d, sampling", cost, self.budget.exhaustive_cap)
        return self._sampled(left, right)

    def _cost(self, reps_side: _Level, other: _Level) -> int:
        # class representatives are only worth computing for small sides
        count = reps_side.rows.shape[0]
        if count <= 20000:
            count = reps_side.reps(self.H).shape[0]
        return count * other.rows.shape[0]

    def _exhaustive(self, left: _Level, right: _Level, use_left_reps: bool) -> _Level:
        out = []
        if use_left_reps:
            for u in batch.to_perms(left.reps(self.H)):
                out.append(batch.unique(batch.commutator_left(u, right.rows)))
            self.used["pair_products"] += left.reps(self.H).shape[0] * right.rows.shape[0]
        else:
            for v in batch.to_perms(right.reps(self.H)):
                out.append(batch.unique(batch.commutator_right(left.rows, v)))
            self.used["pair_products"] += right.reps(self.H).shape[0] * left.rows.shape[0]
        rows = batch.unique(np.concatenate(out)) if out else left.rows[:0]
        return _Level(_close_under_conjugation(rows, self.H), True)

    def _sampled(self, left: _Level, right: _Level) -> _Level:
        n = self.budget.samples
        i = np.asarray([self.rng.randrange(left.rows.shape[0]) for _ in range(n)])
        j = np.asarray([self.rng.randrange(right.rows.shape[0]) for _ in range(n)])
        u, v = left.rows[i], right.rows[j]
        rows = batch.compose(batch.compose(batch.compose(batch.invert(u), batch.invert(v)), u), v)
        self.used["pair_products"] += n
        self.used["sampled_levels"] += 1
        return _Level(batch.unique(rows), False)


def value_set(w: Word, H: PermGroup, budget: Budget = Budget(),
              ledger: Optional[Certification] = None) -> ValueSet:
    """All values of ``w`` on ``H``, exact when every level fit the budget."""
    computation = _ValueSetComputation(H, budget)
    level = computation.level(w)
    if not level.exact and ledger is not None:
        ledger.flag(f"value set of {w} on a group of order {H.order()} is sampled "
                    f"({budget.samples} samples per level, seed {budget.seed})")
    elements = frozenset(batch.to_perms(level.rows))
    return ValueSet(elements, level.exact, dict(computation.used), level.rows)


@dataclass(frozen=True)
class ExponentMeasurement:
    e: int
    e_raw: int
    exact: bool
    value_count: int
    witness: Optional[Permutation] = None


def measure_exponent(w: Word, P: PermGroup, p: int, budget: Budget = Budget(),
                     ledger: Optional[Certification] = None) -> ExponentMeasurement:
    values = value_set(w, P, budget, ledger)
    rows = values.rows
    exps = batch.p_exponents(rows, p) if rows.shape[0] else np.zeros(0, dtype=np.int64)
    e_raw = int(exps.max()) if exps.size else 0
    witness = None
    if exps.size:
        k = int(exps.argmax())
        witness = batch.to_perms(rows[k:k + 1])[0]
    return ExponentMeasurement(max(1, e_raw), e_raw, values.exact, len(values), witness)


def verbal_exponent(w: Word, P: PermGroup, p: int, budget: Budget = Budget(),
                    ledger: Optional[Certification] = None) -> int:
    """Least ``e >= 1`` such that every ``w``-value on the p-group ``P`` has order dividing ``p^e``."""
    if not P.is_p_group(p):
        raise PreconditionError(f"group of order {P.order()} is not a {p}-group")
    return measure_exponent(w, P, p, budget, ledger).e


def value_order_lcm(values: ValueSet) -> int:
    """Least common multiple of the orders of the values (1 for no values)."""
    return lcm(1, *(g.order() for g in values.elements))


def verbal_subgroup(w: Word, G: PermGroup, budget: Budget = Budget(),
                    ledger: Optional[Certification] = None) -> PermGroup:
    values = value_set(w, G, budget, ledger)
    return normal_closure(G, sorted(g for g in values.elements if not g.is_identity()), check=False)
