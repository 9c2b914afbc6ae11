"""Radicals, minimal normal subgroups, the semisimple socle and the p-kernel.

All four radicals come from one scan. Each of the properties "p-group",
"p'-group", "soluble" and "p-soluble" is inherited by normal subgroups and
closed under products of normal subgroups, so the radical is generated by the
elements ``x`` whose normal closure ``<x^G>`` has the property. Exact mode
scans one element per conjugacy class; randomized mode scans sampled elements
and can only underestimate, which :func:`semisimple_socle` detects and
reports through :class:`~nslen.errors.RadicalNotTrivial`.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from random import Random
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import factorint, isprime

from ..config import AUTO, Certification, Mode
from ..errors import CapExceeded, ExactCapExceeded, IndexCapExceeded, PreconditionError, RadicalNotTrivial
from ..perm import (
    FactoredInteger,
    GroupHom,
    PermGroup,
    Permutation,
    commutes_elementwise,
    induced_action,
    is_normal,
    is_soluble,
    join,
    normal_closure,
    orbit_partition,
    p_part_element,
    pointwise_stabilizer,
    preimage,
    quotient,
)
from ..perm.hom import DEFAULT_INDEX_CAP

logger = logging.getLogger("nslen.radicals")

P_GROUP = "p-group"
P_PRIME_GROUP = "p'-group"
SOLUBLE = "soluble"
P_SOLUBLE = "p-soluble"
PREDICATES = (P_GROUP, P_PRIME_GROUP, SOLUBLE, P_SOLUBLE)


def _signature(x: Permutation, owner: Dict[int, int]) -> Tuple:
    """Cycle type of ``x`` recorded per orbit of the ambient group."""
    return tuple(sorted((owner[c[0]], len(c)) for c in x.cycles()))


def _candidates(G: PermGroup, mode: Mode, ledger: Optional[Certification], purpose: str,
                transform=None) -> List[Permutation]:
    """Class representatives in exact mode, otherwise deduplicated random elements."""
    order = G.order_int
    if mode.use_exact(order):
        reps = G.class_representatives(mode.exact_cap)
        return [r for r in (transform(r) if transform else r for r in reps) if not r.is_identity()]
    rng = Random(mode.seed)
    owner = {x: i for i, orbit in enumerate(orbit_partition(G)) for x in orbit}
    seen = set()
    picked = []
    for _ in range(mode.samples):
        x = G.random_element(rng)
        if transform is not None:
            x = transform(x)
        if x.is_identity():
            continue
        key = _signature(x, owner)
        if key in seen:
            continue
        seen.add(key)
        picked.append(x)
    if ledger is not None:
        ledger.flag(f"{purpose} of a group of order {G.order()} scanned {mode.samples} "
                    f"random elements (seed {mode.seed})")
    logger.info("%s: |G| = %s, %d distinct sampled candidates", purpose, G.order(), len(picked))
    return picked


def satisfies(N: PermGroup, pred: str, p: Optional[int] = None, mode: Mode = AUTO,
              ledger: Optional[Certification] = None, index_cap: int = DEFAULT_INDEX_CAP) -> bool:
    if pred == P_GROUP:
        return N.order().is_p_power(p)
    if pred == P_PRIME_GROUP:
        return N.order().exponent_of(p) == 0
    if pred == SOLUBLE:
        return is_soluble(N)
    if pred == P_SOLUBLE:
        return is_p_soluble(N, p, mode, ledger, index_cap)
    raise PreconditionError(f"unknown radical property {pred!r}")


def _p_power_of_order(x: Permutation, p: int) -> int:
    n, out = x.order(), 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _element_filter(pred: str, p: Optional[int]):
    if pred == P_GROUP:
        return lambda x: p_part_element(x, p)
    if pred == P_PRIME_GROUP:
        return lambda x: x ** _p_power_of_order(x, p)
    return None


def restricted_core(G: PermGroup, pred: str, p: Optional[int] = None, mode: Mode = AUTO,
                    ledger: Optional[Certification] = None, index_cap: int = DEFAULT_INDEX_CAP,
                    check_idempotent: bool = True) -> PermGroup:
    """The largest normal subgroup of ``G`` with property ``pred``."""
    if pred not in PREDICATES:
        raise PreconditionError(f"unknown radical property {pred!r}")
    if pred != SOLUBLE and (p is None or not isprime(p)):
        raise PreconditionError(f"property {pred!r} needs a prime, got {p!r}")
    key = ("core", pred, p, mode, index_cap)
    if key in G.cache:
        core, notes = G.cache[key]
        if ledger is not None:
            for note in notes:
                ledger.flag(note)
        return core
    local = Certification()
    if satisfies(G, pred, p, mode, local, index_cap):
        core = G
    else:
        core = _scan_core(G, pred, p, mode, local, index_cap)
        if not is_normal(core, G):
            raise AssertionError(f"{pred} core of {G} is not normal")
        if check_idempotent and local.certified and not core.is_trivial():
            _assert_idempotent(G, core, pred, p, mode, index_cap)
    G.cache[key] = (core, list(local.notes))
    if ledger is not None:
        ledger.merge(local)
    logger.debug("%s core: |G| = %s, |core| = %s", pred, G.order(), core.order())
    return core


def _scan_core(G: PermGroup, pred: str, p: Optional[int], mode: Mode, ledger: Certification,
               index_cap: int) -> PermGroup:
    core = G.subgroup([])
    tested: List[Tuple[PermGroup, bool]] = []
    for x in _candidates(G, mode, ledger, f"{pred} core", _element_filter(pred, p)):
        if core.contains(x):
            continue
        closure = normal_closure(G, [x], check=False)
        # G itself fails, or the scan would not run
        if closure.order() == G.order():
            continue
        ok = next((known for H, known in tested
                   if H.order() == closure.order() and closure.is_subgroup_of(H)), None)
        if ok is None:
            ok = satisfies(closure, pred, p, mode, ledger, index_cap)
            tested.append((closure, ok))
        if ok:
            core = join(G, core, closure)
    return core


def _assert_idempotent(G: PermGroup, core: PermGroup, pred: str, p: Optional[int], mode: Mode,
                       index_cap: int) -> None:
    try:
        image = quotient(G, core, index_cap).image
    except CapExceeded as exc:
        logger.debug("idempotence check skipped: %s", exc)
        return
    if image.is_trivial():
        return
    again = restricted_core(image, pred, p, mode, None, index_cap, check_idempotent=False)
    if not again.is_trivial():
        raise AssertionError(f"{pred} core of the quotient by the {pred} core is nontrivial")


def is_p_soluble(K: PermGroup, p: int, mode: Mode = AUTO, ledger: Optional[Certification] = None,
                 index_cap: int = DEFAULT_INDEX_CAP) -> bool:
    """Whether ``K`` has a normal series whose factors are p-groups or p'-groups."""
    key = ("p-soluble", p, mode, index_cap)
    if key in K.cache:
        result, notes = K.cache[key]
        if ledger is not None:
            for note in notes:
                ledger.flag(note)
        return result
    local = Certification()
    H = K
    result = None
    layers: List[str] = []
    try:
        while result is None:
            if H.is_trivial() or H.order().exponent_of(p) == 0 or is_soluble(H):
                result = True
                break
            O_p = restricted_core(H, P_GROUP, p, mode, local, index_cap, check_idempotent=False)
            O_pp = restricted_core(H, P_PRIME_GROUP, p, mode, local, index_cap, check_idempotent=False)
            N = join(H, O_p, O_pp)
            if N.is_trivial():
                result = False
                break
            layers.append(str(N.order()))
            H = quotient(H, N, index_cap).image
    except IndexCapExceeded as exc:
        exc.partial_series = layers
        raise
    K.cache[key] = (result, list(local.notes))
    if ledger is not None:
        ledger.merge(local)
    return result


def soluble_radical(G: PermGroup, mode: Mode = AUTO, ledger: Optional[Certification] = None,
                    index_cap: int = DEFAULT_INDEX_CAP) -> PermGroup:
    return restricted_core(G, SOLUBLE, None, mode, ledger, index_cap)


def p_soluble_radical(G: PermGroup, p: int, mode: Mode = AUTO, ledger: Optional[Certification] = None,
                      index_cap: int = DEFAULT_INDEX_CAP) -> PermGroup:
    return restricted_core(G, P_SOLUBLE, p, mode, ledger, index_cap)


def radical(G: PermGroup, p: Optional[int], mode: Mode = AUTO, ledger: Optional[Certification] = None,
            index_cap: int = DEFAULT_INDEX_CAP) -> PermGroup:
    """The p-soluble radical, or the soluble radical when ``p`` is None."""
    if p is None:
        return soluble_radical(G, mode, ledger, index_cap)
    return p_soluble_radical(G, p, mode, ledger, index_cap)


def _inclusion_minimal(groups: Iterable[PermGroup]) -> List[PermGroup]:
    ordered = sorted(groups, key=lambda N: N.order_int)
    minimal: List[PermGroup] = []
    for N in ordered:
        if any(M.is_subgroup_of(N) for M in minimal):
            continue
        minimal.append(N)
    return minimal


def _prime_power_parts(x: Permutation) -> List[Permutation]:
    """``x`` and its proper powers ``x^d`` for divisors ``d`` of its order."""
    n = x.order()
    out = [x]
    for d in sorted(_divisors(n)):
        if 1 < d < n:
            out.append(x ** d)
    return out


def _divisors(n: int) -> List[int]:
    divs = [1]
    for q, e in factorint(n).items():
        divs = [d * q ** k for d in divs for k in range(e + 1)]
    return divs


def minimal_normals(G: PermGroup, mode: Mode = AUTO, ledger: Optional[Certification] = None) -> List[PermGroup]:
    """The minimal normal subgroups of ``G``, smallest first."""
    if G.is_trivial():
        raise PreconditionError("the trivial group has no minimal normal subgroups")
    if mode.use_exact(G.order_int):
        closures = [normal_closure(G, [x], check=False) for x in G.class_representatives(mode.exact_cap)
                    if not x.is_identity()]
        return _inclusion_minimal(closures)
    owner = {x: i for i, orbit in enumerate(orbit_partition(G)) for x in orbit}
    seen = set()
    found: List[PermGroup] = []
    for x in _candidates(G, mode, ledger, "minimal normal subgroup search"):
        for y in _prime_power_parts(x):
            key = _signature(y, owner)
            if y.is_identity() or key in seen:
                continue
            seen.add(key)
            closure = normal_closure(G, [y], check=False)
            found = _inclusion_minimal(found + [closure])
    return found


@dataclass
class FactorSystem:
    """Simple factors ``S_1 x ... x S_m`` of a semisimple normal subgroup."""

    factors: List[PermGroup]
    orders: List[FactoredInteger]
    verified: Dict[str, bool] = field(default_factory=dict)
    certified: bool = True

    @property
    def m(self) -> int:
        return len(self.factors)

    def product_order(self) -> FactoredInteger:
        return FactoredInteger.product(self.orders)

    def labels(self) -> str:
        return label_multiset(self.orders)


def _support_split(M: PermGroup) -> Optional[List[PermGroup]]:
    orbits = [o for o in orbit_partition(M) if len(o) > 1]
    if len(orbits) < 2:
        return None
    moved = set(x for o in orbits for x in o)
    pieces = []
    for orbit in orbits:
        rest = sorted(moved - set(orbit))
        pieces.append(pointwise_stabilizer(M, rest))
    if FactoredInteger.product(S.order() for S in pieces) != M.order():
        return None
    if any(S.is_trivial() or S.is_abelian() for S in pieces):
        return None
    return pieces


def is_simple(S: PermGroup, cap: int) -> bool:
    """Exact simplicity test: every nontrivial class generates ``S`` as a normal subgroup."""
    if S.is_trivial():
        return False
    order = S.order()
    if len(order.primes) == 1:
        return sum(order.factors.values()) == 1
    return all(normal_closure(S, [x], check=False).order() == order
               for x in S.class_representatives(cap) if not x.is_identity())


def _decompose(M: PermGroup, mode: Mode, ledger: Certification) -> Tuple[List[PermGroup], bool]:
    pieces = _support_split(M)
    if pieces is not None:
        return pieces, True
    if M.order_int <= mode.exact_cap and mode.kind != "randomized":
        return minimal_normals(M, _exact(mode)), True
    if mode.kind == "exact":
        raise ExactCapExceeded(f"cannot decompose a normal subgroup of order {M.order()} exactly",
                               order=M.order_int, cap=mode.exact_cap)
    return minimal_normals(M, Mode("randomized", mode.exact_cap, mode.samples, mode.seed), ledger), False


def _exact(mode: Mode) -> Mode:
    return Mode("exact", mode.exact_cap, mode.samples, mode.seed)


def simple_pieces(pieces: Iterable[PermGroup], mode: Mode = AUTO,
                  ledger: Optional[Certification] = None) -> List[PermGroup]:
    """Split every piece that is not simple into its minimal normal subgroups.

    Pieces above ``mode.exact_cap`` are kept unchecked and flagged.
    """
    out: List[PermGroup] = []
    pending = list(pieces)
    while pending:
        S = pending.pop(0)
        if S.order_int > mode.exact_cap:
            if ledger is not None:
                ledger.flag(f"simplicity of a factor of order {S.order()} was not checked")
            out.append(S)
            continue
        if is_simple(S, mode.exact_cap):
            out.append(S)
            continue
        parts = minimal_normals(S, _exact(mode))
        if len(parts) < 2 or any(T.is_abelian() for T in parts) \
                or FactoredInteger.product(T.order() for T in parts) != S.order():
            raise RadicalNotTrivial(f"socle factor of order {S.order()} is not a product of simple groups",
                                    subgroup=None)
        logger.info("socle: split a factor of order %s into %d pieces", S.order(), len(parts))
        pending[:0] = parts
    return out


def semisimple_socle(Gbar: PermGroup, p: Optional[int], mode: Mode = AUTO,
                     ledger: Optional[Certification] = None) -> FactorSystem:
    """The socle of a group with trivial p-soluble (or soluble, for ``p=None``) radical."""
    local = Certification()
    if Gbar.is_trivial():
        return FactorSystem([], [], {"nonabelian": True, "simple": True, "p_divisible": True})
    minimal = minimal_normals(Gbar, mode, local)
    socle_certified = local.certified
    factors: List[PermGroup] = []
    for M in minimal:
        if M.is_abelian() or (p is None and is_soluble(M)) or (p is not None and M.order().exponent_of(p) == 0):
            raise RadicalNotTrivial(f"minimal normal subgroup of order {M.order()} is "
                                    f"{'soluble' if p is None else f'{p}-soluble'}", subgroup=M)
        pieces, certified = _decompose(M, mode, local)
        socle_certified = socle_certified and certified
        factors.extend(pieces)
    factors = simple_pieces(factors, mode, local)
    nonabelian = all(not S.is_abelian() for S in factors)
    p_divisible = p is None or all(S.order().exponent_of(p) > 0 for S in factors)
    commuting = all(commutes_elementwise(A, B) for i, A in enumerate(factors) for B in factors[i + 1:])
    if not commuting:
        raise AssertionError("socle factors do not commute")
    if not socle_certified:
        local.flag(f"completeness of the socle factor list of a group of order {Gbar.order()}")
    if ledger is not None:
        ledger.merge(local)
    system = FactorSystem(factors, [S.order() for S in factors],
                          {"nonabelian": nonabelian, "simple": True, "p_divisible": p_divisible},
                          certified=local.certified)
    logger.debug("socle: %s", system.labels())
    return system


def radical_quotient_socle(G: PermGroup, p: int, mode: Mode = AUTO, ledger: Optional[Certification] = None,
                           index_cap: int = DEFAULT_INDEX_CAP) -> Tuple[Optional[GroupHom], PermGroup, FactorSystem]:
    """``G/R_p(G)`` with its socle factors.

    The map is None when the radical is trivial, and the quotient is then ``G``
    itself, so construction metadata stays available downstream.
    """
    R = p_soluble_radical(G, p, mode, ledger, index_cap)
    while True:
        f = None if R.is_trivial() else quotient(G, R, index_cap)
        Gbar = G if f is None else f.image
        if Gbar.is_trivial():
            return f, Gbar, FactorSystem([], [])
        try:
            return f, Gbar, semisimple_socle(Gbar, p, mode, ledger)
        except RadicalNotTrivial as exc:
            if exc.subgroup is None:
                raise
            logger.info("folding a %d-soluble normal subgroup of order %s into the radical",
                        p, exc.subgroup.order())
            if ledger is not None:
                ledger.flag("p-soluble radical was underestimated and corrected")
            R = exc.subgroup if f is None else preimage(f, exc.subgroup)


def p_kernel(G: PermGroup, p: int, mode: Mode = AUTO, ledger: Optional[Certification] = None,
             index_cap: int = DEFAULT_INDEX_CAP) -> PermGroup:
    """Preimage of the kernel of the action of ``G/R_p(G)`` on its socle factors."""
    f, Gbar, system = radical_quotient_socle(G, p, mode, ledger, index_cap)
    if not system.factors:
        return G
    kernel = induced_action(Gbar, system.factors).kernel
    return kernel if f is None else preimage(f, kernel)


def _simple_orders() -> Dict[int, str]:
    table: Dict[int, List[str]] = {}
    factorial = 1
    for n in range(1, 13):
        factorial *= n
        if n >= 5:
            table.setdefault(factorial // 2, []).append(f"A{n}")
    for q in range(4, 102):
        facts = factorint(q)
        if len(facts) != 1:
            continue
        order = q * (q * q - 1) // (2 if q % 2 else 1)
        label = f"PSL(2,{q})"
        names = table.setdefault(order, [])
        if not any(name.startswith("A") for name in names):
            names.append(label)
    # A8 and PSL(3,4) share their order
    table[20160] = ["A8", "PSL(3,4)"]
    return {order: names[0] for order, names in table.items() if len(names) == 1}


SIMPLE_LABELS = _simple_orders()


def label_simple(order: FactoredInteger) -> str:
    return SIMPLE_LABELS.get(order.value, f"simple[{order.value}]")


def label_multiset(orders: Iterable[FactoredInteger]) -> str:
    counts = Counter(label_simple(o) for o in orders)
    return " x ".join(f"{name}^{k}" if k > 1 else name for name, k in sorted(counts.items()))
