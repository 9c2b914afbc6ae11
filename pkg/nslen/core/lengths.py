"""The canonical series and the non-p-soluble length.

The series alternates p-soluble and semisimple layers: the p-soluble radical,
then the socle of the quotient by it, then the radical of the next quotient,
and so on until the quotient is trivial. It starts and ends with a p-soluble
layer (possibly trivial), and its number of semisimple layers is the
non-p-soluble length. With ``p=None`` the same loop uses the soluble radical
and nonabelian simple factors, giving the nonsoluble length directly.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from sympy import isprime

from ..config import AUTO, Certification, Mode
from ..errors import PreconditionError, RadicalNotTrivial
from ..perm import FactoredInteger, PermGroup, quotient
from ..perm.hom import DEFAULT_INDEX_CAP
from .radicals import label_multiset, radical, semisimple_socle

logger = logging.getLogger("nslen.lengths")

P_SOLUBLE_LAYER = "p-soluble"
SEMISIMPLE_LAYER = "semisimple"


@dataclass
class Layer:
    kind: str
    order: FactoredInteger
    factors: str = ""

    def to_record(self) -> Dict:
        record = {"kind": self.kind, "order": str(self.order)}
        if self.kind == SEMISIMPLE_LAYER:
            record["factors"] = self.factors
        return record


@dataclass
class CanonicalSeries:
    p: Optional[int]
    layers: List[Layer] = field(default_factory=list)
    certification: Certification = field(default_factory=Certification)

    @property
    def lam(self) -> int:
        return sum(1 for layer in self.layers if layer.kind == SEMISIMPLE_LAYER)

    @property
    def sigma(self) -> List[int]:
        """Primes dividing the order of a nonabelian simple section.

        Only the soluble series and the 2-series hold every nonabelian
        composition factor in their semisimple layers.
        """
        if self.p not in (None, 2):
            raise PreconditionError(f"sigma needs the soluble series or the 2-series, not p={self.p}")
        return sorted({q for layer in self.layers if layer.kind == SEMISIMPLE_LAYER for q in layer.order.primes})

    @property
    def certified(self) -> bool:
        return self.certification.certified

    def to_record(self) -> Dict:
        record = {
            "p": self.p,
            "lambda": self.lam,
            "certified": self.certified,
            "layers": [layer.to_record() for layer in self.layers],
        }
        if self.p in (None, 2):
            record["sigma"] = self.sigma
        return record


def canonical_series(G: PermGroup, p: Optional[int], mode: Mode = AUTO,
                     ledger: Optional[Certification] = None,
                     index_cap: int = DEFAULT_INDEX_CAP) -> CanonicalSeries:
    """Alternating p-soluble / semisimple series of ``G`` (soluble / simple for ``p=None``)."""
    if p is not None and not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    series = CanonicalSeries(p)
    local = series.certification
    soluble_order = FactoredInteger()
    H = G
    while True:
        R = radical(H, p, mode, local, index_cap)
        soluble_order = soluble_order * R.order()
        H = quotient(H, R, index_cap).image
        if H.is_trivial():
            break
        try:
            system = semisimple_socle(H, p, mode, local)
        except RadicalNotTrivial as exc:
            if exc.subgroup is None:
                raise
            logger.info("series: folding a normal subgroup of order %s into the %s layer",
                        exc.subgroup.order(), P_SOLUBLE_LAYER)
            local.flag("radical was underestimated and corrected by folding")
            soluble_order = soluble_order * exc.subgroup.order()
            H = quotient(H, exc.subgroup, index_cap).image
            if H.is_trivial():
                break
            continue
        series.layers.append(Layer(P_SOLUBLE_LAYER, soluble_order))
        series.layers.append(Layer(SEMISIMPLE_LAYER, system.product_order(), label_multiset(system.orders)))
        soluble_order = FactoredInteger()
        socle = H.subgroup([g for S in system.factors for g in S.generators])
        H = quotient(H, socle, index_cap).image
    series.layers.append(Layer(P_SOLUBLE_LAYER, soluble_order))
    if ledger is not None:
        ledger.merge(local)
    logger.debug("series of %s for p=%s: lambda=%d", G, p, series.lam)
    return series


def lambda_p(G: PermGroup, p: int, mode: Mode = AUTO, ledger: Optional[Certification] = None,
             index_cap: int = DEFAULT_INDEX_CAP) -> int:
    return canonical_series(G, p, mode, ledger, index_cap).lam


def lambda_(G: PermGroup, mode: Mode = AUTO, ledger: Optional[Certification] = None,
            index_cap: int = DEFAULT_INDEX_CAP) -> int:
    """Nonsoluble length, computed as the non-2-soluble length."""
    return lambda_p(G, 2, mode, ledger, index_cap)


def lambda_nonsoluble_direct(G: PermGroup, mode: Mode = AUTO, ledger: Optional[Certification] = None,
                             index_cap: int = DEFAULT_INDEX_CAP) -> int:
    """Nonsoluble length from soluble radicals and nonabelian simple socle factors."""
    return canonical_series(G, None, mode, ledger, index_cap).lam


def sigma(G: PermGroup, mode: Mode = AUTO, ledger: Optional[Certification] = None,
          index_cap: int = DEFAULT_INDEX_CAP) -> List[int]:
    """Primes dividing the order of at least one nonabelian simple section of ``G``."""
    return canonical_series(G, None, mode, ledger, index_cap).sigma
