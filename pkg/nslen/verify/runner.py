"""Batch execution of analyses and checks over a list of groups.

Inputs may be group files, directories of group files, or construction
expressions. Groups are processed in input order; with several workers they
are shipped to worker processes as group records and the results are
collected in the same order, so reports do not depend on the worker count.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence

from ..config import RunConfig
from ..core import groupfile
from ..core.constructions import build
from ..core.lengths import canonical_series
from ..core.radicals import p_kernel, p_soluble_radical, soluble_radical
from ..core.sylow import sylow_subgroup
from ..core.words import Word, measure_exponent, parse_word, value_order_lcm, value_set
from ..errors import ConfigError, PreconditionError
from ..perm import PermGroup, derived_series, normal_closure
from .checks import (
    CHECKS,
    CheckReport,
    corollary2_check,
    corollary3_check,
    focal_check,
    kernel_lemma_check,
    prop22_check,
    theorem1_check,
)
from .report import GroupReport

logger = logging.getLogger("nslen.verify")

PRIME_CHECKS = ("theorem1", "corollary2", "prop22", "kernel")
DEFAULT_WORD = "g2"


def load_inputs(inputs: Sequence[str]) -> List[PermGroup]:
    """Groups from files, directories (``*.json`` sorted by name) and expressions, in order."""
    groups: List[PermGroup] = []
    for item in inputs:
        path = Path(item)
        if path.is_dir():
            files = sorted(path.glob("*.json"))
            if not files:
                logger.warning("directory %s holds no group files", path)
            groups.extend(_load_file(f) for f in files)
        elif path.is_file() or item.endswith(".json"):
            groups.append(_load_file(path))
        else:
            G = build(item)
            G.name = G.name or item
            groups.append(G)
    return groups


def _load_file(path: Path) -> PermGroup:
    G = groupfile.load(path)
    G.name = G.name or path.stem
    return G


def _word(cfg: RunConfig, required: bool) -> Word:
    if cfg.word:
        return parse_word(cfg.word)
    if required:
        raise ConfigError(f"{cfg.command} needs --word")
    return parse_word(DEFAULT_WORD)


def run_check(check: str, G: PermGroup, cfg: RunConfig, p: int = None) -> CheckReport:
    mode, budget = cfg.to_mode(), cfg.to_budget()
    started = time.perf_counter()
    if check == "theorem1":
        report = theorem1_check(G, p, cfg.n, mode, budget, cfg.seed, cfg.allow_p2, cfg.shifted, cfg.e,
                                cfg.index_cap)
    elif check == "corollary2":
        report = corollary2_check(G, p, _word(cfg, True), mode, budget, cfg.seed, cfg.allow_p2, cfg.e,
                                  cfg.index_cap)
    elif check == "corollary3":
        report = corollary3_check(G, _word(cfg, False), mode, budget, cfg.seed, cfg.e, cfg.index_cap)
    elif check == "focal":
        report = focal_check(G, _word(cfg, False), mode, budget, cfg.seed, cfg.index_cap)
    elif check == "prop22":
        report = prop22_check(G, p, None, mode, budget, cfg.seed, not cfg.exhaustive_prop22, cfg.allow_p2,
                              cfg.index_cap)
    elif check == "kernel":
        report = kernel_lemma_check(G, p, mode, cfg.seed, cfg.index_cap)
    else:
        raise PreconditionError(f"unknown check {check!r}; expected one of {', '.join(CHECKS)}")
    report.runtime = time.perf_counter() - started
    return report


def verify_group(G: PermGroup, check: str, cfg: RunConfig) -> GroupReport:
    report = GroupReport(str(G), str(G.order()))
    if check in PRIME_CHECKS:
        if not cfg.primes:
            raise ConfigError(f"verify {check} needs --prime")
        for p in cfg.primes:
            report.checks.append(run_check(check, G, cfg, p))
    else:
        report.checks.append(run_check(check, G, cfg))
    return report


def analyze_group(G: PermGroup, cfg: RunConfig) -> GroupReport:
    """Orders, radicals, canonical series and lengths of one group."""
    mode = cfg.to_mode()
    _, soluble = derived_series(G)
    analysis: Dict[str, Any] = {
        "degree": G.degree,
        "soluble": soluble,
        "soluble_radical_order": str(soluble_radical(G, mode, None, cfg.index_cap).order()),
        "nonsoluble": canonical_series(G, None, mode, None, cfg.index_cap).to_record(),
        "primes": {},
    }
    for p in cfg.primes:
        sylow = sylow_subgroup(G, p, cfg.seed)
        analysis["primes"][str(p)] = {
            "sylow_order": str(sylow.order),
            "sylow_certified": sylow.certified,
            "radical_order": str(p_soluble_radical(G, p, mode, None, cfg.index_cap).order()),
            "kernel_order": str(p_kernel(G, p, mode, None, cfg.index_cap).order()),
            "series": canonical_series(G, p, mode, None, cfg.index_cap).to_record(),
        }
    return GroupReport(str(G), str(G.order()), analysis=analysis)


def word_group(G: PermGroup, cfg: RunConfig) -> GroupReport:
    """Value set, verbal subgroup and Sylow verbal exponents of the configured word."""
    w = _word(cfg, True)
    budget = cfg.to_budget()
    values = value_set(w, G, budget)
    V = normal_closure(G, sorted(g for g in values.elements if not g.is_identity()), check=False)
    analysis: Dict[str, Any] = {
        "word": str(w),
        "weight": w.weight,
        "value_count": len(values),
        "exact": values.exact,
        "value_order_lcm": value_order_lcm(values),
        "verbal_subgroup_order": str(V.order()),
        "verbal_exponents": {},
    }
    for p in cfg.primes:
        P = sylow_subgroup(G, p, cfg.seed).subgroup
        m = measure_exponent(w, P, p, budget)
        analysis["verbal_exponents"][str(p)] = {"e": m.e, "e_raw": m.e_raw, "exact": m.exact}
    return GroupReport(str(G), str(G.order()), analysis=analysis)


def _run_one(payload) -> GroupReport:
    kind, record, check, cfg = payload
    G = groupfile.record_to_group(record)
    if kind == "verify":
        return verify_group(G, check, cfg)
    if kind == "analyze":
        return analyze_group(G, cfg)
    return word_group(G, cfg)


def run_all(kind: str, groups: Sequence[PermGroup], cfg: RunConfig, check: str = None) -> List[GroupReport]:
    """Process every group, in order, with ``cfg.workers`` processes."""
    if kind == "verify" and check not in CHECKS:
        raise PreconditionError(f"unknown check {check!r}; expected one of {', '.join(CHECKS)}")
    if cfg.workers == 1 or len(groups) < 2:
        single: Dict[str, Callable[[PermGroup], GroupReport]] = {
            "verify": lambda G: verify_group(G, check, cfg),
            "analyze": lambda G: analyze_group(G, cfg),
            "word": lambda G: word_group(G, cfg),
        }
        return [single[kind](G) for G in groups]
    payloads = [(kind, groupfile.group_to_record(G), check, cfg) for G in groups]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_run_one, payloads))

