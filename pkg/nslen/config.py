"""Run configuration, computation modes and the certification ledger.

Settings resolve as: explicit command-line flag, then the YAML file given with
``--config``, then the defaults below.
"""

import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from .errors import ConfigError, ExactCapExceeded

logger = logging.getLogger("nslen.config")

MODE_KINDS = ("exact", "randomized", "auto")
OUTPUT_FORMATS = ("json", "tsv")


@dataclass(frozen=True)
class Mode:
    """How radical, socle and class scans are carried out.

    ``exact`` scans one element per conjugacy class and refuses groups above
    ``exact_cap``; ``randomized`` scans ``samples`` random elements; ``auto``
    picks exact whenever the scanned group is small enough.
    """

    kind: str = "auto"
    exact_cap: int = 10 ** 5
    samples: int = 512
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in MODE_KINDS:
            raise ConfigError(f"mode must be one of {', '.join(MODE_KINDS)}, got {self.kind!r}")
        if self.exact_cap < 1 or self.samples < 1:
            raise ConfigError("exact_cap and samples must be positive")

    def use_exact(self, order: int) -> bool:
        if self.kind == "exact":
            if order > self.exact_cap:
                raise ExactCapExceeded(f"group of order {order} is above the exact cap {self.exact_cap}",
                                       order=order, cap=self.exact_cap)
            return True
        if self.kind == "randomized":
            return False
        return order <= self.exact_cap


EXACT = Mode("exact")
AUTO = Mode("auto")


@dataclass(frozen=True)
class Budget:
    """Limits for word value sets and element scans."""

    exhaustive_cap: int = 10 ** 8
    samples: int = 10 ** 5
    enum_cap: int = 10 ** 6
    scan_cap: int = 2 * 10 ** 4
    seed: int = 0


@dataclass
class Certification:
    """Ledger of every step whose result was not proven exact."""

    notes: List[str] = field(default_factory=list)

    def flag(self, note: str) -> None:
        if note not in self.notes:
            logger.info("uncertified: %s", note)
            self.notes.append(note)

    def merge(self, other: "Certification") -> None:
        for note in other.notes:
            self.flag(note)

    @property
    def certified(self) -> bool:
        return not self.notes


@dataclass(frozen=True)
class RunConfig:
    command: str = ""
    inputs: Tuple[str, ...] = ()
    primes: Tuple[int, ...] = ()
    n: int = 1
    word: Optional[str] = None
    e: Optional[int] = None
    mode: str = "auto"
    seed: int = 0
    samples: int = 512
    exact_cap: int = 10 ** 5
    index_cap: int = 10 ** 5
    enum_cap: int = 10 ** 6
    exhaustive_cap: int = 10 ** 8
    scan_cap: int = 2 * 10 ** 4
    word_samples: int = 10 ** 5
    allow_p2: bool = False
    shifted: bool = False
    exhaustive_prop22: bool = False
    format: str = "json"
    out: Optional[str] = None
    workers: int = 1
    timings: bool = False
    quiet: bool = False

    def __post_init__(self) -> None:
        for name in ("samples", "exact_cap", "index_cap", "enum_cap", "exhaustive_cap", "scan_cap", "word_samples",
                     "workers", "n"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.mode not in MODE_KINDS:
            raise ConfigError(f"mode must be one of {', '.join(MODE_KINDS)}, got {self.mode!r}")
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.format!r}")
        if self.e is not None and self.e < 1:
            raise ConfigError(f"e must be positive, got {self.e}")

    def to_mode(self) -> Mode:
        return Mode(self.mode, exact_cap=self.exact_cap, samples=self.samples, seed=self.seed)

    def to_budget(self) -> Budget:
        return Budget(exhaustive_cap=self.exhaustive_cap, samples=self.word_samples,
                      enum_cap=self.enum_cap, scan_cap=self.scan_cap, seed=self.seed)

    def echo(self) -> Dict[str, Any]:
        """The settings that influence results, for embedding into reports."""
        skip = {"out", "quiet", "workers", "timings", "inputs"}
        out = {}
        for f in fields(self):
            if f.name in skip:
                continue
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    def with_overrides(self, overrides: Dict[str, Any]) -> "RunConfig":
        return replace(self, **_validate(overrides, source="command line"))


_TYPES = {f.name: type(f.default) if f.default is not None else None for f in fields(RunConfig)}
_TYPES.update({"word": str, "e": int, "out": str, "inputs": tuple, "primes": tuple})


def _validate(data: Dict[str, Any], source: str) -> Dict[str, Any]:
    clean = {}
    for key, value in data.items():
        name = key.replace("-", "_")
        if name not in _TYPES:
            raise ConfigError(f"{source}: unknown setting {key!r}")
        expected = _TYPES[name]
        if value is None:
            clean[name] = None
            continue
        if expected is tuple:
            items = value if isinstance(value, (list, tuple)) else [value]
            if name == "primes" and not all(isinstance(p, int) and not isinstance(p, bool) for p in items):
                raise ConfigError(f"{source}: primes must be integers")
            clean[name] = tuple(items)
            continue
        if expected is int and (isinstance(value, bool) or not isinstance(value, int)):
            raise ConfigError(f"{source}: {key} must be an integer, got {value!r}")
        if expected is not int and not isinstance(value, expected):
            raise ConfigError(f"{source}: {key} must be {expected.__name__}, got {value!r}")
        clean[name] = value
    return clean


def load_yaml(path: str) -> Dict[str, Any]:
    """Read and validate a YAML settings file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
        data = yaml.safe_load(text) or {}
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return _validate(data, source=str(path))


def resolve(command: str, cli_values: Dict[str, Any], explicit: Dict[str, bool],
            config_path: Optional[str] = None) -> RunConfig:
    """Combine defaults, the YAML file and the CLI values (explicit flags win)."""
    from_file = load_yaml(config_path) if config_path else {}
    values = {k: v for k, v in cli_values.items() if explicit.get(k, False) or k not in from_file}
    return replace(RunConfig(command=command), **from_file).with_overrides(values)
