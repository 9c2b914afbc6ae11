"""Report assembly: the JSON document, the flat TSV summary and the console table."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from rich.console import Console
from rich.table import Table

from .. import __version__
from .checks import FAIL, PASS, UNCERTIFIED_FAIL, UNCERTIFIED_PASS, CheckReport

TSV_COLUMNS = ("group", "check", "p", "n", "e", "lambda", "bound", "verdict")

_STYLES = {PASS: "green", UNCERTIFIED_PASS: "yellow", FAIL: "bold red", UNCERTIFIED_FAIL: "red"}


@dataclass
class GroupReport:
    name: str
    order: str
    checks: List[CheckReport] = field(default_factory=list)
    analysis: Optional[Dict[str, Any]] = None

    def to_record(self, timings: bool = False) -> Dict[str, Any]:
        record: Dict[str, Any] = {"name": self.name, "order": self.order,
                                  "checks": [c.to_record(timings) for c in self.checks]}
        if self.analysis is not None:
            record["analysis"] = self.analysis
        return record


def build_document(groups: Iterable[GroupReport], config: Dict[str, Any], timings: bool = False) -> Dict[str, Any]:
    return {"version": __version__, "config": config, "groups": [g.to_record(timings) for g in groups]}


def to_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def _cell(value: Any) -> str:
    return "" if value is None else str(value)


def tsv_rows(groups: Iterable[GroupReport]) -> List[List[str]]:
    rows = []
    for group in groups:
        for c in group.checks:
            m = c.measured
            rows.append([group.name, c.check, _cell(c.params.get("p")), _cell(c.params.get("n")),
                         _cell(m.get("e")), _cell(m.get("lambda")), _cell(m.get("bound")), c.verdict])
        if group.analysis and "nonsoluble" in group.analysis:
            rows.append([group.name, "analyze", "", "", "", str(group.analysis["nonsoluble"]["lambda"]), "", ""])
            for p, data in group.analysis["primes"].items():
                rows.append([group.name, "analyze", p, "", "", str(data["series"]["lambda"]), "", ""])
    return rows


def to_tsv(groups: Iterable[GroupReport]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    lines.extend("\t".join(row) for row in tsv_rows(groups))
    return "\n".join(lines) + "\n"


def exit_code(groups: Iterable[GroupReport]) -> int:
    """1 when any check failed, certified or not; 0 otherwise."""
    return 1 if any(c.failed for g in groups for c in g.checks) else 0


def print_summary(groups: List[GroupReport], console: Optional[Console] = None) -> None:
    console = console or Console(stderr=True)
    rows = tsv_rows(groups)
    if not rows:
        return
    table = Table(title="nslen verification summary")
    for column in TSV_COLUMNS:
        table.add_column(column, justify="right" if column in ("p", "n", "e", "lambda", "bound") else "left")
    for row in rows:
        verdict = row[-1]
        table.add_row(*row[:-1], f"[{_STYLES.get(verdict, 'white')}]{verdict}[/]")
    console.print(table)
