"""Group files: JSON documents holding a name, a degree, generator image arrays and metadata.

Files are written one generator per line with sorted keys, so loading a saved
file and saving it again reproduces the same bytes. Orders are never stored.
"""

import json
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..errors import MalformedFile
from ..perm import PermGroup, Permutation
from .constructions import StructureMetadata

PathLike = Union[str, Path]


def group_to_record(G: PermGroup) -> Dict:
    return {
        "name": G.name or "",
        "degree": G.degree,
        "generators": [list(g.images) for g in G.generators],
        "metadata": G.metadata.to_record() if G.metadata is not None else None,
    }


def dumps(G: PermGroup) -> str:
    record = group_to_record(G)
    lines = ["{"]
    lines.append(f'  "degree": {record["degree"]},')
    if record["generators"]:
        lines.append('  "generators": [')
        rows = [f"    {json.dumps(row)}" for row in record["generators"]]
        lines.append(",\n".join(rows))
        lines.append("  ],")
    else:
        lines.append('  "generators": [],')
    lines.append(f'  "metadata": {json.dumps(record["metadata"], sort_keys=True)},')
    lines.append(f'  "name": {json.dumps(record["name"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(G: PermGroup, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(dumps(G), encoding="utf-8")
    return path


def loads(text: str, path: Optional[str] = None) -> PermGroup:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(exc.msg, path=path, line=exc.lineno) from exc
    return record_to_group(record, path=path)


def load(path: PathLike) -> PermGroup:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedFile(f"cannot read group file: {exc}", path=str(path)) from exc
    return loads(text, path=str(path))


def record_to_group(record, path: Optional[str] = None) -> PermGroup:
    if not isinstance(record, dict):
        raise MalformedFile("top level must be an object", path=path)
    for key in ("name", "degree", "generators"):
        if key not in record:
            raise MalformedFile("missing field", path=path, field=key)
    unknown = set(record) - {"name", "degree", "generators", "metadata"}
    if unknown:
        raise MalformedFile(f"unknown fields {sorted(unknown)}", path=path)
    name, degree, generators = record["name"], record["degree"], record["generators"]
    if not isinstance(name, str):
        raise MalformedFile("name must be a string", path=path, field="name")
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
        raise MalformedFile("degree must be a positive integer", path=path, field="degree")
    if not isinstance(generators, list):
        raise MalformedFile("generators must be a list", path=path, field="generators")
    perms: List[Permutation] = []
    for i, row in enumerate(generators):
        where = f"generators[{i}]"
        if not isinstance(row, list) or len(row) != degree:
            raise MalformedFile(f"expected {degree} images", path=path, field=where)
        if any(isinstance(x, bool) or not isinstance(x, int) for x in row) or sorted(row) != list(range(degree)):
            raise MalformedFile("not a permutation of 0..degree-1", path=path, field=where)
        perms.append(Permutation._raw(tuple(row)))
    meta = None
    if record.get("metadata") is not None:
        try:
            meta = StructureMetadata.from_record(record["metadata"])
            meta.check(degree)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedFile(f"invalid metadata: {exc}", path=path, field="metadata") from exc
    return PermGroup(degree, perms, name=name or None, metadata=meta)
