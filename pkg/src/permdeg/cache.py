"""On-disk cache of per-degree subgroup class data.

One JSONL file per degree; one record per class.  Keys are written in a
fixed order and records are compared byte-for-byte, so an unchanged dataset
re-saves identically and reports built from the same cache are
reproducible.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .perm import PermGroup
from .stabchain import build_chain

SCHEMA_VERSION = 1

_KEY_ORDER = (
    "schema_version",
    "degree",
    "class_id",
    "generators",
    "order",
    "class_size",
    "fingerprint",
    "minemb",
    "ind",
    "comp_witness",
)


class CacheError(ValueError):
    pass


@dataclass
class CacheRecord:
    schema_version: int
    degree: int
    class_id: int
    generators: list[str]
    order: int
    class_size: int
    fingerprint: str
    minemb: bool | None = None
    ind: int | None = None
    comp_witness: str | None = None

    def to_line(self) -> str:
        data = {k: getattr(self, k) for k in _KEY_ORDER}
        return json.dumps(data, separators=(",", ":"))

    @staticmethod
    def from_line(line: str) -> "CacheRecord":
        data = json.loads(line)
        if set(data) != set(_KEY_ORDER):
            raise CacheError(f"unexpected record keys: {sorted(data)}")
        return CacheRecord(**data)

    def group(self) -> PermGroup:
        return PermGroup.parse(self.degree, self.generators)


def _path(cache_dir: str, degree: int) -> str:
    return os.path.join(cache_dir, f"degree{degree}.jsonl")


def save_cache(records: list[CacheRecord], cache_dir: str) -> None:
    if not records:
        raise CacheError("refusing to save an empty record list")
    degrees = {r.degree for r in records}
    if len(degrees) != 1:
        raise CacheError(f"records span multiple degrees: {sorted(degrees)}")
    os.makedirs(cache_dir, exist_ok=True)
    path = _path(cache_dir, records[0].degree)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_line() + "\n")
    os.replace(tmp, path)


def load_cache(cache_dir: str, degree: int) -> list[CacheRecord] | None:
    """Records for one degree, or None when the cache has none.

    Validates schema version, contiguous class ids, and that each record's
    generators regenerate a group of the stated order.
    """
    path = _path(cache_dir, degree)
    if not os.path.exists(path):
        return None
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(CacheRecord.from_line(line))
    if not records:
        return None
    for r in records:
        if r.schema_version != SCHEMA_VERSION:
            raise CacheError(
                f"cache schema {r.schema_version} != supported {SCHEMA_VERSION}"
            )
        if r.degree != degree:
            raise CacheError(f"degree {r.degree} record in degree-{degree} file")
    ids = [r.class_id for r in records]
    if ids != list(range(len(records))):
        raise CacheError("class ids not contiguous from 0")
    for r in records:
        if build_chain(r.group()).order != r.order:
            raise CacheError(
                f"class {r.class_id}: generators produce order != {r.order}"
            )
    return records
