"""JSON-lines dataset files.

One object per record: {id, community, instance, comment_text, removed,
reason, gold_rule_number, rules:[{n,text}], categories:[...], split}.
UTF-8, LF-terminated, keys emitted in a fixed order so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from ..ingest.types import ModerationRecord
from ..rules.types import Rule, RuleSet


@dataclass(frozen=True)
class DatasetRow:
    record: ModerationRecord
    rules: RuleSet
    categories: tuple[str, ...]
    split: str


def row_to_obj(row: DatasetRow) -> dict:
    r = row.record
    return {
        "id": r.id,
        "community": r.community,
        "instance": r.instance,
        "comment_text": r.comment_text,
        "removed": r.removed,
        "reason": r.reason,
        "gold_rule_number": r.gold_rule_number,
        "created_at": r.created_at.isoformat(),
        "flags": list(r.flags),
        "rules": [{"n": rule.number, "text": rule.text} for rule in row.rules.rules],
        "categories": list(row.categories),
        "split": row.split,
    }


def row_from_obj(obj: dict) -> DatasetRow:
    record = ModerationRecord(
        id=obj["id"],
        community=obj["community"],
        instance=obj["instance"],
        comment_text=obj["comment_text"],
        removed=obj["removed"],
        reason=obj.get("reason"),
        gold_rule_number=obj["gold_rule_number"],
        created_at=_parse_ts(obj.get("created_at")),
        flags=tuple(obj.get("flags", [])),
    )
    rules = RuleSet(
        community=obj["community"],
        instance=obj["instance"],
        rules=tuple(Rule(r["n"], r["text"]) for r in obj.get("rules", [])),
    )
    return DatasetRow(
        record=record,
        rules=rules,
        categories=tuple(obj.get("categories", [])),
        split=obj.get("split", ""),
    )


def _parse_ts(value) -> datetime:
    if not value:
        return datetime(1970, 1, 1, tzinfo=timezone.utc)
    ts = datetime.fromisoformat(value)
    return ts if ts.tzinfo else ts.replace(tzinfo=timezone.utc)


def write_rows(path: str | Path, rows: Iterable[DatasetRow]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row_to_obj(row), ensure_ascii=False))
            fh.write("\n")


def read_rows(path: str | Path) -> Iterator[DatasetRow]:
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield row_from_obj(json.loads(line))


def write_jsonl(path: str | Path, objs: Iterable[dict]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for obj in objs:
            fh.write(json.dumps(obj, ensure_ascii=False))
            fh.write("\n")


def read_jsonl(path: str | Path) -> Iterator[dict]:
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)
