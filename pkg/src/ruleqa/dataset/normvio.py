"""Importer for the Reddit moderation dataset layout.

Each row holds a conversation whose final comment is the (possibly
moderated) target, the subreddit, the cited rule text, and a moderated
flag. Per community, the union of all cited rules observed anywhere in
the input forms its rule set, numbered by first appearance.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from ..ingest.types import ModerationRecord
from ..rules.types import Rule, RuleSet

_WS = re.compile(r"\s+")


def normalize_rule_text(text: str) -> str:
    return _WS.sub(" ", text).strip().casefold()


@dataclass
class ColumnMap:
    conversation: str = "conversation"
    community: str = "subreddit"
    rule_text: str = "rule_text"
    moderated: str = "moderated"


@dataclass
class ImportResult:
    records: list[ModerationRecord] = field(default_factory=list)
    rule_sets: dict[str, RuleSet] = field(default_factory=dict)
    dropped: int = 0


_TRUTHY = {"1", "true", "yes", "y", "t"}


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return bool(value)
    return str(value).strip().lower() in _TRUTHY


def _final_comment(conversation) -> str:
    if isinstance(conversation, str):
        try:
            parsed = json.loads(conversation)
        except (json.JSONDecodeError, ValueError):
            parsed = None
        if isinstance(parsed, list):
            conversation = parsed
        else:
            return conversation.strip()
    if isinstance(conversation, (list, tuple)) and conversation:
        return str(conversation[-1]).strip()
    return ""


def import_normvio(
    rows: Iterable[Mapping[str, object]],
    columns: ColumnMap | None = None,
    instance: str = "reddit",
) -> ImportResult:
    """Assemble records and per-community rule sets from dataset rows.

    Moderated rows whose cited rule text cannot be resolved within the
    assembled rule set are dropped and counted.
    """
    columns = columns or ColumnMap()
    rows = list(rows)

    # First pass: per-community rule sets from every cited rule text.
    community_rules: dict[str, list[Rule]] = {}
    seen: dict[str, dict[str, int]] = {}
    for row in rows:
        community = str(row.get(columns.community, "")).strip()
        cited = str(row.get(columns.rule_text, "") or "").strip()
        if not community or not cited:
            continue
        norm = normalize_rule_text(cited)
        if not norm:
            continue
        by_norm = seen.setdefault(community, {})
        if norm not in by_norm:
            number = len(by_norm) + 1
            by_norm[norm] = number
            community_rules.setdefault(community, []).append(Rule(number, cited))

    result = ImportResult(
        rule_sets={
            community: RuleSet(
                community=community,
                instance=instance,
                rules=tuple(rules),
                snapshot_at=datetime(1970, 1, 1, tzinfo=timezone.utc),
            )
            for community, rules in community_rules.items()
        }
    )

    for i, row in enumerate(rows):
        community = str(row.get(columns.community, "")).strip()
        comment = _final_comment(row.get(columns.conversation))
        moderated = _as_bool(row.get(columns.moderated, False))
        if not community or not comment:
            result.dropped += 1
            continue
        gold = 0
        if moderated:
            cited = normalize_rule_text(str(row.get(columns.rule_text, "") or ""))
            number = seen.get(community, {}).get(cited)
            if number is None:
                result.dropped += 1
                continue
            gold = number
        result.records.append(
            ModerationRecord(
                id=f"{instance}-{i:07d}",
                community=community,
                instance=instance,
                comment_text=comment,
                removed=moderated,
                reason=str(row.get(columns.rule_text)) if moderated else None,
                gold_rule_number=gold,
                created_at=datetime(1970, 1, 1, tzinfo=timezone.utc),
            )
        )
    return result


def load_normvio_file(path: str | Path, columns: ColumnMap | None = None) -> ImportResult:
    """Read the dataset from a CSV or JSON-lines file and import it."""
    path = Path(path)
    rows: list[Mapping[str, object]] = []
    if path.suffix.lower() == ".csv":
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    else:
        with path.open(encoding="utf-8") as fh:
            rows = [json.loads(line) for line in fh if line.strip()]
    return import_normvio(rows, columns=columns)
