"""Shared builders for test data."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from ruleqa.ingest.types import ModAction, ModerationRecord, ModlogEntry
from ruleqa.rules.types import Rule, RuleSet

EPOCH = datetime(2024, 1, 1, tzinfo=timezone.utc)


def record(
    id: str = "r1",
    community: str = "news",
    instance: str = "lemmy.test",
    comment_text: str = "hello world",
    removed: bool = False,
    reason: str | None = None,
    gold_rule_number: int = 0,
    created_at: datetime = EPOCH,
    flags: tuple[str, ...] = (),
) -> ModerationRecord:
    return ModerationRecord(
        id=id,
        community=community,
        instance=instance,
        comment_text=comment_text,
        removed=removed,
        reason=reason,
        gold_rule_number=gold_rule_number,
        created_at=created_at,
        flags=flags,
    )


def rule_set(texts: list[str], community: str = "news", instance: str = "lemmy.test") -> RuleSet:
    return RuleSet(
        community=community,
        instance=instance,
        rules=tuple(Rule(i, t) for i, t in enumerate(texts, start=1)),
    )


def modlog_entry(
    entry_id: str = "e1",
    instance: str = "lemmy.test",
    community: str = "news",
    action: ModAction = ModAction.REMOVE_COMMENT,
    comment_id: str = "c1",
    comment_text: str = "some english comment text here",
    reason: str | None = "Rule 1",
    moderator_id: str = "mod-a",
    community_description: str = "Rules:\n1. No spam posts\n2. Be civil to others",
    acted_at: datetime = EPOCH,
    offset_seconds: float = 0.0,
) -> ModlogEntry:
    return ModlogEntry(
        entry_id=entry_id,
        instance=instance,
        community=community,
        action=action,
        comment_id=comment_id,
        comment_text=comment_text,
        reason=reason,
        moderator_id=moderator_id,
        community_description=community_description,
        acted_at=acted_at + timedelta(seconds=offset_seconds),
    )
