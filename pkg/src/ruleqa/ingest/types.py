"""Domain types for modlog ingestion."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Callable


class DiscoveredVia(str, Enum):
    SEED_PORTAL = "seed_portal"
    FEDERATION_SNOWBALL = "federation_snowball"


_DOMAIN = re.compile(r"^(?=.{1,253}$)[a-z0-9]([a-z0-9-]{0,61}[a-z0-9])?(\.[a-z0-9]([a-z0-9-]{0,61}[a-z0-9])?)*$")


def is_valid_host(host: str) -> bool:
    return bool(_DOMAIN.match(host.lower()))


@dataclass(frozen=True)
class InstanceHost:
    host: str
    discovered_via: DiscoveredVia
    reachable: bool

    def __post_init__(self) -> None:
        if not is_valid_host(self.host):
            raise ValueError(f"invalid host: {self.host!r}")


class ModAction(str, Enum):
    REMOVE_COMMENT = "remove_comment"
    RESTORE_COMMENT = "restore_comment"
    OTHER = "other"


@dataclass(frozen=True)
class ModlogEntry:
    """One parsed modlog row; text may be empty when scrubbed upstream."""

    entry_id: str
    instance: str
    community: str
    action: ModAction
    comment_id: str
    comment_text: str
    reason: str | None
    moderator_id: str
    community_description: str
    acted_at: datetime


@dataclass(frozen=True)
class ModerationRecord:
    """One comment with community context and its gold rule label.

    Rule number 0 means safe. Safe records never carry a reason; removed
    records are guaranteed a reason only after filtering.
    """

    id: str
    community: str
    instance: str
    comment_text: str
    removed: bool
    reason: str | None
    gold_rule_number: int
    created_at: datetime
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.comment_text:
            raise ValueError("comment_text must be non-empty")
        if self.gold_rule_number < 0:
            raise ValueError("gold_rule_number must be >= 0")
        if not self.removed:
            if self.gold_rule_number != 0:
                raise ValueError("safe record must have gold_rule_number 0")
            if self.reason is not None:
                raise ValueError("safe record must not carry a reason")


# Placeholder bodies Lemmy substitutes when content is scrubbed.
SCRUBBED_MARKERS = frozenset(
    {"[removed]", "[deleted]", "*permanently deleted*", "removed by mod"}
)


@dataclass
class FilterPolicy:
    """Knobs for turning raw modlog entries into clean records.

    A burst of at least ``burst_count`` removals by one moderator in one
    community within ``burst_window_seconds`` counts as a mass removal and
    is excluded wholesale. ``language_check`` is a pluggable predicate;
    ``None`` falls back to the bundled character-n-gram English identifier.
    """

    burst_count: int = 10
    burst_window_seconds: float = 300.0
    require_reason: bool = True
    scrubbed_markers: frozenset[str] = SCRUBBED_MARKERS
    language_check: Callable[[str], bool] | None = None
