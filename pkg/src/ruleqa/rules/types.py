"""Core rule-set domain types."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum


@dataclass(frozen=True)
class Rule:
    """A single numbered community rule.

    ``text`` holds one rule statement with any leading enumeration marker
    already stripped; ``number`` is unique within its rule set.
    """

    number: int
    text: str

    def __post_init__(self) -> None:
        if self.number < 1:
            raise ValueError(f"rule number must be >= 1, got {self.number}")
        if not self.text.strip():
            raise ValueError("rule text must be non-empty")


@dataclass(frozen=True)
class RuleSet:
    """A community's ordered rule list snapshot."""

    community: str
    instance: str
    rules: tuple[Rule, ...]
    snapshot_at: datetime = field(
        default_factory=lambda: datetime(1970, 1, 1, tzinfo=timezone.utc)
    )

    def __post_init__(self) -> None:
        numbers = [r.number for r in self.rules]
        if len(numbers) != len(set(numbers)):
            raise ValueError("duplicate rule numbers in rule set")

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def numbers(self) -> tuple[int, ...]:
        return tuple(r.number for r in self.rules)

    def rule(self, number: int) -> Rule:
        for r in self.rules:
            if r.number == number:
                return r
        raise KeyError(f"no rule numbered {number}")

    def texts(self) -> list[str]:
        return [r.text for r in self.rules]


class MatchMethod(str, Enum):
    NUMBER_REFERENCE = "number_reference"
    EMBEDDING_SIMILARITY = "embedding_similarity"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class MatchResult:
    """Outcome of aligning a moderator reason with a rule set.

    ``similarity`` is only set for embedding matches and is then always
    at or above the match threshold; unmatched results carry no rule.
    """

    rule_number: int | None
    method: MatchMethod
    similarity: float | None = None

    def __post_init__(self) -> None:
        if self.method is MatchMethod.UNMATCHED and self.rule_number is not None:
            raise ValueError("unmatched result cannot carry a rule number")
        if self.method is MatchMethod.EMBEDDING_SIMILARITY and self.similarity is None:
            raise ValueError("similarity match must record a similarity")
