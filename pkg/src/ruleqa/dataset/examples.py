"""Model-ready QA instances built from records and rule sets."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..ingest.types import ModerationRecord
from ..rules.types import RuleSet
from .context import (
    RuleContext,
    SAFE_RULE_NUMBER,
    SAFE_RULE_TEXT,
    build_context,
    wrap_comment,
)

# Literal separator between comment and community in a choice pair; it is
# mapped to the encoder's native segment separator at tokenization time.
PAIR_SEPARATOR = "[SEP]"


class DataIntegrityError(Exception):
    """Raised when a record's gold rule cannot be located in its rule set."""


@dataclass(frozen=True)
class ExtractExample:
    """Span-annotated context for the extractive model."""

    question: str
    context: RuleContext
    answer_rule: int
    answer_span: tuple[int, int]
    record_id: str = ""
    community: str = ""
    truncated: bool = False

    def answer_text(self) -> str:
        return self.context.text[self.answer_span[0] : self.answer_span[1]]


@dataclass(frozen=True)
class ChoicePair:
    """One binary-labeled comment-rule pair of a candidate group."""

    group_id: str
    content_sequence: str
    rule_number: int
    rule_text: str
    label: int
    community: str = ""


def _check_gold(record: ModerationRecord, rule_set: RuleSet) -> None:
    valid = {SAFE_RULE_NUMBER} | set(rule_set.numbers)
    if record.gold_rule_number not in valid:
        raise DataIntegrityError(
            f"record {record.id}: gold rule {record.gold_rule_number} not in "
            f"rule set of {record.community} (rules {sorted(valid)})"
        )


def make_extract_example(record: ModerationRecord, rule_set: RuleSet) -> ExtractExample:
    """Build the span-prediction instance for one record.

    The context always includes the safe pseudo-rule, and the answer span
    is exactly the gold rule's segment.
    """
    _check_gold(record, rule_set)
    context = build_context(rule_set, include_safe_option=True)
    seg = context.segment_for(record.gold_rule_number)
    return ExtractExample(
        question=wrap_comment(record.comment_text),
        context=context,
        answer_rule=record.gold_rule_number,
        answer_span=(seg.start, seg.end),
        record_id=record.id,
        community=record.community,
    )


def rebind_answer(example: ExtractExample, context: RuleContext, answer_rule: int) -> ExtractExample:
    """Re-derive the answer span after the context has been rebuilt."""
    seg = context.segment_for(answer_rule)
    return replace(
        example,
        context=context,
        answer_rule=answer_rule,
        answer_span=(seg.start, seg.end),
    )


def make_choice_pairs(record: ModerationRecord, rule_set: RuleSet) -> list[ChoicePair]:
    """Build the candidate group for one record: safe pseudo-rule first,
    then every community rule, with exactly one positive label."""
    _check_gold(record, rule_set)
    content_sequence = f"{record.comment_text} {PAIR_SEPARATOR} {record.community}"
    candidates: list[tuple[int, str]] = [(SAFE_RULE_NUMBER, SAFE_RULE_TEXT)]
    candidates.extend((r.number, r.text) for r in rule_set.rules)
    return [
        ChoicePair(
            group_id=record.id,
            content_sequence=content_sequence,
            rule_number=number,
            rule_text=text,
            label=1 if number == record.gold_rule_number else 0,
            community=record.community,
        )
        for number, text in candidates
    ]
