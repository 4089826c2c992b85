"""Rule context construction for the QA models.

The context concatenates ``{n}. {text}`` lines, one per rule, wrapped in
rule-boundary marker strings that are registered as special vocabulary
items at the tokenizer level. Segment offsets cover only each rule's text
portion (never the numeric prefix) so augmentations that reassign
displayed numbers leave gold spans intact.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..rules.types import RuleSet

RULES_OPEN = "<rules>"
RULES_CLOSE = "</rules>"
COMMENT_OPEN = "<comment>"
COMMENT_CLOSE = "</comment>"
MARKER_TOKENS = (RULES_OPEN, RULES_CLOSE, COMMENT_OPEN, COMMENT_CLOSE)

SAFE_RULE_NUMBER = 0
SAFE_RULE_TEXT = "No rule is violated."


@dataclass(frozen=True)
class ContextEntry:
    """One context line: a rule identity, its displayed number, and text.

    ``identity`` is the stable rule number used for answers; ``display``
    is what the model sees as the numeric prefix (they differ only under
    renumbering augmentation).
    """

    identity: int
    display: int
    text: str


@dataclass(frozen=True)
class Segment:
    rule_number: int
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class RuleContext:
    text: str
    segments: tuple[Segment, ...]
    includes_safe_option: bool
    entries: tuple[ContextEntry, ...]

    def segment_for(self, rule_number: int) -> Segment:
        for seg in self.segments:
            if seg.rule_number == rule_number:
                return seg
        raise KeyError(f"no segment for rule {rule_number}")

    def rule_text(self, rule_number: int) -> str:
        seg = self.segment_for(rule_number)
        return self.text[seg.start : seg.end]

    @property
    def rule_numbers(self) -> tuple[int, ...]:
        return tuple(seg.rule_number for seg in self.segments)


def build_context_from_entries(
    entries: list[ContextEntry], includes_safe_option: bool
) -> RuleContext:
    parts: list[str] = [RULES_OPEN, " "]
    cursor = len(RULES_OPEN) + 1
    segments: list[Segment] = []
    for i, entry in enumerate(entries):
        prefix = f"{entry.display}. "
        parts.append(prefix)
        cursor += len(prefix)
        parts.append(entry.text)
        segments.append(Segment(entry.identity, cursor, cursor + len(entry.text)))
        cursor += len(entry.text)
        if i < len(entries) - 1:
            parts.append("\n")
            cursor += 1
    parts.append(f" {RULES_CLOSE}")
    return RuleContext(
        text="".join(parts),
        segments=tuple(segments),
        includes_safe_option=includes_safe_option,
        entries=tuple(entries),
    )


def build_context(rule_set: RuleSet, include_safe_option: bool) -> RuleContext:
    """Build the rule context for one community.

    When ``include_safe_option`` is set, the safe pseudo-rule (number 0)
    is prepended so both QA models stay closed over the safe class.
    """
    if len(rule_set) == 0:
        raise ValueError("rule set must be non-empty")
    entries: list[ContextEntry] = []
    if include_safe_option:
        entries.append(ContextEntry(SAFE_RULE_NUMBER, SAFE_RULE_NUMBER, SAFE_RULE_TEXT))
    for rule in rule_set.rules:
        entries.append(ContextEntry(rule.number, rule.number, rule.text))
    return build_context_from_entries(entries, include_safe_option)


def wrap_comment(comment_text: str) -> str:
    return f"{COMMENT_OPEN} {comment_text} {COMMENT_CLOSE}"
