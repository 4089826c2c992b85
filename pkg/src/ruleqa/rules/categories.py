"""Rule category tagging.

Categories are evaluation-only metadata used to group report results; the
QA models never see them. The default categorizer is a keyword-pattern
table shipped as a versioned TSV data file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Protocol

CATEGORY_VOCABULARY: frozenset[str] = frozenset(
    {
        "incivility",
        "hate",
        "spam",
        "content",
        "doxxing",
        "format",
        "harassment",
        "meta",
        "off-topic",
        "trolling",
        "other",
    }
)

# Pseudo-category for never-removed comments; only evalkit uses it.
SAFE_CATEGORY = "safe"

EVAL_CATEGORIES: tuple[str, ...] = (
    "incivility",
    "hate",
    "spam",
    "content",
    "doxxing",
    "format",
    "harassment",
    "meta",
    "off-topic",
    "trolling",
    "other",
    SAFE_CATEGORY,
)


@dataclass(frozen=True)
class CategoryTag:
    categories: frozenset[str]

    def __post_init__(self) -> None:
        if not self.categories:
            raise ValueError("category tag must be non-empty")
        unknown = self.categories - CATEGORY_VOCABULARY
        if unknown:
            raise ValueError(f"categories outside vocabulary: {sorted(unknown)}")


class Categorizer(Protocol):
    def categories_for(self, rule_text: str) -> set[str]: ...


class KeywordCategorizer:
    """Tags rules by case-insensitive regex patterns from a TSV table.

    Table lines are ``category<TAB>pattern``; ``#`` lines are comments.
    Unmatched rules fall back to ``{"other"}``.
    """

    def __init__(self, table: list[tuple[str, str]] | None = None):
        if table is None:
            table = _load_default_table()
        self._patterns: list[tuple[str, re.Pattern[str]]] = []
        for category, pattern in table:
            if category not in CATEGORY_VOCABULARY:
                raise ValueError(f"unknown category in table: {category!r}")
            self._patterns.append((category, re.compile(pattern, re.IGNORECASE)))

    def categories_for(self, rule_text: str) -> set[str]:
        hits = {cat for cat, rx in self._patterns if rx.search(rule_text)}
        return hits or {"other"}


def _load_default_table() -> list[tuple[str, str]]:
    raw = (
        resources.files("ruleqa.rules")
        .joinpath("data/keyword_categories.tsv")
        .read_text(encoding="utf-8")
    )
    return parse_keyword_table(raw)


def parse_keyword_table(raw: str) -> list[tuple[str, str]]:
    table = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"keyword table line {lineno} has no tab separator")
        category, pattern = line.split("\t", 1)
        table.append((category.strip(), pattern.strip()))
    return table


def categorize_rule(rule, categorizer: Categorizer | None = None) -> CategoryTag:
    """Tag one rule with one or more of the fixed categories."""
    text = rule.text if hasattr(rule, "text") else str(rule)
    if not text.strip():
        raise ValueError("rule text must be non-empty")
    if categorizer is None:
        categorizer = default_categorizer()
    cats = set(categorizer.categories_for(text))
    return CategoryTag(categories=frozenset(cats or {"other"}))


_DEFAULT: KeywordCategorizer | None = None


def default_categorizer() -> KeywordCategorizer:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = KeywordCategorizer()
    return _DEFAULT
