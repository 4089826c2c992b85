"""Align free-text moderator reasons with a community's rules.

Two-stage matching: explicit rule-number citations are resolved with
regexes first; otherwise the reason is embedded alongside every rule text
and the most similar rule wins, provided its cosine similarity clears the
threshold (default 0.85).
"""

from __future__ import annotations

import re

from .encoders import SentenceEncoder, HashingNgramEncoder, cosine_similarities
from .types import MatchMethod, MatchResult, RuleSet

DEFAULT_SIMILARITY_THRESHOLD = 0.85

# "rule 6", "Rule#3", "rule # 12". Bare "#N" is handled separately and only
# accepted when N is in range; "r/N" is deliberately not treated as a
# citation (collides with community links).
_RULE_CITATION = re.compile(r"\brule\s*#?\s*(\d+)", re.IGNORECASE)
_BARE_HASH = re.compile(r"(?<![\w/#])#(\d+)\b")


def cited_rule_numbers(reason: str, max_rule_number: int) -> list[int]:
    """All cited rule numbers in order of appearance, range-unchecked for
    explicit citations, range-checked for bare "#N" shorthand."""
    cites = [int(m.group(1)) for m in _RULE_CITATION.finditer(reason)]
    for m in _BARE_HASH.finditer(reason):
        n = int(m.group(1))
        if 1 <= n <= max_rule_number:
            cites.append(n)
    return cites


def match_reason(
    reason: str,
    rule_set: RuleSet,
    encoder: SentenceEncoder | None = None,
    threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
) -> MatchResult:
    """Match one moderator reason against a non-empty rule set."""
    if len(rule_set) == 0:
        raise ValueError("rule set must be non-empty")
    valid = set(rule_set.numbers)
    for n in cited_rule_numbers(reason, max(valid)):
        if n in valid:
            return MatchResult(rule_number=n, method=MatchMethod.NUMBER_REFERENCE)
    # out-of-range or absent citations fall through to similarity
    if encoder is None:
        encoder = HashingNgramEncoder()
    number, similarity = best_similarity(reason, rule_set, encoder)
    if similarity >= threshold:
        return MatchResult(
            rule_number=number,
            method=MatchMethod.EMBEDDING_SIMILARITY,
            similarity=similarity,
        )
    return MatchResult(rule_number=None, method=MatchMethod.UNMATCHED)


def best_similarity(
    reason: str, rule_set: RuleSet, encoder: SentenceEncoder
) -> tuple[int, float]:
    """Argmax rule by cosine similarity; ties break to the lowest number."""
    vectors = encoder.encode([reason] + rule_set.texts())
    sims = cosine_similarities(vectors[0], vectors[1:])
    best = min(range(len(sims)), key=lambda i: (-sims[i], rule_set.rules[i].number))
    return rule_set.rules[best].number, float(sims[best])
