"""Structured rule extraction from free-text community descriptions.

Extraction backends are pluggable: a remote chat-completion model for live
pipelines and a deterministic list parser so the whole pipeline runs
offline and in tests.
"""

from __future__ import annotations

import json
import os
import re
from datetime import datetime, timezone
from typing import Protocol, Sequence

import httpx

from .types import Rule, RuleSet


class RuleExtractionError(Exception):
    """Extraction backend failure; carries the raw description."""

    def __init__(self, message: str, description: str):
        super().__init__(message)
        self.description = description


class RuleExtractor(Protocol):
    def extract(self, description: str) -> list[str]: ...


# Ordered-list markers: "1. ", "2) ", "3: ", "4 - ", optionally "Rule 5:".
_NUMBERED = re.compile(r"^\s*(?:rule\s+)?(\d+)\s*[-.):\]]\s*(.+)$", re.IGNORECASE)
_BULLET = re.compile(r"^\s*[-*•·▸‣]\s+(.+)$")
_INLINE_BULLET_SPLIT = re.compile(r"\s*[•·▸‣]\s*")


class ListRuleExtractor:
    """Deterministic fallback: parses numbered or bulleted list items.

    Items shorter than ``min_words`` words are skipped; descriptions with
    no list markers yield no rules.
    """

    def __init__(self, min_words: int = 2):
        self.min_words = min_words

    def extract(self, description: str) -> list[str]:
        items: list[str] = []
        for line in description.splitlines():
            if _INLINE_BULLET_SPLIT.search(line) and len(_INLINE_BULLET_SPLIT.split(line)) > 2:
                # single line carrying several bullet items
                for part in _INLINE_BULLET_SPLIT.split(line):
                    self._add(items, part)
                continue
            m = _NUMBERED.match(line)
            if m:
                self._add(items, m.group(2))
                continue
            m = _BULLET.match(line)
            if m:
                self._add(items, m.group(1))
        return items

    def _add(self, items: list[str], text: str) -> None:
        text = text.strip()
        if len(text.split()) >= self.min_words:
            items.append(text)


class RemoteChatExtractor:
    """Posts the description to a chat-completion endpoint.

    The endpoint is expected to return a JSON array of rule strings in the
    assistant message. The API key is read from ``api_key_env``.
    """

    PROMPT = (
        "List the community rules stated in the following description as a "
        "JSON array of strings, one rule per string, without numbering. "
        "Return [] if no rules are stated.\n\n"
    )

    def __init__(
        self,
        endpoint: str,
        model: str = "gpt-4o",
        api_key_env: str = "RULEQA_EXTRACTOR_API_KEY",
        timeout: float = 30.0,
        client: httpx.Client | None = None,
    ):
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self._client = client or httpx.Client(timeout=timeout)

    def extract(self, description: str) -> list[str]:
        headers = {}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": self.PROMPT + description}],
        }
        try:
            resp = self._client.post(self.endpoint, json=payload, headers=headers)
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
            rules = json.loads(content)
        except Exception as exc:
            raise RuleExtractionError(f"remote extraction failed: {exc}", description) from exc
        if not isinstance(rules, list) or not all(isinstance(r, str) for r in rules):
            raise RuleExtractionError("extractor did not return a JSON array of strings", description)
        return rules


def extract_rules(
    description: str,
    extractor: RuleExtractor | None = None,
    community: str = "",
    instance: str = "",
    snapshot_at: datetime | None = None,
) -> RuleSet:
    """Extract a rule set, renumbered contiguously 1..k in document order."""
    if not description.strip():
        raise ValueError("description must be non-empty")
    if extractor is None:
        extractor = ListRuleExtractor()
    texts = extractor.extract(description)
    return rules_from_texts(
        texts, community=community, instance=instance, snapshot_at=snapshot_at
    )


def rules_from_texts(
    texts: Sequence[str],
    community: str = "",
    instance: str = "",
    snapshot_at: datetime | None = None,
) -> RuleSet:
    rules = tuple(
        Rule(number=i, text=text.strip()) for i, text in enumerate(texts, start=1) if text.strip()
    )
    return RuleSet(
        community=community,
        instance=instance,
        rules=rules,
        snapshot_at=snapshot_at or datetime(1970, 1, 1, tzinfo=timezone.utc),
    )
