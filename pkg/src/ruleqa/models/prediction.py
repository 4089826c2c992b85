"""Shared prediction result type."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Prediction:
    rule_number: int
    rule_text: str
    scores: tuple[tuple[int, float], ...]
    span: tuple[int, int] | None = None  # char offsets into rule_text
    model_kind: str = ""
    flags: tuple[str, ...] = field(default=())
