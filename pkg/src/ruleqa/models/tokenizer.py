"""Word-level tokenizer with character offsets.

Backs the small from-scratch encoder. The four rule/comment marker
strings and the sequence separator are registered as single special
tokens; everything else splits into lowercased word and punctuation
tokens with exact character offsets into the source string.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..dataset.context import MARKER_TOKENS

PAD, UNK, CLS, SEP = "[PAD]", "[UNK]", "[CLS]", "[SEP]"
CONTROL_TOKENS = (PAD, UNK, CLS, SEP)

_SPECIAL_SURFACE = tuple(sorted(MARKER_TOKENS + (SEP,), key=len, reverse=True))
_TOKEN_RX = re.compile(
    "|".join(re.escape(s) for s in _SPECIAL_SURFACE) + r"|[\w']+|[^\w\s]"
)


@dataclass(frozen=True)
class TokenSpan:
    token: str
    start: int
    end: int


def tokenize_with_offsets(text: str) -> list[TokenSpan]:
    spans = []
    for m in _TOKEN_RX.finditer(text):
        token = m.group(0)
        if token not in _SPECIAL_SURFACE:
            token = token.lower()
        spans.append(TokenSpan(token, m.start(), m.end()))
    return spans


class WordTokenizer:
    """Fixed-vocabulary word tokenizer; OOV tokens map to [UNK]."""

    def __init__(self, vocab: dict[str, int]):
        for i, tok in enumerate(CONTROL_TOKENS):
            if vocab.get(tok) != i:
                raise ValueError("vocab must reserve control tokens at ids 0..3")
        for marker in MARKER_TOKENS:
            if marker not in vocab:
                raise ValueError(f"vocab missing marker token {marker}")
        self.vocab = vocab
        self.inverse = {i: t for t, i in vocab.items()}

    @property
    def pad_id(self) -> int:
        return self.vocab[PAD]

    @property
    def unk_id(self) -> int:
        return self.vocab[UNK]

    @property
    def cls_id(self) -> int:
        return self.vocab[CLS]

    @property
    def sep_id(self) -> int:
        return self.vocab[SEP]

    def __len__(self) -> int:
        return len(self.vocab)

    def convert(self, token: str) -> int:
        return self.vocab.get(token, self.unk_id)

    def encode_with_offsets(self, text: str) -> tuple[list[int], list[tuple[int, int]]]:
        spans = tokenize_with_offsets(text)
        return (
            [self.convert(s.token) for s in spans],
            [(s.start, s.end) for s in spans],
        )

    @classmethod
    def build(cls, texts: Iterable[str], max_size: int = 20000, min_count: int = 1) -> "WordTokenizer":
        counts: dict[str, int] = {}
        for text in texts:
            for span in tokenize_with_offsets(text):
                counts[span.token] = counts.get(span.token, 0) + 1
        vocab = {tok: i for i, tok in enumerate(CONTROL_TOKENS)}
        for marker in MARKER_TOKENS:
            vocab[marker] = len(vocab)
            counts.pop(marker, None)
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        for token, count in ordered:
            if count < min_count or len(vocab) >= max_size:
                break
            if token not in vocab:
                vocab[token] = len(vocab)
        return cls(vocab)

    def save(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            json.dump(self.vocab, fh, ensure_ascii=False, indent=0)

    @classmethod
    def load(cls, path: str | Path) -> "WordTokenizer":
        with Path(path).open(encoding="utf-8") as fh:
            return cls(json.load(fh))


def pad_batch(
    sequences: Sequence[Sequence[int]], pad_id: int
) -> tuple[list[list[int]], list[list[int]]]:
    """Right-pad to the batch max length; returns (ids, attention_mask)."""
    width = max(len(s) for s in sequences)
    ids = [list(s) + [pad_id] * (width - len(s)) for s in sequences]
    mask = [[1] * len(s) + [0] * (width - len(s)) for s in sequences]
    return ids, mask
