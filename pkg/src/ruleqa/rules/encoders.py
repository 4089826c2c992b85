"""Sentence encoder backends for reason-to-rule matching.

The default encoder is a deterministic feature-hashing model over words,
crude word stems, and boundary-padded character n-grams, so matching
works offline and is stable across runs. Any object with the same
interface (e.g. a transformer sentence embedder) can be plugged in.
"""

from __future__ import annotations

import hashlib
import math
import re
from typing import Protocol, Sequence

import numpy as np


class SentenceEncoder(Protocol):
    dim: int

    def encode(self, texts: Sequence[str]) -> np.ndarray: ...


_WORD = re.compile(r"[\w']+")
_SUFFIXES = ("ing", "ers", "ed", "es", "er", "s")

# High-frequency function words contribute little matching signal.
_STOPWORDS = frozenset(
    "a an and are as at be but by for if in is it no not of on or so the to was with your you".split()
)


def _stem(word: str) -> str:
    for suffix in _SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            return word[: -len(suffix)]
    return word


class HashingNgramEncoder:
    """Hash lexical features into a fixed-size non-negative vector.

    Features per word: the word itself, its crude stem, and character
    3..4-grams of the boundary-padded word. Vectors are L2-normalized;
    identical texts always map to identical vectors, so exact-text
    matches score cosine 1.
    """

    def __init__(self, dim: int = 4096, char_ngrams: tuple[int, int] = (3, 4)):
        self.dim = dim
        self.char_ngrams = char_ngrams

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for row, text in enumerate(texts):
            counts: dict[str, float] = {}
            for word in _WORD.findall(text.lower()):
                weight = 0.2 if word in _STOPWORDS else 1.0
                counts[f"w:{word}"] = counts.get(f"w:{word}", 0.0) + 2.0 * weight
                stem = _stem(word)
                counts[f"s:{stem}"] = counts.get(f"s:{stem}", 0.0) + 1.5 * weight
                padded = f"<{word}>"
                lo, hi = self.char_ngrams
                for n in range(lo, hi + 1):
                    for i in range(len(padded) - n + 1):
                        g = f"c{n}:{padded[i : i + n]}"
                        counts[g] = counts.get(g, 0.0) + 1.0 * weight
            vec = out[row]
            for feat, value in counts.items():
                vec[self._slot(feat)] += 1.0 + math.log(value) if value >= 1.0 else value
            norm = np.linalg.norm(vec)
            if norm > 0:
                vec /= norm
        return out

    def _slot(self, feature: str) -> int:
        digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big") % self.dim


def cosine_similarities(query: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Cosine similarity of one query vector against candidate rows."""
    qn = np.linalg.norm(query)
    cn = np.linalg.norm(candidates, axis=1)
    denom = qn * cn
    sims = np.zeros(len(candidates), dtype=np.float64)
    nz = denom > 0
    sims[nz] = (candidates[nz] @ query) / denom[nz]
    return sims
