"""Multi-label confusion matrix.

Allocation rule: per record, exact category matches count on the
diagonal; each unmatched gold category distributes one unit uniformly
across the unmatched predicted categories (across all predicted
categories when none are unmatched). Fractional cell values are then
rounded per gold row by largest remainder, preserving row totals.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..rules.categories import EVAL_CATEGORIES
from .labeling import LabeledPrediction


def multilabel_confusion(
    labeled: Sequence[LabeledPrediction],
    categories: Sequence[str] = EVAL_CATEGORIES,
) -> np.ndarray:
    """Counts matrix, rows indexed by gold category, columns by predicted."""
    index = {c: i for i, c in enumerate(categories)}
    size = len(categories)
    fractional = np.zeros((size, size), dtype=np.float64)

    for row in labeled:
        gold = set(row.gold_categories)
        predicted = set(row.predicted_categories)
        unknown = (gold | predicted) - set(index)
        if unknown:
            raise ValueError(f"categories outside vocabulary: {sorted(unknown)}")
        matched = gold & predicted
        for c in matched:
            fractional[index[c], index[c]] += 1.0
        unmatched_gold = gold - predicted
        if not unmatched_gold:
            continue
        targets = sorted(predicted - gold) or sorted(predicted)
        weight = 1.0 / len(targets)
        for g in unmatched_gold:
            for p in targets:
                fractional[index[g], index[p]] += weight

    return _round_rows(fractional)


def _round_rows(fractional: np.ndarray) -> np.ndarray:
    """Largest-remainder rounding per row; row sums are integral by
    construction and are preserved exactly."""
    out = np.zeros_like(fractional, dtype=np.int64)
    for i in range(fractional.shape[0]):
        row = fractional[i]
        total = int(round(row.sum()))
        base = np.floor(row).astype(np.int64)
        deficit = total - int(base.sum())
        if deficit > 0:
            remainders = row - base
            order = sorted(range(len(row)), key=lambda j: (-remainders[j], j))
            for j in order[:deficit]:
                base[j] += 1
        out[i] = base
    return out
