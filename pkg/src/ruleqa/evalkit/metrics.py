"""Category macro F1 and binary safe metrics.

Each category is scored as its own binary task: F1 of the positive class
and F1 of the negative class are macro-averaged. F1 with a zero-support
denominator is defined as 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..rules.categories import EVAL_CATEGORIES
from .labeling import LabeledPrediction


def f1_from_counts(tp: int, fp: int, fn: int) -> float:
    denom = 2 * tp + fp + fn
    return (2 * tp / denom) if denom else 0.0


def binary_macro_f1(gold: Sequence[bool], predicted: Sequence[bool]) -> float:
    """Mean of the positive-class and negative-class F1 of one binary task."""
    tp = sum(1 for g, p in zip(gold, predicted) if g and p)
    fp = sum(1 for g, p in zip(gold, predicted) if not g and p)
    fn = sum(1 for g, p in zip(gold, predicted) if g and not p)
    tn = sum(1 for g, p in zip(gold, predicted) if not g and not p)
    positive = f1_from_counts(tp, fp, fn)
    negative = f1_from_counts(tn, fn, fp)
    return (positive + negative) / 2.0


def category_macro_f1(
    labeled: Sequence[LabeledPrediction],
    categories: Sequence[str] | None = None,
) -> dict[str, float]:
    """Per-category macro F1.

    By default only categories that occur in some gold or predicted set
    are reported (a zero-support category would otherwise score a
    meaningless 0.5 from its all-negative side). Pass an explicit
    category list to force fixed-shape output.
    """
    if not labeled:
        raise ValueError("labeled predictions must be non-empty")
    if categories is None:
        support = category_support(labeled)
        categories = [c for c in EVAL_CATEGORIES if support.get(c, 0) > 0]
    out = {}
    for category in categories:
        gold = [category in row.gold_categories for row in labeled]
        predicted = [category in row.predicted_categories for row in labeled]
        out[category] = binary_macro_f1(gold, predicted)
    return out


def binary_safe_f1(labeled: Sequence[LabeledPrediction]) -> dict[str, float]:
    """Per-class F1 of the binary safe-vs-violating task."""
    if not labeled:
        raise ValueError("labeled predictions must be non-empty")
    gold = [row.gold_safe for row in labeled]
    predicted = [row.predicted_safe for row in labeled]
    tp = sum(1 for g, p in zip(gold, predicted) if g and p)
    fp = sum(1 for g, p in zip(gold, predicted) if not g and p)
    fn = sum(1 for g, p in zip(gold, predicted) if g and not p)
    tn = sum(1 for g, p in zip(gold, predicted) if not g and not p)
    return {
        "safe_f1": f1_from_counts(tp, fp, fn),
        "not_safe_f1": f1_from_counts(tn, fn, fp),
    }


def mean_macro_f1(
    per_category: dict[str, float], support: dict[str, int] | None = None
) -> float:
    """Scalar summary: mean macro F1 over categories, restricted to
    categories with support when counts are given."""
    values = [
        v
        for c, v in per_category.items()
        if support is None or support.get(c, 0) > 0
    ]
    return float(np.mean(values)) if values else 0.0


def category_support(labeled: Sequence[LabeledPrediction]) -> dict[str, int]:
    """Occurrences of each category across gold and predicted sets."""
    support: dict[str, int] = {}
    for row in labeled:
        for c in row.gold_categories | row.predicted_categories:
            support[c] = support.get(c, 0) + 1
    return support


@dataclass
class EvalReport:
    per_category_macro_f1: dict[str, float]
    binary_safe: dict[str, float]
    confusion: list[list[int]]
    confusion_categories: tuple[str, ...]
    n_records: int
    extras: dict = field(default_factory=dict)

    def to_obj(self) -> dict:
        return {
            "per_category_macro_f1": self.per_category_macro_f1,
            "binary_safe": self.binary_safe,
            "confusion": self.confusion,
            "confusion_categories": list(self.confusion_categories),
            "n_records": self.n_records,
            **({"extras": self.extras} if self.extras else {}),
        }


def evaluate(labeled: Iterable[LabeledPrediction]) -> EvalReport:
    """Full report: category macro F1, binary safe, confusion matrix."""
    from .confusion import multilabel_confusion

    rows = list(labeled)
    matrix = multilabel_confusion(rows)
    return EvalReport(
        per_category_macro_f1=category_macro_f1(rows),
        binary_safe=binary_safe_f1(rows),
        confusion=matrix.tolist(),
        confusion_categories=tuple(EVAL_CATEGORIES),
        n_records=len(rows),
    )
