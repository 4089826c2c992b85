"""Holdout-generalization reporting for leave-N-out evaluations."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from ..ingest.types import ModerationRecord
from ..rules.categories import Categorizer, EVAL_CATEGORIES
from ..rules.types import RuleSet
from .labeling import label_predictions
from .metrics import category_macro_f1

# predictor: (record, rule_set) -> predicted rule number
Predictor = Callable[[ModerationRecord, RuleSet], int]


@dataclass(frozen=True)
class GenRow:
    set_name: str
    n: int
    category: str
    macro_f1: float | None  # None marks an absent (empty-holdout) cell


def evaluate_holdout(
    predictor: Predictor,
    records: Sequence[ModerationRecord],
    rule_sets: Mapping[str, RuleSet],
    categorizer: Categorizer | None = None,
) -> dict[str, float]:
    preds = [(r.id, predictor(r, rule_sets[r.community])) for r in records]
    labeled = label_predictions(preds, records, rule_sets, categorizer)
    return category_macro_f1(labeled, categories=EVAL_CATEGORIES)


def generalization_report(
    predictor: Predictor,
    holdouts_by_n: Mapping[int, Mapping[str, Sequence[ModerationRecord]]],
    rule_sets: Mapping[str, RuleSet],
    categorizer: Categorizer | None = None,
) -> list[GenRow]:
    """Long-format rows (set, N, category, macro F1) over every holdout.

    ``holdouts_by_n`` maps each N to its holdout sets, keyed by set name
    (``communities`` / ``rules``), as produced by the dataset splitter.
    """
    rows: list[GenRow] = []
    for n in sorted(holdouts_by_n):
        for set_name in sorted(holdouts_by_n[n]):
            records = holdouts_by_n[n][set_name]
            if not records:
                rows.extend(GenRow(set_name, n, c, None) for c in EVAL_CATEGORIES)
                continue
            scores = evaluate_holdout(predictor, records, rule_sets, categorizer)
            rows.extend(GenRow(set_name, n, c, scores[c]) for c in EVAL_CATEGORIES)
    return rows


def write_rows_csv(rows: Sequence[GenRow], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["set", "N", "category", "macro_f1"])
        for row in rows:
            writer.writerow(
                [
                    row.set_name,
                    row.n,
                    row.category,
                    "" if row.macro_f1 is None else f"{row.macro_f1:.6f}",
                ]
            )


def render_rows_png(rows: Sequence[GenRow], path: str | Path) -> None:
    """Simple per-set bar charts of macro F1 by category, one panel per N."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sets = sorted({r.set_name for r in rows})
    ns = sorted({r.n for r in rows})
    fig, axes = plt.subplots(
        len(sets), len(ns), figsize=(4 * max(len(ns), 1), 3 * max(len(sets), 1)), squeeze=False
    )
    for i, set_name in enumerate(sets):
        for j, n in enumerate(ns):
            ax = axes[i][j]
            cell = [r for r in rows if r.set_name == set_name and r.n == n]
            cats = [r.category for r in cell]
            vals = [r.macro_f1 if r.macro_f1 is not None else 0.0 for r in cell]
            ax.bar(range(len(cats)), vals)
            ax.set_xticks(range(len(cats)))
            ax.set_xticklabels(cats, rotation=90, fontsize=6)
            ax.set_ylim(0, 1)
            ax.set_title(f"{set_name} N={n}", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
