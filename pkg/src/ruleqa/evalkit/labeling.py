"""Turn rule-number predictions into category-labeled rows for scoring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..ingest.types import ModerationRecord
from ..rules.categories import Categorizer, SAFE_CATEGORY, default_categorizer
from ..rules.types import RuleSet


@dataclass(frozen=True)
class LabeledPrediction:
    record_id: str
    gold_rule_number: int
    predicted_rule_number: int | None
    gold_categories: frozenset[str]
    predicted_categories: frozenset[str]

    def __post_init__(self) -> None:
        if not self.gold_categories or not self.predicted_categories:
            raise ValueError("category sets must be non-empty")

    @property
    def gold_safe(self) -> bool:
        return self.gold_rule_number == 0

    @property
    def predicted_safe(self) -> bool:
        if self.predicted_rule_number is not None:
            return self.predicted_rule_number == 0
        return self.predicted_categories == frozenset({SAFE_CATEGORY})


def categories_of_rule(
    rule_number: int | None,
    rule_set: RuleSet | None,
    categorizer: Categorizer,
) -> frozenset[str]:
    """Category set for a rule number; 0 or absent maps to {safe}."""
    if rule_number is None or rule_number == 0:
        return frozenset({SAFE_CATEGORY})
    if rule_set is None:
        raise ValueError(f"rule {rule_number} referenced without a rule set")
    rule = rule_set.rule(rule_number)
    return frozenset(categorizer.categories_for(rule.text))


def label_predictions(
    preds: Iterable[tuple[str, int | None]],
    gold: Iterable[ModerationRecord],
    rule_sets: Mapping[str, RuleSet],
    categorizer: Categorizer | None = None,
) -> list[LabeledPrediction]:
    """Join predictions with gold records and derive category sets.

    Every prediction must reference a known record; rule numbers resolve
    to categories through the community's rule set.
    """
    categorizer = categorizer or default_categorizer()
    by_id = {r.id: r for r in gold}
    labeled = []
    for record_id, predicted in preds:
        record = by_id.get(record_id)
        if record is None:
            raise KeyError(f"prediction references unknown record {record_id!r}")
        rule_set = rule_sets.get(record.community)
        labeled.append(
            LabeledPrediction(
                record_id=record_id,
                gold_rule_number=record.gold_rule_number,
                predicted_rule_number=predicted,
                gold_categories=categories_of_rule(
                    record.gold_rule_number, rule_set, categorizer
                ),
                predicted_categories=categories_of_rule(predicted, rule_set, categorizer),
            )
        )
    return labeled


def label_category_predictions(
    preds: Iterable[tuple[str, Iterable[str]]],
    gold: Iterable[ModerationRecord],
    rule_sets: Mapping[str, RuleSet],
    categorizer: Categorizer | None = None,
) -> list[LabeledPrediction]:
    """As label_predictions, for external files that predict categories
    directly (no rule numbers). Empty prediction sets map to {safe}."""
    categorizer = categorizer or default_categorizer()
    by_id = {r.id: r for r in gold}
    labeled = []
    for record_id, categories in preds:
        record = by_id.get(record_id)
        if record is None:
            raise KeyError(f"prediction references unknown record {record_id!r}")
        rule_set = rule_sets.get(record.community)
        predicted = frozenset(categories) or frozenset({SAFE_CATEGORY})
        labeled.append(
            LabeledPrediction(
                record_id=record_id,
                gold_rule_number=record.gold_rule_number,
                predicted_rule_number=None,
                gold_categories=categories_of_rule(
                    record.gold_rule_number, rule_set, categorizer
                ),
                predicted_categories=predicted,
            )
        )
    return labeled
