import random

import numpy as np
import pytest

from ruleqa.evalkit import (
    LabeledPrediction,
    binary_safe_f1,
    category_macro_f1,
    evaluate,
    label_predictions,
    multilabel_confusion,
)
from ruleqa.rules.categories import EVAL_CATEGORIES, SAFE_CATEGORY

from helpers import record, rule_set


def labeled(record_id, gold_rule, pred_rule, gold_cats, pred_cats):
    return LabeledPrediction(
        record_id=record_id,
        gold_rule_number=gold_rule,
        predicted_rule_number=pred_rule,
        gold_categories=frozenset(gold_cats),
        predicted_categories=frozenset(pred_cats),
    )


def brute_force_category_macro_f1(rows, category):
    """Independent oracle: explicit 2x2 confusion then per-class F1."""
    tp = fp = fn = tn = 0
    for row in rows:
        g = category in row.gold_categories
        p = category in row.predicted_categories
        if g and p:
            tp += 1
        elif not g and p:
            fp += 1
        elif g and not p:
            fn += 1
        else:
            tn += 1

    def f1(tp_, fp_, fn_):
        precision = tp_ / (tp_ + fp_) if tp_ + fp_ else 0.0
        recall = tp_ / (tp_ + fn_) if tp_ + fn_ else 0.0
        return 2 * precision * recall / (precision + recall) if precision + recall else 0.0

    return (f1(tp, fp, fn) + f1(tn, fn, fp)) / 2.0


class TestWorkedExample:
    def test_macro_07333(self):
        # 4 records; gold incivility = {A}; predicted incivility = {A, B}
        rows = [
            labeled("A", 1, 1, {"incivility"}, {"incivility"}),
            labeled("B", 0, 2, {SAFE_CATEGORY}, {"incivility"}),
            labeled("C", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
            labeled("D", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
        ]
        scores = category_macro_f1(rows)
        # positive F1 = 2/3, negative F1 = 0.8, macro = 0.73333...
        assert scores["incivility"] == pytest.approx(0.7333333333333334, abs=1e-12)

    def test_perfect_predictions(self):
        rows = [
            labeled("A", 1, 1, {"spam"}, {"spam"}),
            labeled("B", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
            labeled("C", 2, 2, {"hate", "incivility"}, {"hate", "incivility"}),
        ]
        scores = category_macro_f1(rows)
        assert set(scores) == {"spam", SAFE_CATEGORY, "hate", "incivility"}
        assert all(v == 1.0 for v in scores.values())

    def test_all_safe_on_all_violating(self):
        rows = [
            labeled(str(i), 1, 0, {"spam"}, {SAFE_CATEGORY}) for i in range(5)
        ]
        scores = category_macro_f1(rows)
        # positive F1 for spam is 0 (no predicted positives)
        assert brute_force_category_macro_f1(rows, "spam") == scores["spam"]
        assert scores["spam"] == 0.0  # negative class also zero-support -> 0


class TestRandomizedOracle:
    def test_thousand_random_fixtures_exact(self):
        rng = random.Random(2024)
        cats = list(EVAL_CATEGORIES)
        for trial in range(1000):
            n = rng.randint(1, 12)
            rows = []
            for i in range(n):
                gold_rule = rng.randint(0, 3)
                pred_rule = rng.randint(0, 3)
                gold = (
                    {SAFE_CATEGORY}
                    if gold_rule == 0
                    else set(rng.sample(cats[:-1], rng.randint(1, 2)))
                )
                pred = (
                    {SAFE_CATEGORY}
                    if pred_rule == 0
                    else set(rng.sample(cats[:-1], rng.randint(1, 2)))
                )
                rows.append(labeled(f"r{i}", gold_rule, pred_rule, gold, pred))
            scores = category_macro_f1(rows, categories=EVAL_CATEGORIES)
            for cat in EVAL_CATEGORIES:
                expected = brute_force_category_macro_f1(rows, cat)
                assert abs(scores[cat] - expected) <= 1e-12
            safe_scores = binary_safe_f1(rows)
            gold_flags = [r.gold_rule_number == 0 for r in rows]
            pred_flags = [r.predicted_rule_number == 0 for r in rows]
            tp = sum(g and p for g, p in zip(gold_flags, pred_flags))
            fp = sum((not g) and p for g, p in zip(gold_flags, pred_flags))
            fn = sum(g and (not p) for g, p in zip(gold_flags, pred_flags))
            tn = sum((not g) and (not p) for g, p in zip(gold_flags, pred_flags))
            exp_safe = 2 * tp / (2 * tp + fp + fn) if 2 * tp + fp + fn else 0.0
            exp_not = 2 * tn / (2 * tn + fn + fp) if 2 * tn + fn + fp else 0.0
            assert abs(safe_scores["safe_f1"] - exp_safe) <= 1e-12
            assert abs(safe_scores["not_safe_f1"] - exp_not) <= 1e-12


class TestBinarySafe:
    def test_perfect(self):
        rows = [
            labeled("A", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
            labeled("B", 2, 2, {"spam"}, {"spam"}),
        ]
        assert binary_safe_f1(rows) == {"safe_f1": 1.0, "not_safe_f1": 1.0}

    def test_inverted(self):
        rows = [
            labeled("A", 0, 2, {SAFE_CATEGORY}, {"spam"}),
            labeled("B", 2, 0, {"spam"}, {SAFE_CATEGORY}),
        ]
        assert binary_safe_f1(rows) == {"safe_f1": 0.0, "not_safe_f1": 0.0}

    def test_ten_rows_two_errors_hand_computed(self):
        # 6 safe gold (1 predicted violating), 4 violating gold (1 predicted safe)
        rows = []
        for i in range(6):
            pred = 1 if i == 0 else 0
            rows.append(labeled(f"s{i}", 0, pred, {SAFE_CATEGORY},
                                {"spam"} if pred else {SAFE_CATEGORY}))
        for i in range(4):
            pred = 0 if i == 0 else 1
            rows.append(labeled(f"v{i}", 1, pred,
                                {"spam"}, {SAFE_CATEGORY} if pred == 0 else {"spam"}))
        # safe: TP=5, FP=1, FN=1 -> F1 = 10/12; not-safe: TP=3, FP=1, FN=1 -> 6/8
        scores = binary_safe_f1(rows)
        assert scores["safe_f1"] == pytest.approx(10 / 12)
        assert scores["not_safe_f1"] == pytest.approx(6 / 8)


class TestMultilabelConfusion:
    def cat_idx(self, name):
        return EVAL_CATEGORIES.index(name)

    def test_all_correct_diagonal(self):
        rows = [
            labeled("A", 1, 1, {"spam"}, {"spam"}),
            labeled("B", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
        ]
        m = multilabel_confusion(rows)
        assert m.sum() == 2
        assert m[self.cat_idx("spam"), self.cat_idx("spam")] == 1
        assert m[self.cat_idx(SAFE_CATEGORY), self.cat_idx(SAFE_CATEGORY)] == 1

    def test_single_miss(self):
        rows = [labeled("A", 1, 2, {"content"}, {"format"})]
        m = multilabel_confusion(rows)
        assert m[self.cat_idx("content"), self.cat_idx("format")] == 1
        assert m.sum() == 1

    def test_partial_match_allocation(self):
        rows = [labeled("A", 1, 2, {"content", "format"}, {"content", SAFE_CATEGORY})]
        m = multilabel_confusion(rows)
        assert m[self.cat_idx("content"), self.cat_idx("content")] == 1
        assert m[self.cat_idx("format"), self.cat_idx(SAFE_CATEGORY)] == 1
        assert m.sum() == 2

    def test_uniform_allocation_two_targets(self):
        # two identical records so the half units add back to integers
        rows = [
            labeled("A", 1, 2, {"content"}, {"format", SAFE_CATEGORY}),
            labeled("B", 1, 2, {"content"}, {"format", SAFE_CATEGORY}),
        ]
        m = multilabel_confusion(rows)
        assert m[self.cat_idx("content"), self.cat_idx("format")] == 1
        assert m[self.cat_idx("content"), self.cat_idx(SAFE_CATEGORY)] == 1

    def test_largest_remainder_preserves_row_total(self):
        rows = [labeled("A", 1, 2, {"content"}, {"format", SAFE_CATEGORY})]
        m = multilabel_confusion(rows)
        assert m[self.cat_idx("content")].sum() == 1

    def test_total_equals_gold_category_occurrences(self):
        rng = random.Random(5)
        cats = list(EVAL_CATEGORIES[:-1])
        rows = []
        total = 0
        for i in range(200):
            gold = set(rng.sample(cats, rng.randint(1, 3)))
            pred = set(rng.sample(cats, rng.randint(1, 3)))
            rows.append(labeled(f"r{i}", 1, 1, gold, pred))
            total += len(gold)
        m = multilabel_confusion(rows)
        assert m.sum() == total
        assert (m >= 0).all()

    def test_permutation_invariance(self):
        rng = random.Random(6)
        cats = list(EVAL_CATEGORIES[:-1])
        rows = [
            labeled(
                f"r{i}",
            rng.randint(0, 2),
                rng.randint(0, 2),
                set(rng.sample(cats, 2)),
                set(rng.sample(cats, 2)),
            )
            for i in range(50)
        ]
        m1 = multilabel_confusion(rows)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        m2 = multilabel_confusion(shuffled)
        assert np.array_equal(m1, m2)
        assert category_macro_f1(rows) == category_macro_f1(shuffled)


class TestLabelPredictions:
    def test_gold_spam_predicted_safe(self):
        rs = rule_set(["No spam posting"])
        r = record(id="x", removed=True, reason="rule 1", gold_rule_number=1)
        rows = label_predictions([("x", 0)], [r], {"news": rs})
        assert rows[0].gold_categories == {"spam"}
        assert rows[0].predicted_categories == {SAFE_CATEGORY}

    def test_safe_both_sides(self):
        rs = rule_set(["No spam posting"])
        r = record(id="x")
        rows = label_predictions([("x", 0)], [r], {"news": rs})
        assert rows[0].gold_categories == rows[0].predicted_categories == {SAFE_CATEGORY}

    def test_multi_category_prediction(self):
        rs = rule_set(["Mark spoilers and tag all posts"])
        r = record(id="x")
        rows = label_predictions([("x", 1)], [r], {"news": rs})
        assert rows[0].predicted_categories >= {"content", "format"}

    def test_unknown_record_raises(self):
        with pytest.raises(KeyError):
            label_predictions([("nope", 0)], [record(id="x")], {})

    def test_never_empty_category_sets(self):
        rs = rule_set(["zz qq unmatched gibberish rule"])
        r = record(id="x", removed=True, reason="r", gold_rule_number=1)
        rows = label_predictions([("x", 1)], [r], {"news": rs})
        assert rows[0].gold_categories == {"other"}
        assert rows[0].predicted_categories == {"other"}


class TestEvaluateReport:
    def test_report_shape(self):
        rows = [
            labeled("A", 1, 1, {"spam"}, {"spam"}),
            labeled("B", 0, 0, {SAFE_CATEGORY}, {SAFE_CATEGORY}),
        ]
        report = evaluate(rows)
        assert report.n_records == 2
        assert set(report.per_category_macro_f1) == {"spam", SAFE_CATEGORY}
        assert report.binary_safe["safe_f1"] == 1.0
        obj = report.to_obj()
        assert obj["n_records"] == 2
