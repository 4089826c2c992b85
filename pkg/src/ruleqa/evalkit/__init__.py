from .labeling import (
    LabeledPrediction,
    categories_of_rule,
    label_category_predictions,
    label_predictions,
)
from .metrics import (
    EvalReport,
    binary_macro_f1,
    binary_safe_f1,
    category_macro_f1,
    category_support,
    evaluate,
    f1_from_counts,
    mean_macro_f1,
)
from .confusion import multilabel_confusion
from .generalization import (
    GenRow,
    Predictor,
    evaluate_holdout,
    generalization_report,
    render_rows_png,
    write_rows_csv,
)

__all__ = [
    "LabeledPrediction",
    "categories_of_rule",
    "label_category_predictions",
    "label_predictions",
    "EvalReport",
    "binary_macro_f1",
    "binary_safe_f1",
    "category_macro_f1",
    "category_support",
    "evaluate",
    "f1_from_counts",
    "mean_macro_f1",
    "multilabel_confusion",
    "GenRow",
    "Predictor",
    "evaluate_holdout",
    "generalization_report",
    "render_rows_png",
    "write_rows_csv",
]
