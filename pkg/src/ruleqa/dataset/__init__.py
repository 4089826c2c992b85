from .context import (
    COMMENT_CLOSE,
    COMMENT_OPEN,
    MARKER_TOKENS,
    RULES_CLOSE,
    RULES_OPEN,
    SAFE_RULE_NUMBER,
    SAFE_RULE_TEXT,
    ContextEntry,
    RuleContext,
    Segment,
    build_context,
    build_context_from_entries,
    wrap_comment,
)
from .examples import (
    PAIR_SEPARATOR,
    ChoicePair,
    DataIntegrityError,
    ExtractExample,
    make_choice_pairs,
    make_extract_example,
    rebind_answer,
)
from .augment import AUGMENT_OPS, augment_extract
from .splits import FRACTIONS, SplitResult, SplitSpec, split_dataset
from .normvio import ColumnMap, ImportResult, import_normvio, load_normvio_file
from .io import DatasetRow, read_jsonl, read_rows, write_jsonl, write_rows

__all__ = [
    "COMMENT_CLOSE",
    "COMMENT_OPEN",
    "MARKER_TOKENS",
    "RULES_CLOSE",
    "RULES_OPEN",
    "SAFE_RULE_NUMBER",
    "SAFE_RULE_TEXT",
    "ContextEntry",
    "RuleContext",
    "Segment",
    "build_context",
    "build_context_from_entries",
    "wrap_comment",
    "PAIR_SEPARATOR",
    "ChoicePair",
    "DataIntegrityError",
    "ExtractExample",
    "make_choice_pairs",
    "make_extract_example",
    "rebind_answer",
    "AUGMENT_OPS",
    "augment_extract",
    "FRACTIONS",
    "SplitResult",
    "SplitSpec",
    "split_dataset",
    "ColumnMap",
    "ImportResult",
    "import_normvio",
    "load_normvio_file",
    "DatasetRow",
    "read_jsonl",
    "read_rows",
    "write_jsonl",
    "write_rows",
]
