from .types import Rule, RuleSet, MatchMethod, MatchResult
from .categories import (
    CATEGORY_VOCABULARY,
    EVAL_CATEGORIES,
    SAFE_CATEGORY,
    CategoryTag,
    Categorizer,
    KeywordCategorizer,
    categorize_rule,
    default_categorizer,
)
from .extract import (
    ListRuleExtractor,
    RemoteChatExtractor,
    RuleExtractionError,
    RuleExtractor,
    extract_rules,
    rules_from_texts,
)
from .encoders import HashingNgramEncoder, SentenceEncoder, cosine_similarities
from .match import (
    DEFAULT_SIMILARITY_THRESHOLD,
    best_similarity,
    cited_rule_numbers,
    match_reason,
)

__all__ = [
    "Rule",
    "RuleSet",
    "MatchMethod",
    "MatchResult",
    "CATEGORY_VOCABULARY",
    "EVAL_CATEGORIES",
    "SAFE_CATEGORY",
    "CategoryTag",
    "Categorizer",
    "KeywordCategorizer",
    "categorize_rule",
    "default_categorizer",
    "ListRuleExtractor",
    "RemoteChatExtractor",
    "RuleExtractionError",
    "RuleExtractor",
    "extract_rules",
    "rules_from_texts",
    "HashingNgramEncoder",
    "SentenceEncoder",
    "cosine_similarities",
    "DEFAULT_SIMILARITY_THRESHOLD",
    "best_similarity",
    "cited_rule_numbers",
    "match_reason",
]
