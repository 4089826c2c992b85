"""Multiple-choice QA model: score each comment-rule pair for applicability.

Each pair is encoded independently (no cross-pair coupling); a single
sigmoid logit head over pooled features is trained with per-pair binary
cross-entropy, and inference scores all candidates of one comment in a
single batched forward pass, selecting the argmax rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Sequence

import torch
from torch import nn
from torch.nn import functional as F

from ..dataset.context import SAFE_RULE_NUMBER, SAFE_RULE_TEXT, build_context
from ..dataset.examples import ChoicePair, PAIR_SEPARATOR
from ..rules.categories import Categorizer, default_categorizer
from ..rules.types import RuleSet
from .backbone import SmallEncoder
from .config import EncoderConfig, TrainConfig
from .encoding import PairFeatures, encode_pair
from .prediction import Prediction
from .tokenizer import WordTokenizer, pad_batch
from .training import TrainingSummary, dev_macro_f1, train_loop


@dataclass(frozen=True)
class PairScore:
    rule_number: int
    score: float


class GroupIntegrityError(Exception):
    """A candidate group must contain exactly one positive pair."""


class SelectModel(nn.Module):
    """Pair scorer over pooled encoder features.

    Pooling concatenates the [CLS] state with masked means of both
    segments and their elementwise interactions, a standard sentence-pair
    head that exposes lexical overlap to the final logit directly.
    """

    def __init__(self, config: EncoderConfig):
        super().__init__()
        self.encoder = SmallEncoder(config)
        self.scorer = nn.Linear(5 * config.d_model, 1)

    def forward(
        self,
        input_ids: torch.Tensor,
        token_type_ids: torch.Tensor,
        attention_mask: torch.Tensor,
    ) -> torch.Tensor:
        hidden = self.encoder(input_ids, token_type_ids, attention_mask)
        cls = hidden[:, 0]
        mask = attention_mask.unsqueeze(-1).float()
        seg_a = (token_type_ids == 0).unsqueeze(-1).float() * mask
        seg_b = (token_type_ids == 1).unsqueeze(-1).float() * mask
        mean_a = (hidden * seg_a).sum(1) / seg_a.sum(1).clamp(min=1.0)
        mean_b = (hidden * seg_b).sum(1) / seg_b.sum(1).clamp(min=1.0)
        pooled = torch.cat(
            [cls, mean_a, mean_b, mean_a * mean_b, (mean_a - mean_b).abs()], dim=-1
        )
        return self.scorer(pooled).squeeze(-1)


def collate_pairs(features: Sequence[PairFeatures], pad_id: int = 0) -> dict[str, torch.Tensor]:
    ids, mask = pad_batch([f.input_ids for f in features], pad_id)
    types, _ = pad_batch([f.token_type_ids for f in features], 0)
    return {
        "input_ids": torch.tensor(ids, dtype=torch.long),
        "token_type_ids": torch.tensor(types, dtype=torch.long),
        "attention_mask": torch.tensor(mask, dtype=torch.long),
        "labels": torch.tensor([f.label for f in features], dtype=torch.float),
    }


def select_loss(model: SelectModel, batch: dict[str, torch.Tensor]) -> torch.Tensor:
    logits = model(batch["input_ids"], batch["token_type_ids"], batch["attention_mask"])
    return F.binary_cross_entropy_with_logits(logits, batch["labels"])


def check_groups(groups: Sequence[Sequence[ChoicePair]]) -> None:
    for group in groups:
        positives = sum(p.label for p in group)
        if positives != 1:
            gid = group[0].group_id if group else "<empty>"
            raise GroupIntegrityError(
                f"group {gid} has {positives} positive pairs, expected exactly 1"
            )


@dataclass
class SelectTrainResult:
    model: SelectModel
    tokenizer: WordTokenizer
    config: TrainConfig
    summary: TrainingSummary


def train_select(
    train_groups: Sequence[Sequence[ChoicePair]],
    dev_groups: Sequence[Sequence[ChoicePair]],
    cfg: TrainConfig,
    categorizer: Categorizer | None = None,
) -> SelectTrainResult:
    """Fit the pair scorer; returns the best epoch's EMA weights."""
    check_groups(train_groups)
    check_groups(dev_groups)
    categorizer = categorizer or default_categorizer()
    torch.manual_seed(cfg.seed)
    texts = []
    for group in train_groups:
        if group:
            texts.append(group[0].content_sequence)
            texts.extend(p.rule_text for p in group)
    tokenizer = WordTokenizer.build(texts)
    encoder_config = replace(cfg.encoder, vocab_size=len(tokenizer))
    model = SelectModel(encoder_config)

    flat = [p for group in train_groups for p in group]
    features = [encode_pair(p, tokenizer, cfg.max_sequence_length) for p in flat]
    dev_features = [
        [encode_pair(p, tokenizer, cfg.max_sequence_length) for p in group]
        for group in dev_groups
    ]

    def epoch_features(epoch: int, rng: random.Random) -> list[PairFeatures]:
        return features

    def dev_eval(m: SelectModel) -> float:
        rows = []
        for group, group_features in zip(dev_groups, dev_features):
            scores = _score_features(m, group_features, tokenizer.pad_id)
            predicted = _argmax_rule(
                [(f.pair.rule_number, s) for f, s in zip(group_features, scores)]
            )
            gold = next(p.rule_number for p in group if p.label == 1)
            context = build_context(_rules_from_group(group), include_safe_option=True)
            rows.append((context, gold, predicted))
        return dev_macro_f1(rows, categorizer)

    summary = train_loop(
        model,
        cfg,
        epoch_features,
        lambda feats: collate_pairs(feats, tokenizer.pad_id),
        select_loss,
        dev_eval,
    )
    model.load_state_dict(summary.best_state)
    model.eval()
    return SelectTrainResult(model=model, tokenizer=tokenizer, config=cfg, summary=summary)


def _rules_from_group(group: Sequence[ChoicePair]) -> RuleSet:
    from ..rules.types import Rule

    rules = tuple(
        Rule(p.rule_number, p.rule_text) for p in group if p.rule_number != SAFE_RULE_NUMBER
    )
    community = group[0].community if group else ""
    return RuleSet(community=community, instance="", rules=rules)


@torch.no_grad()
def _score_features(
    model: SelectModel, features: Sequence[PairFeatures], pad_id: int
) -> list[float]:
    model.eval()
    batch = collate_pairs(features, pad_id)
    logits = model(batch["input_ids"], batch["token_type_ids"], batch["attention_mask"])
    return torch.sigmoid(logits).tolist()


def _argmax_rule(scores: Sequence[tuple[int, float]]) -> int:
    return min(scores, key=lambda pair: (-pair[1], pair[0]))[0]


def score_rules(
    comment: str,
    community: str,
    rule_set: RuleSet,
    model: SelectModel,
    tokenizer: WordTokenizer,
    cfg: TrainConfig,
) -> list[PairScore]:
    """Score the safe pseudo-rule and every rule in one batched pass."""
    if len(rule_set) == 0:
        raise ValueError("rule set must be non-empty")
    content_sequence = f"{comment} {PAIR_SEPARATOR} {community}"
    candidates = [(SAFE_RULE_NUMBER, SAFE_RULE_TEXT)] + [
        (r.number, r.text) for r in rule_set.rules
    ]
    features = [
        encode_pair(
            ChoicePair(
                group_id="query",
                content_sequence=content_sequence,
                rule_number=number,
                rule_text=text,
                label=0,
                community=community,
            ),
            tokenizer,
            cfg.max_sequence_length,
        )
        for number, text in candidates
    ]
    scores = _score_features(model, features, tokenizer.pad_id)
    return [PairScore(rule_number=n, score=s) for (n, _), s in zip(candidates, scores)]


def predict_rule(
    comment: str,
    community: str,
    rule_set: RuleSet,
    model: SelectModel,
    tokenizer: WordTokenizer,
    cfg: TrainConfig,
) -> Prediction:
    """Argmax over pair scores; ties break to the lowest rule number."""
    scores = score_rules(comment, community, rule_set, model, tokenizer, cfg)
    best = _argmax_rule([(s.rule_number, s.score) for s in scores])
    text = SAFE_RULE_TEXT if best == SAFE_RULE_NUMBER else rule_set.rule(best).text
    return Prediction(
        rule_number=best,
        rule_text=text,
        scores=tuple((s.rule_number, s.score) for s in scores),
        span=None,
        model_kind="select",
    )
