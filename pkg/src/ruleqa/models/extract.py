"""Extractive QA model: predict the rule span inside the rule context.

The trainer optimizes summed start/end cross-entropy with gradient
accumulation and a weight EMA used for dev evaluation; the best epoch by
dev category macro F1 is returned. Predicted spans are decoded by exact
search over valid (start, end) pairs inside the context region and then
assigned to the rule whose segment the span most fully covers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Collection, Sequence

import torch
from torch import nn
from torch.nn import functional as F

from ..dataset.augment import augment_extract
from ..dataset.context import RuleContext, SAFE_RULE_NUMBER
from ..dataset.examples import ExtractExample
from ..rules.categories import Categorizer, default_categorizer
from .backbone import SmallEncoder
from .config import EncoderConfig, TrainConfig
from .encoding import EncodingOverflowError, ExtractFeatures, encode_extract
from .tokenizer import WordTokenizer, pad_batch
from .training import TrainingSummary, dev_macro_f1, select_best, train_loop

COVERAGE_MODES = ("rule_coverage", "span_coverage")


@dataclass(frozen=True)
class SpanPrediction:
    start_char: int
    end_char: int
    start_score: float
    end_score: float
    rule_number: int
    off_segment: bool = False


@dataclass(frozen=True)
class SpanAssignment:
    rule_number: int
    coverage: float
    overlap: int
    off_segment: bool


def assign_span(
    span: tuple[int, int], context: RuleContext, mode: str = "rule_coverage"
) -> SpanAssignment:
    """Assign a character span to the rule it most fully covers.

    ``rule_coverage`` scores each segment by the fraction of the segment
    covered by the span; ``span_coverage`` by the fraction of the span
    inside the segment. Ties break by larger raw overlap, then lower rule
    number. A span touching no segment maps to the nearest one and is
    flagged off-segment.
    """
    if mode not in COVERAGE_MODES:
        raise ValueError(f"mode must be one of {COVERAGE_MODES}")
    start, end = span
    if start < 0 or end < start or end > len(context.text):
        raise ValueError(f"span {span} out of context bounds")
    best: tuple[float, int, int] | None = None  # (-coverage, -overlap, rule)
    for seg in context.segments:
        overlap = max(0, min(end, seg.end) - max(start, seg.start))
        if overlap == 0:
            continue
        denom = seg.length if mode == "rule_coverage" else max(end - start, 1)
        coverage = overlap / denom if denom else 0.0
        key = (-coverage, -overlap, seg.rule_number)
        if best is None or key < best:
            best = key
    if best is not None:
        return SpanAssignment(
            rule_number=best[2], coverage=-best[0], overlap=-best[1], off_segment=False
        )
    # no overlap at all: nearest segment by character distance
    nearest = min(
        context.segments,
        key=lambda seg: (max(seg.start - end, start - seg.end, 0), seg.rule_number),
    )
    return SpanAssignment(rule_number=nearest.rule_number, coverage=0.0, overlap=0, off_segment=True)


def span_to_rule(
    span: tuple[int, int], context: RuleContext, mode: str = "rule_coverage"
) -> int:
    return assign_span(span, context, mode).rule_number


class ExtractModel(nn.Module):
    def __init__(self, config: EncoderConfig):
        super().__init__()
        self.encoder = SmallEncoder(config)
        self.qa_head = nn.Linear(config.d_model, 2)

    def forward(
        self,
        input_ids: torch.Tensor,
        token_type_ids: torch.Tensor,
        attention_mask: torch.Tensor,
    ) -> tuple[torch.Tensor, torch.Tensor]:
        hidden = self.encoder(input_ids, token_type_ids, attention_mask)
        logits = self.qa_head(hidden)
        start_logits = logits[..., 0].masked_fill(attention_mask == 0, -1e4)
        end_logits = logits[..., 1].masked_fill(attention_mask == 0, -1e4)
        return start_logits, end_logits


def collate_extract(
    features: Sequence[ExtractFeatures], pad_id: int = 0
) -> dict[str, torch.Tensor]:
    ids, mask = pad_batch([f.input_ids for f in features], pad_id)
    types, _ = pad_batch([f.token_type_ids for f in features], 0)
    return {
        "input_ids": torch.tensor(ids, dtype=torch.long),
        "token_type_ids": torch.tensor(types, dtype=torch.long),
        "attention_mask": torch.tensor(mask, dtype=torch.long),
        "start_positions": torch.tensor([f.start_position for f in features], dtype=torch.long),
        "end_positions": torch.tensor([f.end_position for f in features], dtype=torch.long),
    }


def extract_loss(model: ExtractModel, batch: dict[str, torch.Tensor]) -> torch.Tensor:
    start_logits, end_logits = model(
        batch["input_ids"], batch["token_type_ids"], batch["attention_mask"]
    )
    return F.cross_entropy(start_logits, batch["start_positions"]) + F.cross_entropy(
        end_logits, batch["end_positions"]
    )


@dataclass
class ExtractTrainResult:
    model: ExtractModel
    tokenizer: WordTokenizer
    config: TrainConfig
    summary: TrainingSummary
    skipped: int


def _encode_all(
    examples: Sequence[ExtractExample],
    tokenizer: WordTokenizer,
    max_len: int,
) -> tuple[list[ExtractFeatures], int]:
    features, skipped = [], 0
    for ex in examples:
        try:
            features.append(encode_extract(ex, tokenizer, max_len))
        except EncodingOverflowError:
            skipped += 1
    return features, skipped


def train_extract(
    train: Sequence[ExtractExample],
    dev: Sequence[ExtractExample],
    cfg: TrainConfig,
    augment_ops: Collection[str] | None = None,
    categorizer: Categorizer | None = None,
) -> ExtractTrainResult:
    """Fine-tune the span model; returns the best epoch's EMA weights."""
    categorizer = categorizer or default_categorizer()
    torch.manual_seed(cfg.seed)
    tokenizer = WordTokenizer.build(
        [ex.question for ex in train] + [ex.context.text for ex in train]
    )
    encoder_config = replace(cfg.encoder, vocab_size=len(tokenizer))
    model = ExtractModel(encoder_config)

    skipped_counter = {"n": 0}
    base_features, base_skipped = _encode_all(train, tokenizer, cfg.max_sequence_length)
    skipped_counter["n"] += base_skipped
    dev_features, dev_skipped = _encode_all(dev, tokenizer, cfg.max_sequence_length)

    def epoch_features(epoch: int, rng: random.Random) -> list[ExtractFeatures]:
        if not augment_ops:
            return base_features
        augmented = []
        skipped = 0
        for ex in train:
            try:
                augmented.append(
                    encode_extract(
                        augment_extract(ex, rng, ops=augment_ops),
                        tokenizer,
                        cfg.max_sequence_length,
                    )
                )
            except EncodingOverflowError:
                skipped += 1
        skipped_counter["n"] += skipped
        return augmented

    def dev_eval(m: ExtractModel) -> float:
        rows = []
        for f in dev_features:
            pred = predict_encoded(m, f, cfg)
            rows.append(
                (
                    f.example.context,
                    f.example.answer_rule,
                    pred.rule_number,
                )
            )
        return dev_macro_f1(rows, categorizer)

    summary = train_loop(
        model,
        cfg,
        epoch_features,
        lambda feats: collate_extract(feats, tokenizer.pad_id),
        extract_loss,
        dev_eval,
    )
    model.load_state_dict(summary.best_state)
    model.eval()
    return ExtractTrainResult(
        model=model,
        tokenizer=tokenizer,
        config=cfg,
        summary=summary,
        skipped=skipped_counter["n"] + dev_skipped,
    )


@torch.no_grad()
def decode_span(
    start_logits: torch.Tensor,
    end_logits: torch.Tensor,
    features: ExtractFeatures,
    max_answer_tokens: int,
) -> tuple[int, int, float, float]:
    """Exact search over context (start, end) pairs within the answer band.

    Returns token positions and their logits; spans never leave the
    context region because everything else is masked out.
    """
    positions = features.context_positions
    allowed = torch.full_like(start_logits, False, dtype=torch.bool)
    allowed[positions] = True
    s = start_logits.masked_fill(~allowed, float("-inf"))
    e = end_logits.masked_fill(~allowed, float("-inf"))
    scores = s.unsqueeze(1) + e.unsqueeze(0)
    length = scores.size(0)
    arange = torch.arange(length)
    band = (arange.unsqueeze(1) <= arange.unsqueeze(0)) & (
        arange.unsqueeze(0) - arange.unsqueeze(1) <= max_answer_tokens
    )
    scores = scores.masked_fill(~band, float("-inf"))
    flat = int(torch.argmax(scores.view(-1)))
    i, j = flat // length, flat % length
    return i, j, float(start_logits[i]), float(end_logits[j])


def predict_encoded(
    model: ExtractModel, features: ExtractFeatures, cfg: TrainConfig
) -> SpanPrediction:
    model.eval()
    batch = collate_extract([features])
    with torch.no_grad():
        start_logits, end_logits = model(
            batch["input_ids"], batch["token_type_ids"], batch["attention_mask"]
        )
    i, j, s_score, e_score = decode_span(
        start_logits[0], end_logits[0], features, cfg.max_answer_tokens
    )
    start_char = features.offsets[i][0]
    end_char = features.offsets[j][1]
    assignment = assign_span((start_char, end_char), features.example.context)
    return SpanPrediction(
        start_char=start_char,
        end_char=end_char,
        start_score=s_score,
        end_score=e_score,
        rule_number=assignment.rule_number,
        off_segment=assignment.off_segment,
    )


def predict_span(
    question: str,
    context: RuleContext,
    model: ExtractModel,
    tokenizer: WordTokenizer,
    cfg: TrainConfig,
) -> SpanPrediction:
    """Predict the best answer span for one (question, context) input."""
    if not context.segments:
        raise ValueError("context has no rule segments")
    probe = ExtractExample(
        question=question,
        context=context,
        answer_rule=context.segments[0].rule_number,
        answer_span=(context.segments[0].start, context.segments[0].end),
    )
    features = encode_extract(probe, tokenizer, cfg.max_sequence_length, with_answer=False)
    prediction = predict_encoded(model, features, cfg)
    if features.example.context is context:
        return prediction
    # rules were dropped to fit the limit: map offsets back piecewise
    start, end = _map_back(
        (prediction.start_char, prediction.end_char), features.example.context, context
    )
    assignment = assign_span((start, end), context)
    return SpanPrediction(
        start_char=start,
        end_char=end,
        start_score=prediction.start_score,
        end_score=prediction.end_score,
        rule_number=assignment.rule_number,
        off_segment=assignment.off_segment,
    )


def _map_back(
    span: tuple[int, int], shrunk: RuleContext, original: RuleContext
) -> tuple[int, int]:
    def map_char(c: int, is_end: bool) -> int:
        for seg in shrunk.segments:
            if seg.start <= c <= seg.end:
                orig = original.segment_for(seg.rule_number)
                return min(orig.start + (c - seg.start), orig.end)
        # between segments: clamp onto the nearest surviving one
        nearest = min(
            shrunk.segments, key=lambda s: max(s.start - c, c - s.end, 0)
        )
        orig = original.segment_for(nearest.rule_number)
        return orig.end if is_end else orig.start
    s = map_char(span[0], False)
    e = map_char(span[1], True)
    return (s, e) if s <= e else (e, e)


def rule_scores_from_logits(
    start_logits: torch.Tensor,
    end_logits: torch.Tensor,
    features: ExtractFeatures,
) -> list[tuple[int, float]]:
    """Per-rule applicability proxy: P(start in segment) * P(end in segment)."""
    positions = features.context_positions
    allowed = torch.full_like(start_logits, False, dtype=torch.bool)
    allowed[positions] = True
    p_start = torch.softmax(start_logits.masked_fill(~allowed, float("-inf")), dim=-1)
    p_end = torch.softmax(end_logits.masked_fill(~allowed, float("-inf")), dim=-1)
    scores = []
    for seg in features.example.context.segments:
        inside = [
            p
            for p in positions
            if features.offsets[p][0] >= seg.start and features.offsets[p][1] <= seg.end
        ]
        if inside:
            idx = torch.tensor(inside)
            score = float(p_start[idx].sum() * p_end[idx].sum())
        else:
            score = 0.0
        scores.append((seg.rule_number, score))
    return scores
