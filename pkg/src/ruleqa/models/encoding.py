"""Feature encoding for the QA models.

Overflow policy for extractive inputs: the comment is truncated first;
if the rule context alone still exceeds the length budget, trailing
non-gold rules are dropped and the example is flagged truncated. The
gold span must survive encoding or the example is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..dataset.context import SAFE_RULE_NUMBER, build_context_from_entries
from ..dataset.examples import ChoicePair, ExtractExample, rebind_answer
from .tokenizer import WordTokenizer


class EncodingOverflowError(Exception):
    """Input cannot fit the encoder limit even after rule dropping."""


@dataclass
class ExtractFeatures:
    input_ids: list[int]
    token_type_ids: list[int]
    offsets: list[tuple[int, int]]  # char offsets into context.text; (-1,-1) off-context
    context_positions: list[int]
    start_position: int  # gold token positions; -1 when encoding for inference
    end_position: int
    example: ExtractExample


@dataclass
class PairFeatures:
    input_ids: list[int]
    token_type_ids: list[int]
    label: int
    pair: ChoicePair


def _shrink_context(example: ExtractExample, tokenizer: WordTokenizer, budget: int):
    """Drop trailing non-gold rules until the context fits ``budget`` tokens."""
    current = example
    while True:
        ids, offsets = tokenizer.encode_with_offsets(current.context.text)
        if len(ids) <= budget:
            return current, ids, offsets, current is not example
        entries = list(current.context.entries)
        droppable = [
            i
            for i, e in enumerate(entries)
            if e.identity not in (SAFE_RULE_NUMBER, current.answer_rule)
        ]
        if not droppable:
            raise EncodingOverflowError(
                f"gold rule context of {current.record_id or 'example'} exceeds the encoder limit"
            )
        del entries[droppable[-1]]
        context = build_context_from_entries(entries, current.context.includes_safe_option)
        current = rebind_answer(current, context, current.answer_rule)


def encode_extract(
    example: ExtractExample,
    tokenizer: WordTokenizer,
    max_len: int,
    with_answer: bool = True,
) -> ExtractFeatures:
    budget = max_len - 3  # [CLS], two [SEP]
    example, c_ids, c_offsets, truncated = _shrink_context(example, tokenizer, budget - 1)
    q_ids, _ = tokenizer.encode_with_offsets(example.question)
    q_budget = budget - len(c_ids)
    if len(q_ids) > q_budget:
        q_ids = q_ids[:q_budget]
        truncated = True
    if truncated and not example.truncated:
        from dataclasses import replace

        example = replace(example, truncated=True)

    input_ids = [tokenizer.cls_id] + q_ids + [tokenizer.sep_id] + c_ids + [tokenizer.sep_id]
    token_type_ids = [0] * (len(q_ids) + 2) + [1] * (len(c_ids) + 1)
    base = len(q_ids) + 2
    offsets = [(-1, -1)] * base + c_offsets + [(-1, -1)]
    context_positions = list(range(base, base + len(c_ids)))

    start_position = end_position = -1
    if with_answer:
        s, e = example.answer_span
        inside = [
            p
            for p in context_positions
            if offsets[p][0] < e and offsets[p][1] > s
        ]
        if not inside:
            raise EncodingOverflowError(
                f"gold span of {example.record_id or 'example'} destroyed by truncation"
            )
        start_position, end_position = inside[0], inside[-1]

    return ExtractFeatures(
        input_ids=input_ids,
        token_type_ids=token_type_ids,
        offsets=offsets,
        context_positions=context_positions,
        start_position=start_position,
        end_position=end_position,
        example=example,
    )


def encode_pair(pair: ChoicePair, tokenizer: WordTokenizer, max_len: int) -> PairFeatures:
    a_ids, _ = tokenizer.encode_with_offsets(pair.content_sequence)
    b_ids, _ = tokenizer.encode_with_offsets(pair.rule_text)
    budget = max_len - 3
    overflow = len(a_ids) + len(b_ids) - budget
    if overflow > 0:
        # comment first: cut tokens just before the inner separator
        sep_positions = [i for i, t in enumerate(a_ids) if t == tokenizer.sep_id]
        comment_end = sep_positions[-1] if sep_positions else len(a_ids)
        cut = min(overflow, max(0, comment_end - 1))
        a_ids = a_ids[: comment_end - cut] + a_ids[comment_end:]
        overflow -= cut
    if overflow > 0:
        if overflow >= len(b_ids):
            raise EncodingOverflowError("choice pair cannot fit the encoder limit")
        b_ids = b_ids[: len(b_ids) - overflow]

    input_ids = [tokenizer.cls_id] + a_ids + [tokenizer.sep_id] + b_ids + [tokenizer.sep_id]
    token_type_ids = [0] * (len(a_ids) + 2) + [1] * (len(b_ids) + 1)
    return PairFeatures(
        input_ids=input_ids,
        token_type_ids=token_type_ids,
        label=pair.label,
        pair=pair,
    )
