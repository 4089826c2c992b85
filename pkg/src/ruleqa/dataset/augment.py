"""Training-time augmentations for extractive examples.

All three operations rebuild the context and re-derive the answer span,
so the gold span always slices to the gold rule's text. They apply to the
extractive model only; choice pairs are order-free by construction.
"""

from __future__ import annotations

import random
from typing import Collection

from .context import ContextEntry, SAFE_RULE_NUMBER, build_context_from_entries
from .examples import ExtractExample, rebind_answer

AUGMENT_OPS = ("shuffle", "renumber", "drop_one")


def augment_extract(
    example: ExtractExample,
    rng: random.Random,
    ops: Collection[str] = AUGMENT_OPS,
) -> ExtractExample:
    """Apply the selected augmentations in canonical order.

    shuffle permutes rule order (the safe pseudo-rule stays first);
    renumber applies a random bijection to displayed numbers (answers are
    tracked by identity); drop_one removes one random real rule, and when
    that rule is the gold one the answer is relabeled to the safe
    pseudo-rule, turning the example into a counterfactual.
    """
    unknown = set(ops) - set(AUGMENT_OPS)
    if unknown:
        raise ValueError(f"unknown augmentation ops: {sorted(unknown)}")

    entries = list(example.context.entries)
    safe: list[ContextEntry] = [e for e in entries if e.identity == SAFE_RULE_NUMBER]
    real: list[ContextEntry] = [e for e in entries if e.identity != SAFE_RULE_NUMBER]
    answer_rule = example.answer_rule

    if "shuffle" in ops:
        rng.shuffle(real)

    if "renumber" in ops:
        displays = [e.display for e in real]
        shuffled = displays[:]
        rng.shuffle(shuffled)
        real = [
            ContextEntry(e.identity, new_display, e.text)
            for e, new_display in zip(real, shuffled)
        ]

    if "drop_one" in ops and len(real) > 1:
        victim = rng.randrange(len(real))
        dropped = real.pop(victim)
        if dropped.identity == answer_rule:
            answer_rule = SAFE_RULE_NUMBER

    context = build_context_from_entries(
        safe + real, example.context.includes_safe_option
    )
    return rebind_answer(example, context, answer_rule)
