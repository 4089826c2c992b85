"""Shared optimizer loop: gradient accumulation, EMA, best-epoch pick."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import torch

from ..dataset.context import RuleContext
from ..rules.categories import Categorizer, SAFE_CATEGORY
from ..evalkit.labeling import LabeledPrediction
from ..evalkit.metrics import category_macro_f1, mean_macro_f1
from .config import TrainConfig
from .ema import WeightEMA


@dataclass
class TrainingSummary:
    best_epoch: int
    best_state: dict[str, torch.Tensor]
    epoch_logs: list[dict] = field(default_factory=list)

    @property
    def dev_metrics(self) -> list[float]:
        return [row["dev_metric"] for row in self.epoch_logs]


def select_best(metrics: Sequence[float]) -> int:
    """Argmax over per-epoch dev metrics; first epoch wins ties."""
    if not metrics:
        raise ValueError("no epoch metrics to select from")
    best = 0
    for i, value in enumerate(metrics):
        if value > metrics[best]:
            best = i
    return best


def train_loop(
    model: torch.nn.Module,
    cfg: TrainConfig,
    epoch_features: Callable[[int, random.Random], list],
    collate: Callable[[list], dict[str, torch.Tensor]],
    loss_fn: Callable[[torch.nn.Module, dict[str, torch.Tensor]], torch.Tensor],
    dev_eval: Callable[[torch.nn.Module], float],
) -> TrainingSummary:
    rng = random.Random(cfg.seed)
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=cfg.learning_rate, weight_decay=cfg.weight_decay
    )
    ema = WeightEMA(model, cfg.ema_decay)
    snapshots: list[dict[str, torch.Tensor]] = []
    logs: list[dict] = []

    for epoch in range(cfg.epochs):
        features = epoch_features(epoch, rng)
        order = list(range(len(features)))
        rng.shuffle(order)
        model.train()
        optimizer.zero_grad()
        total_loss, n_batches, pending = 0.0, 0, 0
        for at in range(0, len(order), cfg.batch_size):
            batch = collate([features[i] for i in order[at : at + cfg.batch_size]])
            loss = loss_fn(model, batch)
            if not torch.isfinite(loss):
                raise RuntimeError(
                    f"non-finite loss {loss.item()} at epoch {epoch}, batch {n_batches}"
                )
            (loss / cfg.grad_accum_steps).backward()
            total_loss += float(loss)
            n_batches += 1
            pending += 1
            if pending == cfg.grad_accum_steps:
                optimizer.step()
                optimizer.zero_grad()
                ema.update(model)
                pending = 0
        if pending:
            optimizer.step()
            optimizer.zero_grad()
            ema.update(model)

        model.eval()
        with ema.swapped_into(model):
            dev_metric = dev_eval(model)
        snapshots.append(ema.state_dict())
        logs.append(
            {
                "epoch": epoch,
                "train_loss": total_loss / max(n_batches, 1),
                "dev_metric": dev_metric,
                "n_batches": n_batches,
            }
        )

    best = select_best([row["dev_metric"] for row in logs])
    return TrainingSummary(best_epoch=best, best_state=snapshots[best], epoch_logs=logs)


def dev_macro_f1(
    rows: Sequence[tuple[RuleContext, int, int]], categorizer: Categorizer
) -> float:
    """Mean category macro F1 of (context, gold rule, predicted rule) rows."""
    labeled = []
    for i, (context, gold, predicted) in enumerate(rows):
        labeled.append(
            LabeledPrediction(
                record_id=str(i),
                gold_rule_number=gold,
                predicted_rule_number=predicted,
                gold_categories=_cats(context, gold, categorizer),
                predicted_categories=_cats(context, predicted, categorizer),
            )
        )
    if not labeled:
        return 0.0
    return mean_macro_f1(category_macro_f1(labeled))


def _cats(context: RuleContext, rule_number: int, categorizer: Categorizer) -> frozenset[str]:
    if rule_number == 0:
        return frozenset({SAFE_CATEGORY})
    return frozenset(categorizer.categories_for(context.rule_text(rule_number)))
