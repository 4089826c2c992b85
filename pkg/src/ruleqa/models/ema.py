"""Exponential moving average of model weights."""

from __future__ import annotations

from contextlib import contextmanager

import torch
from torch import nn


class WeightEMA:
    """Shadow copy updated after each optimizer step.

    ``decay=0`` degenerates to tracking the live weights exactly. A short
    warmup ramp keeps the shadow close to the live weights early on,
    matching common EMA implementations.
    """

    def __init__(self, model: nn.Module, decay: float, warmup: bool = True):
        self.decay = decay
        self.warmup = warmup
        self.steps = 0
        self.shadow = {
            name: p.detach().clone() for name, p in model.named_parameters()
        }

    def effective_decay(self) -> float:
        if not self.warmup:
            return self.decay
        return min(self.decay, (1.0 + self.steps) / (10.0 + self.steps))

    @torch.no_grad()
    def update(self, model: nn.Module) -> None:
        self.steps += 1
        d = self.effective_decay()
        for name, p in model.named_parameters():
            self.shadow[name].mul_(d).add_(p.detach(), alpha=1.0 - d)

    def state_dict(self) -> dict[str, torch.Tensor]:
        return {name: t.clone() for name, t in self.shadow.items()}

    @contextmanager
    def swapped_into(self, model: nn.Module):
        """Temporarily load the shadow weights into the model."""
        backup = {name: p.detach().clone() for name, p in model.named_parameters()}
        with torch.no_grad():
            for name, p in model.named_parameters():
                p.copy_(self.shadow[name])
        try:
            yield model
        finally:
            with torch.no_grad():
                for name, p in model.named_parameters():
                    p.copy_(backup[name])
