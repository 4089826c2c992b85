"""Training and encoder configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class EncoderConfig:
    """Backbone architecture.

    ``backbone`` names the pretrained checkpoint this configuration
    mirrors when weights are available; the built-in small encoder is
    used whenever training starts from scratch (the offline default).
    """

    backbone: str = "bert-base-cased-conversational"
    vocab_size: int = 0  # set when the tokenizer is built
    d_model: int = 96
    n_layers: int = 2
    n_heads: int = 4
    ffn_dim: int = 192
    max_len: int = 512
    dropout: float = 0.1
    init_std: float = 0.02

    def to_obj(self) -> dict:
        return asdict(self)

    @classmethod
    def from_obj(cls, obj: dict) -> "EncoderConfig":
        return cls(**obj)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-5
    weight_decay: float = 0.001
    epochs: int = 5
    batch_size: int = 8
    grad_accum_steps: int = 4
    ema_decay: float = 0.999
    seed: int = 0
    max_sequence_length: int = 512
    max_answer_tokens: int = 64
    encoder: EncoderConfig = field(default_factory=EncoderConfig)

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        for name in ("learning_rate", "batch_size", "grad_accum_steps", "max_sequence_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.weight_decay < 0:
            raise ValueError("weight_decay must be >= 0")
        if not 0 <= self.ema_decay < 1:
            raise ValueError("ema_decay must be in [0, 1)")

    def to_obj(self) -> dict:
        obj = asdict(self)
        obj["encoder"] = self.encoder.to_obj()
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "TrainConfig":
        obj = dict(obj)
        if "encoder" in obj:
            obj["encoder"] = EncoderConfig.from_obj(obj["encoder"])
        return cls(**obj)
