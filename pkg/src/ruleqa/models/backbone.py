"""Small trainable transformer encoder.

A pre-norm transformer with token, learned position, and segment
embeddings. It stands in for the pretrained conversational checkpoint
named in the encoder config whenever no pretrained weights are available
(the offline default in this environment).
"""

from __future__ import annotations

import torch
from torch import nn

from .config import EncoderConfig


class SmallEncoder(nn.Module):
    def __init__(self, config: EncoderConfig):
        super().__init__()
        if config.vocab_size <= 0:
            raise ValueError("vocab_size must be set before building the encoder")
        self.config = config
        self.token_embeddings = nn.Embedding(config.vocab_size, config.d_model)
        self.position_embeddings = nn.Embedding(config.max_len, config.d_model)
        self.segment_embeddings = nn.Embedding(2, config.d_model)
        self.norm = nn.LayerNorm(config.d_model)
        self.dropout = nn.Dropout(config.dropout)
        layer = nn.TransformerEncoderLayer(
            d_model=config.d_model,
            nhead=config.n_heads,
            dim_feedforward=config.ffn_dim,
            dropout=config.dropout,
            activation="gelu",
            batch_first=True,
            norm_first=True,
        )
        self.layers = nn.TransformerEncoder(layer, num_layers=config.n_layers)
        self.apply(self._init_weights)

    def _init_weights(self, module: nn.Module) -> None:
        std = self.config.init_std
        if isinstance(module, nn.Linear):
            nn.init.normal_(module.weight, mean=0.0, std=std)
            if module.bias is not None:
                nn.init.zeros_(module.bias)
        elif isinstance(module, nn.Embedding):
            nn.init.normal_(module.weight, mean=0.0, std=std)

    def forward(
        self,
        input_ids: torch.Tensor,
        token_type_ids: torch.Tensor,
        attention_mask: torch.Tensor,
    ) -> torch.Tensor:
        positions = torch.arange(input_ids.size(1), device=input_ids.device)
        hidden = (
            self.token_embeddings(input_ids)
            + self.position_embeddings(positions)[None, :, :]
            + self.segment_embeddings(token_type_ids)
        )
        hidden = self.dropout(self.norm(hidden))
        return self.layers(hidden, src_key_padding_mask=attention_mask == 0)
