"""Stratified and leave-N-out dataset splitting.

Holdouts are carved out first (whole communities, then (rule, community)
pairs), and the remainder is split 80/10/10 stratified on the removed
flag. Everything is deterministic given the spec's seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..ingest.types import ModerationRecord

FRACTIONS = (0.8, 0.1, 0.1)


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    fractions: tuple[float, float, float] = FRACTIONS
    n_holdout_communities: int = 20
    n_holdout_rules: int = 20

    def __post_init__(self) -> None:
        if abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ValueError("split fractions must sum to 1")
        if self.n_holdout_communities < 0 or self.n_holdout_rules < 0:
            raise ValueError("holdout counts must be >= 0")


@dataclass
class SplitResult:
    train: list[ModerationRecord] = field(default_factory=list)
    dev: list[ModerationRecord] = field(default_factory=list)
    test: list[ModerationRecord] = field(default_factory=list)
    communities_holdout: list[ModerationRecord] = field(default_factory=list)
    rules_holdout: list[ModerationRecord] = field(default_factory=list)
    held_out_communities: list[str] = field(default_factory=list)
    held_out_pairs: list[tuple[int, str]] = field(default_factory=list)

    def sets(self) -> dict[str, list[ModerationRecord]]:
        return {
            "train": self.train,
            "dev": self.dev,
            "test": self.test,
            "communities_holdout": self.communities_holdout,
            "rules_holdout": self.rules_holdout,
        }


def _allocate(n: int, fractions: tuple[float, ...]) -> list[int]:
    """Largest-remainder allocation of n items over fractions."""
    exact = [n * f for f in fractions]
    base = [int(x) for x in exact]
    remainder = n - sum(base)
    order = sorted(range(len(fractions)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[:remainder]:
        base[i] += 1
    return base


def split_dataset(records: list[ModerationRecord], spec: SplitSpec) -> SplitResult:
    """Partition records into train/dev/test and the two holdout sets."""
    rng = random.Random(spec.seed)
    result = SplitResult()

    communities = sorted({r.community for r in records})
    if len(communities) < spec.n_holdout_communities:
        raise ValueError(
            f"need >= {spec.n_holdout_communities} communities, have {len(communities)}"
        )
    held_communities = set(rng.sample(communities, spec.n_holdout_communities))
    result.held_out_communities = sorted(held_communities)

    remainder: list[ModerationRecord] = []
    for r in sorted(records, key=lambda r: r.id):
        if r.community in held_communities:
            result.communities_holdout.append(r)
        else:
            remainder.append(r)

    pairs = sorted(
        {(r.gold_rule_number, r.community) for r in remainder if r.gold_rule_number > 0}
    )
    if len(pairs) < spec.n_holdout_rules:
        raise ValueError(
            f"need >= {spec.n_holdout_rules} (rule, community) pairs, have {len(pairs)}"
        )
    held_pairs = set(rng.sample(pairs, spec.n_holdout_rules))
    result.held_out_pairs = sorted(held_pairs)

    rest: list[ModerationRecord] = []
    for r in remainder:
        if r.gold_rule_number > 0 and (r.gold_rule_number, r.community) in held_pairs:
            result.rules_holdout.append(r)
        else:
            rest.append(r)

    # 80/10/10 per stratum of the removed flag, largest-remainder exact
    for removed in (True, False):
        stratum = [r for r in rest if r.removed is removed]
        rng.shuffle(stratum)
        n_train, n_dev, n_test = _allocate(len(stratum), spec.fractions)
        result.train.extend(stratum[:n_train])
        result.dev.extend(stratum[n_train : n_train + n_dev])
        result.test.extend(stratum[n_train + n_dev :])

    for subset in result.sets().values():
        subset.sort(key=lambda r: r.id)
    return result
