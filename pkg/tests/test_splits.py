import json
import random

import pytest

from ruleqa.dataset import SplitSpec, split_dataset
from ruleqa.dataset.io import row_to_obj  # noqa: F401  (used indirectly elsewhere)

from helpers import record


def build_records(n=100, n_removed=60, communities=("a", "b", "c", "d", "e")):
    rng = random.Random(99)
    records = []
    for i in range(n):
        removed = i < n_removed
        records.append(
            record(
                id=f"rec{i:04d}",
                community=communities[i % len(communities)],
                removed=removed,
                reason="rule 1" if removed else None,
                gold_rule_number=(i % 3) + 1 if removed else 0,
                comment_text=f"comment number {i} {rng.random()}",
            )
        )
    return records


class TestStratifiedArithmetic:
    def test_100_records_60_removed_no_holdouts(self):
        records = build_records()
        spec = SplitSpec(seed=7, n_holdout_communities=0, n_holdout_rules=0)
        result = split_dataset(records, spec)
        assert len(result.train) == 80
        assert len(result.dev) == 10
        assert len(result.test) == 10
        assert abs(sum(r.removed for r in result.train) - 48) <= 1
        assert abs(sum(r.removed for r in result.dev) - 6) <= 1
        assert abs(sum(r.removed for r in result.test) - 6) <= 1
        assert not result.communities_holdout
        assert not result.rules_holdout


class TestPartition:
    def test_five_sets_partition_input(self):
        records = build_records()
        spec = SplitSpec(seed=3, n_holdout_communities=2, n_holdout_rules=3)
        result = split_dataset(records, spec)
        all_ids = sorted(r.id for subset in result.sets().values() for r in subset)
        assert all_ids == sorted(r.id for r in records)
        seen = set()
        for subset in result.sets().values():
            ids = {r.id for r in subset}
            assert not (ids & seen)
            seen |= ids

    def test_holdout_communities_absent_from_main_splits(self):
        records = build_records()
        spec = SplitSpec(seed=3, n_holdout_communities=2, n_holdout_rules=0)
        result = split_dataset(records, spec)
        held = set(result.held_out_communities)
        assert len(held) == 2
        for subset in (result.train, result.dev, result.test):
            assert all(r.community not in held for r in subset)
        assert all(r.community in held for r in result.communities_holdout)

    def test_holdout_pairs_removed_but_community_remains(self):
        records = build_records()
        spec = SplitSpec(seed=5, n_holdout_communities=0, n_holdout_rules=2)
        result = split_dataset(records, spec)
        held_pairs = set(result.held_out_pairs)
        assert len(held_pairs) == 2
        for subset in (result.train, result.dev, result.test):
            for r in subset:
                assert (r.gold_rule_number, r.community) not in held_pairs
        held_communities = {c for _, c in held_pairs}
        main = result.train + result.dev + result.test
        # other records of the same community still appear in the main splits
        assert any(r.community in held_communities for r in main)

    def test_rules_holdout_only_matching_records(self):
        records = build_records()
        spec = SplitSpec(seed=5, n_holdout_communities=0, n_holdout_rules=2)
        result = split_dataset(records, spec)
        held_pairs = set(result.held_out_pairs)
        for r in result.rules_holdout:
            assert (r.gold_rule_number, r.community) in held_pairs


class TestDeterminism:
    def test_same_seed_identical_output(self):
        records = build_records()
        spec = SplitSpec(seed=11, n_holdout_communities=1, n_holdout_rules=2)
        a = split_dataset(records, spec)
        b = split_dataset(list(reversed(records)), spec)
        for name in a.sets():
            assert [r.id for r in a.sets()[name]] == [r.id for r in b.sets()[name]]

    def test_serialized_byte_identical(self):
        records = build_records()
        spec = SplitSpec(seed=11, n_holdout_communities=1, n_holdout_rules=2)
        blobs = []
        for _ in range(2):
            result = split_dataset(records, spec)
            payload = {
                name: [r.id for r in subset] for name, subset in result.sets().items()
            }
            blobs.append(json.dumps(payload, sort_keys=True).encode())
        assert blobs[0] == blobs[1]

    def test_different_seed_differs(self):
        records = build_records()
        a = split_dataset(records, SplitSpec(seed=1, n_holdout_communities=0, n_holdout_rules=0))
        b = split_dataset(records, SplitSpec(seed=2, n_holdout_communities=0, n_holdout_rules=0))
        assert [r.id for r in a.train] != [r.id for r in b.train]


class TestErrors:
    def test_too_few_communities(self):
        records = build_records(communities=("a", "b"))
        with pytest.raises(ValueError):
            split_dataset(records, SplitSpec(seed=0, n_holdout_communities=3, n_holdout_rules=0))

    def test_bad_fractions_rejected(self):
        with pytest.raises(ValueError):
            SplitSpec(seed=0, fractions=(0.5, 0.2, 0.2))
