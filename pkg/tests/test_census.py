from math import comb

import pytest

from qrweight.census import (
    CombPattern,
    merge_censuses,
    plan_shards,
    rd_predecessor,
    rd_rank,
    rd_successor,
    rd_unrank,
    run_census,
)
from qrweight.errors import BudgetExceeded, RankOutOfRange, ShardGap, ShardOverlap


def full_walk(s, t):
    walk = []
    c = CombPattern(s, tuple(range(t)))
    while c is not None:
        walk.append(c)
        c = rd_successor(c)
    return walk


def test_walk_c53_single_exchange():
    walk = full_walk(5, 3)
    assert len(walk) == 10
    assert len({w.elements for w in walk}) == 10
    for a, b in zip(walk, walk[1:]):
        left, right = set(a.elements), set(b.elements)
        assert len(left - right) == 1 and len(right - left) == 1


def test_walk_degenerate_sizes():
    assert [w.elements for w in full_walk(4, 4)] == [(0, 1, 2, 3)]
    assert [w.elements for w in full_walk(4, 0)] == [()]


def test_rank_matches_walk_position():
    for i, pattern in enumerate(full_walk(8, 3)):
        assert rd_rank(pattern) == i
        assert rd_unrank(i, 8, 3) == pattern


def test_rank_single_element():
    for a in range(9):
        assert rd_rank(CombPattern(9, (a,))) == a


def test_fixed_top_element_rank_interval():
    # patterns with a fixed largest element fill [C(a_t, t), C(a_t+1, t) - 1]
    t = 4
    by_top: dict[int, list[int]] = {}
    for pattern in full_walk(10, t):
        by_top.setdefault(pattern.elements[-1], []).append(rd_rank(pattern))
    for a_t, ranks in by_top.items():
        assert min(ranks) == comb(a_t, t)
        assert max(ranks) == comb(a_t + 1, t) - 1
        assert sorted(ranks) == list(range(comb(a_t, t), comb(a_t + 1, t)))


def test_unrank_rank_bijection_c125():
    for r in range(comb(12, 5)):
        assert rd_rank(rd_unrank(r, 12, 5)) == r


def test_unrank_out_of_range():
    with pytest.raises(RankOutOfRange):
        rd_unrank(comb(8, 3), 8, 3)
    with pytest.raises(RankOutOfRange):
        rd_unrank(-1, 8, 3)


def test_predecessor_inverts_successor():
    walk = full_walk(7, 3)
    for a, b in zip(walk, walk[1:]):
        assert rd_predecessor(b) == a
    assert rd_predecessor(walk[0]) is None


def test_plan_shards_sizes():
    plan = plan_shards(8, 3, 10)
    assert [count for _, _, count in plan.shards] == [10, 10, 10, 10, 10, 6]
    assert [start for _, start, _ in plan.shards] == [0, 10, 20, 30, 40, 50]
    assert [index for index, _, _ in plan.shards] == [1, 2, 3, 4, 5, 6]


def test_plan_shards_single_block():
    plan = plan_shards(8, 3, 10**6)
    assert len(plan.shards) == 1
    assert plan.shards[0] == (1, 0, comb(8, 3))


@pytest.mark.parametrize("block", [1, 7, 50])
def test_shard_walks_cover_everything_exactly_once(block):
    seen = []
    for _, start, count in plan_shards(10, 4, block).shards:
        c = rd_unrank(start, 10, 4)
        for _ in range(count):
            seen.append(c.elements)
            c = rd_successor(c)
    assert len(seen) == comb(10, 4)
    assert len(set(seen)) == comb(10, 4)


def test_census_p17_matches_oracle(family17, dist17):
    result = run_census(family17, 4)
    assert result.complete_upto == 8
    for w in range(0, 9, 2):
        assert result.counts[w] == dist17[w]
    assert set(result.counts) == set(range(0, 9, 2))


def test_census_p41_matches_oracle(family41, dist41):
    result = run_census(family41, 6)
    for w in range(0, 13, 2):
        assert result.counts[w] == dist41[w]


def test_census_zero_below_minimum_distance(family17):
    result = run_census(family17, 4)
    assert result.counts[2] == 0 and result.counts[4] == 0
    assert result.counts[0] == 1


def test_census_deterministic_across_workers_and_blocks(family41):
    reference = run_census(family41, 6)
    for workers in (1, 2):
        for block in (1000, 100000):
            result = run_census(family41, 6, workers=workers, block_size=block)
            assert result.counts == reference.counts


def test_census_budget_gate(family137):
    with pytest.raises(BudgetExceeded):
        run_census(family137, 11)


def test_merge_single_fragment_is_identity(family17):
    result = run_census(family17, 3)
    merged = merge_censuses([result])
    assert merged.counts == result.counts


def test_merge_two_halves(family17):
    whole = run_census(family17, 4, block_size=40)
    total = whole.provenance.total_shards
    assert total > 2
    indices = list(range(1, total + 1))
    first = run_census(family17, 4, block_size=40, shard_indices=indices[: total // 2])
    second = run_census(family17, 4, block_size=40, shard_indices=indices[total // 2 :])
    merged = merge_censuses([first, second])
    assert merged.counts == whole.counts
    assert merged.provenance.shards == whole.provenance.shards


def test_merge_duplicate_shard(family17):
    first = run_census(family17, 3, shard_indices=[1])
    with pytest.raises(ShardOverlap):
        merge_censuses([first, first])


def test_merge_missing_shard(family17):
    first = run_census(family17, 3, shard_indices=[1])
    with pytest.raises(ShardGap):
        merge_censuses([first])


def test_comb_pattern_validation():
    with pytest.raises(ValueError):
        CombPattern(5, (3, 3))
    with pytest.raises(ValueError):
        CombPattern(5, (2, 5))
