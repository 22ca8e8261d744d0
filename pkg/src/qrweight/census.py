"""Partial weight census via revolving-door enumeration of information patterns.

Low-weight codewords of a half-rate code are counted exactly by enumerating
all information patterns of size <= t in two generator matrices systematic on
disjoint halves. A codeword of weight w <= 2t has its lighter half reachable
as a pattern of size <= t, so counting a word found through the left-
systematic matrix only when its left half is not heavier (ties included) and
through the right-systematic matrix only when its right half is strictly
lighter counts every qualifying codeword exactly once.

The enumeration order is the revolving-door Gray code for combinations:
successive patterns exchange a single element, so each codeword is one row
XOR away from the previous one. Patterns of a fixed largest element a_t
occupy the consecutive rank interval [C(a_t, t), C(a_t+1, t) - 1], and ranks
obey the reflected recursion

    rank(a_t .. a_1) = C(a_t + 1, t) - 1 - rank(a_t-1 .. a_1)

which gives O(t) ranking and unranking. Unranking lets every shard of the
work re-derive its own starting codeword, so shards are fully independent.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .bitlinalg import disjoint_information_systematizations
from .errors import BudgetExceeded, InvariantViolation, RankOutOfRange, ShardGap, ShardOverlap
from .qrcodes import QrCodeFamily

DEFAULT_BLOCK_SIZE = 10**8
DEFAULT_PATTERN_BUDGET = 10**8


@dataclass(frozen=True)
class CombPattern:
    """A t-subset of {0..s-1} stored as a strictly increasing tuple."""

    s: int
    elements: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for a in self.elements:
            if a <= prev or a >= self.s:
                raise ValueError(f"elements not strictly increasing in [0, {self.s})")
            prev = a

    @property
    def t(self) -> int:
        return len(self.elements)


def _succ(c: tuple[int, ...], s: int) -> tuple[tuple[int, ...], int, int] | None:
    """Next pattern in revolving-door order: (pattern, removed, added), or None."""
    t = len(c)
    if t == 0:
        return None
    a = c[-1]
    rest = c[:-1]
    if rest == tuple(range(t - 1)):
        # last pattern of the a-block; hop to the first pattern of block a+1
        if a + 1 >= s:
            return None
        if t == 1:
            return (a + 1,), a, a + 1
        return tuple(range(t - 2)) + (a, a + 1), t - 2, a + 1
    step = _pred(rest)
    assert step is not None
    new_rest, removed, added = step
    return new_rest + (a,), removed, added


def _pred(c: tuple[int, ...]) -> tuple[tuple[int, ...], int, int] | None:
    """Previous pattern in revolving-door order, or None at rank 0."""
    t = len(c)
    if t == 0 or c == tuple(range(t)):
        return None
    a = c[-1]
    rest = c[:-1]
    if rest == tuple(range(t - 2)) + ((a - 1,) if t >= 2 else ()):
        # first pattern of the a-block; land on the last pattern of block a-1
        if t == 1:
            return (a - 1,), a, a - 1
        return tuple(range(t - 1)) + (a - 1,), a, t - 2
    step = _succ(rest, a)
    assert step is not None
    new_rest, removed, added = step
    return new_rest + (a,), removed, added


def rd_successor(c: CombPattern) -> CombPattern | None:
    """Next pattern in revolving-door order; None after the last of C(s, t)."""
    step = _succ(c.elements, c.s)
    if step is None:
        return None
    return CombPattern(c.s, step[0])


def rd_predecessor(c: CombPattern) -> CombPattern | None:
    """Previous pattern in revolving-door order; None at rank 0."""
    step = _pred(c.elements)
    if step is None:
        return None
    return CombPattern(c.s, step[0])


def rd_rank(c: CombPattern) -> int:
    """Position of the pattern in the walk; the walk starts at rank 0."""
    r = 0
    sign = 1
    for i in range(c.t - 1, -1, -1):
        r += sign * (comb(c.elements[i] + 1, i + 1) - 1)
        sign = -sign
    return r


def rd_unrank(r: int, s: int, t: int) -> CombPattern:
    """Pattern of the given rank, by locating a_t in its block and reflecting."""
    if not 0 <= r < comb(s, t):
        raise RankOutOfRange(f"rank {r} outside [0, {comb(s, t)}) for C({s},{t})")
    out = []
    for tt in range(t, 0, -1):
        a = tt - 1
        while comb(a + 1, tt) <= r:
            a += 1
        out.append(a)
        r = comb(a + 1, tt) - 1 - r
    out.reverse()
    return CombPattern(s, tuple(out))


@dataclass(frozen=True)
class ShardPlan:
    """Partition of the C(s, t) ranks into consecutive blocks of size <= block_size."""

    s: int
    t: int
    block_size: int
    shards: tuple[tuple[int, int, int], ...]  # (index, start_rank, count), 1-indexed


def plan_shards(s: int, t: int, block_size: int) -> ShardPlan:
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    total = comb(s, t)
    shards = []
    index = 1
    start = 0
    while start < total:
        count = min(block_size, total - start)
        shards.append((index, start, count))
        index += 1
        start += count
    return ShardPlan(s=s, t=t, block_size=block_size, shards=tuple(shards))


@dataclass(frozen=True)
class ShardRecord:
    """Audit record of one processed shard."""

    index: int
    matrix: int
    size: int
    start_rank: int
    count: int
    weight_counts: tuple[tuple[int, int], ...]

    def digest(self) -> str:
        payload = json.dumps(
            [self.index, self.matrix, self.size, self.start_rank, self.count, list(self.weight_counts)],
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class CensusProvenance:
    code_digest: str
    max_info_weight: int
    block_size: int
    total_shards: int
    shards: tuple[ShardRecord, ...]


@dataclass(frozen=True)
class WeightCensus:
    """Per-weight codeword counts, exact for every even weight <= complete_upto.

    A census produced for a subset of shard indices is a fragment: its counts
    are partial sums and only a gap-free merge restores exactness.
    """

    p: int
    n: int
    k: int
    complete_upto: int
    counts: dict[int, int]
    provenance: CensusProvenance


def census_work_units(k: int, t: int, block_size: int) -> list[tuple[int, int, int, int, int]]:
    """Deterministic global decomposition: (index, matrix, size, start_rank, count)."""
    units = []
    index = 1
    for matrix in (1, 2):
        for size in range(t + 1):
            for _, start, count in plan_shards(k, size, block_size).shards:
                units.append((index, matrix, size, start, count))
                index += 1
    return units


def _count_shard(args: tuple) -> tuple[int, int, int, int, int, tuple[tuple[int, int], ...]]:
    """Walk one shard and tally qualifying codeword weights.

    Runs in worker processes; everything needed travels in ``args`` and the
    starting codeword is rebuilt from the shard's start rank.
    """
    index, matrix, size, start_rank, count, rows, k, left_mask, max_weight = args
    elements = rd_unrank(start_rank, k, size).elements
    word = 0
    for i in elements:
        word ^= rows[i]
    counts: dict[int, int] = {}
    keep_ties = matrix == 1
    remaining = count
    while True:
        w = word.bit_count()
        if w <= max_weight:
            wl = (word & left_mask).bit_count()
            wr = w - wl
            if (wl <= wr) if keep_ties else (wr < wl):
                counts[w] = counts.get(w, 0) + 1
        remaining -= 1
        if remaining == 0:
            break
        step = _succ(elements, k)
        if step is None:
            raise InvariantViolation("shard ran past the end of the walk")
        elements, removed, added = step
        word ^= rows[removed] ^ rows[added]
    return index, matrix, size, start_rank, count, tuple(sorted(counts.items()))


def run_census(
    family: QrCodeFamily,
    t: int,
    *,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
    budget: int = DEFAULT_PATTERN_BUDGET,
    long_run: bool = False,
    shard_indices: Iterable[int] | None = None,
) -> WeightCensus:
    """Count extended-code codewords of every weight <= 2t.

    With shard_indices the run covers only those work units and returns a
    fragment for later merging. Results are bit-identical for any worker
    count and block size: shards own private counters and merging is plain
    per-weight addition.
    """
    k = family.k
    n = family.n_extended
    g1, g2 = disjoint_information_systematizations(family.extended)
    units = census_work_units(k, t, block_size)
    total_shards = len(units)
    if shard_indices is not None:
        wanted = set(shard_indices)
        missing = wanted - {u[0] for u in units}
        if missing:
            raise RankOutOfRange(f"no such shard indices: {sorted(missing)}")
        units = [u for u in units if u[0] in wanted]
    cost = sum(u[4] for u in units)
    if cost > budget and not long_run:
        raise BudgetExceeded(f"census needs {cost} patterns, budget {budget}")

    left_mask = (1 << k) - 1
    max_weight = 2 * t
    jobs = [
        (index, matrix, size, start, count, (g1 if matrix == 1 else g2).rows, k, left_mask, max_weight)
        for index, matrix, size, start, count in units
    ]
    if workers <= 1:
        results = [_count_shard(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_count_shard, jobs))

    totals: dict[int, int] = {}
    records = []
    for index, matrix, size, start, count, weight_counts in sorted(results):
        records.append(
            ShardRecord(
                index=index,
                matrix=matrix,
                size=size,
                start_rank=start,
                count=count,
                weight_counts=weight_counts,
            )
        )
        for w, c in weight_counts:
            totals[w] = totals.get(w, 0) + c
    for w, c in totals.items():
        if w % 2 and c:
            raise InvariantViolation(f"odd weight {w} counted in an even code")
    counts = {w: totals.get(w, 0) for w in range(0, max_weight + 1, 2)}
    return WeightCensus(
        p=family.p,
        n=n,
        k=k,
        complete_upto=max_weight,
        counts=counts,
        provenance=CensusProvenance(
            code_digest=family.code_digest(),
            max_info_weight=t,
            block_size=block_size,
            total_shards=total_shards,
            shards=tuple(records),
        ),
    )


def merge_censuses(parts: Sequence[WeightCensus]) -> WeightCensus:
    """Combine fragments of one plan; rejects duplicate or missing shards."""
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    ident = (
        first.p,
        first.n,
        first.k,
        first.complete_upto,
        first.provenance.code_digest,
        first.provenance.block_size,
        first.provenance.total_shards,
    )
    seen: dict[int, ShardRecord] = {}
    for part in parts:
        pid = (
            part.p,
            part.n,
            part.k,
            part.complete_upto,
            part.provenance.code_digest,
            part.provenance.block_size,
            part.provenance.total_shards,
        )
        if pid != ident:
            raise InvariantViolation("fragments come from different plans or codes")
        for rec in part.provenance.shards:
            if rec.index in seen:
                raise ShardOverlap(f"shard {rec.index} appears more than once")
            seen[rec.index] = rec
    expected = set(range(1, first.provenance.total_shards + 1))
    missing = expected - set(seen)
    if missing:
        raise ShardGap(f"missing shards: {sorted(missing)}")
    totals: dict[int, int] = {}
    for rec in seen.values():
        for w, c in rec.weight_counts:
            totals[w] = totals.get(w, 0) + c
    counts = {w: totals.get(w, 0) for w in range(0, first.complete_upto + 1, 2)}
    return WeightCensus(
        p=first.p,
        n=first.n,
        k=first.k,
        complete_upto=first.complete_upto,
        counts=counts,
        provenance=CensusProvenance(
            code_digest=first.provenance.code_digest,
            max_info_weight=first.provenance.max_info_weight,
            block_size=first.provenance.block_size,
            total_shards=first.provenance.total_shards,
            shards=tuple(seen[i] for i in sorted(seen)),
        ),
    )
