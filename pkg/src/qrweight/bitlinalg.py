"""Bit-packed linear algebra over GF(2).

Vectors are Python ints used as bitsets (bit i = coordinate i), so XOR is
vector addition and ``int.bit_count`` is the Hamming weight. Everything here
is a pure function on immutable values and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotHalfRate, RankDeficient, SingularInformationSet


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), coordinates packed into an int."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            bits |= 1 << i
        return cls(length, bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def dot(self, other: BitVector) -> int:
        """Scalar product mod 2."""
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: BitVector) -> BitVector:
        return BitVector(self.length, self.bits ^ other.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)


@dataclass(frozen=True)
class BitMatrix:
    """Matrix over GF(2); each row is an int with bit i = column i."""

    cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row does not fit in {self.cols} columns")

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[int]) -> BitMatrix:
        return cls(cols, tuple(rows))

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> BitMatrix:
        cols = len(lists[0]) if lists else 0
        rows = []
        for line in lists:
            if len(line) != cols:
                raise ValueError("ragged rows")
            rows.append(sum((b & 1) << i for i, b in enumerate(line)))
        return cls(cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def row_data(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(self.cols, r) for r in self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> c) & 1 for c in range(self.cols)] for r in self.rows]


def rref_on_columns(m: BitMatrix, col_order: Sequence[int]) -> tuple[BitMatrix, list[int]]:
    """Row reduce eliminating along ``col_order``; deterministic pivot choice.

    Returns the reduced matrix (zero rows dropped) and its pivot columns in
    elimination order.
    """
    rows = list(m.rows)
    pivots: list[int] = []
    r = 0
    for c in col_order:
        pivot_row = None
        for i in range(r, len(rows)):
            if (rows[i] >> c) & 1:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(len(rows)):
            if i != r and ((rows[i] >> c) & 1):
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return BitMatrix(m.cols, tuple(rows[:r])), pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form with leftmost pivots; pivots strictly increase."""
    return rref_on_columns(m, range(m.cols))


def rank(m: BitMatrix) -> int:
    return rref(m)[0].nrows


def row_space_contains(m: BitMatrix, bits: int) -> bool:
    """Membership test: reduce ``bits`` against the rref basis of ``m``."""
    reduced, pivots = rref(m)
    v = bits
    for row, c in zip(reduced.rows, pivots):
        if (v >> c) & 1:
            v ^= row
    return v == 0


def same_row_space(a: BitMatrix, b: BitMatrix) -> bool:
    if a.cols != b.cols:
        return False
    return rref(a)[0].rows == rref(b)[0].rows


def dual_basis(g: BitMatrix) -> BitMatrix:
    """Basis of the orthogonal complement of the row space of ``g``.

    Standard parity-check construction from the rref free columns; for
    g = [I | A] this returns [A^T | I].
    """
    reduced, pivots = rref(g)
    if reduced.nrows != g.nrows:
        raise RankDeficient(f"rank {reduced.nrows} < {g.nrows} rows")
    pivot_set = set(pivots)
    free = [c for c in range(g.cols) if c not in pivot_set]
    out = []
    for f in free:
        v = 1 << f
        for i, pc in enumerate(pivots):
            if (reduced.rows[i] >> f) & 1:
                v |= 1 << pc
        out.append(v)
    return BitMatrix(g.cols, tuple(out))


def left_kernel(m: BitMatrix) -> BitMatrix:
    """Coefficient vectors c with sum_i c_i * row_i = 0 (over GF(2)).

    Rows of the result are packed coefficient vectors of length ``m.nrows``.
    """
    n = m.nrows
    work = [(m.rows[i], 1 << i) for i in range(n)]
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, n):
            if (work[i][0] >> c) & 1:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        for i in range(n):
            if i != r and ((work[i][0] >> c) & 1):
                work[i] = (work[i][0] ^ work[r][0], work[i][1] ^ work[r][1])
        r += 1
    return BitMatrix(n, tuple(combo for vec, combo in work if vec == 0))


def intersect_rowspaces(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Basis of rowspace(a) & rowspace(b), via the kernel of the stacked matrix."""
    if a.cols != b.cols:
        raise ValueError("column counts differ")
    stacked = BitMatrix(a.cols, a.rows + b.rows)
    gens = []
    for combo in left_kernel(stacked).rows:
        v = 0
        for i in range(a.nrows):
            if (combo >> i) & 1:
                v ^= a.rows[i]
        gens.append(v)
    return rref(BitMatrix(a.cols, tuple(gens)))[0]


def hull_dimension(g: BitMatrix) -> int:
    """dim of rowspace(g) intersected with its orthogonal complement."""
    if rank(g) != g.nrows:
        raise RankDeficient("generator rows are dependent")
    return intersect_rowspaces(g, dual_basis(g)).nrows


def disjoint_information_systematizations(g: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """Systematize a half-rate generator on each coordinate half.

    Returns (g1, g2) with g1 = [I | A] systematic on columns 0..k-1 and
    g2 = [B | I] systematic on columns k..2k-1, both row-equivalent to g.
    """
    k = g.nrows
    if g.cols != 2 * k:
        raise NotHalfRate(f"{g.nrows} x {g.cols} is not k x 2k")
    g1, piv1 = rref(g)
    if piv1 != list(range(k)):
        raise SingularInformationSet("left half (columns 0..k-1) is not an information set")
    g2_raw, piv2 = rref_on_columns(g, list(range(k, 2 * k)) + list(range(k)))
    if sorted(piv2) != list(range(k, 2 * k)):
        raise SingularInformationSet("right half (columns k..2k-1) is not an information set")
    order = sorted(range(k), key=lambda i: piv2[i])
    g2 = BitMatrix(g.cols, tuple(g2_raw.rows[i] for i in order))
    return g1, g2
