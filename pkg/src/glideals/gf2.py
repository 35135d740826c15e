"""Exact dense linear algebra over GF(2) on bit-packed rows.

Rows are Python ints used as bitsets: bit j holds the entry in column j,
so arbitrary-width rows cost one object and row addition is a single XOR.
Echelon forms pivot on the *highest* set bit of a row (cheap to locate on
big ints via bit_length).  In a reduced matrix the rows are listed by
increasing pivot column and every pivot column contains exactly one 1,
which makes the reduced form a canonical representative of the rowspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _as_row(ncols: int, value) -> int:
    """Coerce an int, BitVector or 0/1 sequence into a row bitset."""
    if isinstance(value, BitVector):
        if value.length != ncols:
            raise ValueError(
                f"dimension mismatch: vector of length {value.length}, matrix has {ncols} columns"
            )
        return value.bits
    if isinstance(value, int):
        if value < 0 or value >> ncols:
            raise ValueError(f"row bits do not fit in {ncols} columns")
        return value
    bits = 0
    entries = list(value)
    if len(entries) != ncols:
        raise ValueError(
            f"dimension mismatch: row of length {len(entries)}, matrix has {ncols} columns"
        )
    for j, e in enumerate(entries):
        if e not in (0, 1):
            raise ValueError(f"entry {e!r} is not a bit")
        bits |= e << j
    return bits


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2), packed into one int."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_bits(cls, entries: Sequence[int]) -> "BitVector":
        return cls(len(entries), _as_row(len(entries), entries))

    def bit(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def to_bits(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("dimension mismatch in vector addition")
        return BitVector(self.length, self.bits ^ other.bits)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0


class Echelon:
    """Incremental row-echelon accumulator over GF(2).

    Maintains one row per pivot column (pivot = highest set bit).  `add`
    inserts a row and reports whether the rank grew; `residue` reduces a
    vector against the accumulated rows, returning 0 exactly when the
    vector lies in their span.
    """

    __slots__ = ("ncols", "_pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivot_cols(self) -> tuple[int, ...]:
        return tuple(sorted(self._pivots))

    def residue(self, v: int) -> int:
        pivots = self._pivots
        while v:
            b = v.bit_length() - 1
            row = pivots.get(b)
            if row is None:
                return v
            v ^= row
        return 0

    def contains(self, v: int) -> bool:
        return self.residue(v) == 0

    def add(self, v: int) -> bool:
        pivots = self._pivots
        while v:
            b = v.bit_length() - 1
            row = pivots.get(b)
            if row is None:
                pivots[b] = v
                return True
            v ^= row
        return False

    def reduced_rows(self) -> list[int]:
        """Rows of the reduced echelon form, by increasing pivot column.

        Every pivot column ends up with exactly one 1, so the output is
        the canonical basis of the rowspace.
        """
        cols = sorted(self._pivots)
        reduced: dict[int, int] = {}
        mask = 0
        for c in cols:
            v = self._pivots[c]
            w = v & mask
            # a pivot is the row's highest bit, so stray bits sit at *lower*
            # pivot columns; rows for those are already reduced, hence each
            # XOR clears exactly one pivot bit and cannot set another
            while w:
                b = w.bit_length() - 1
                v ^= reduced[b]
                w ^= 1 << b
            reduced[c] = v
            mask |= 1 << c
        return [reduced[c] for c in cols]


@dataclass(frozen=True)
class BitMatrix:
    """An immutable GF(2) matrix: deduplicated nonzero rows over ncols columns.

    pivot_cols and rank are populated by rref(); construction through
    from_rows drops zero rows and duplicates (duplicate rows cancel mod 2
    down to a single copy, which spans the same space).
    """

    ncols: int
    rows: tuple[int, ...] = ()
    pivot_cols: tuple[int, ...] | None = None
    rank: int | None = None

    @classmethod
    def from_rows(cls, ncols: int, rows: Iterable) -> "BitMatrix":
        seen: set[int] = set()
        kept: list[int] = []
        for r in rows:
            bits = _as_row(ncols, r)
            if bits and bits not in seen:
                seen.add(bits)
                kept.append(bits)
        return cls(ncols, tuple(kept))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rref(self) -> "BitMatrix":
        ech = Echelon(self.ncols)
        for r in self.rows:
            ech.add(r)
        return BitMatrix(
            self.ncols, tuple(ech.reduced_rows()), ech.pivot_cols(), ech.rank
        )

    def is_echelon(self) -> bool:
        seen: set[int] = set()
        for r in self.rows:
            if r == 0:
                return False
            b = r.bit_length() - 1
            if b in seen:
                return False
            seen.add(b)
        return True

    def in_rowspace(self, v) -> bool:
        if self.pivot_cols is None and not self.is_echelon():
            raise ValueError("matrix must be echelonized (call rref first)")
        bits = _as_row(self.ncols, v)
        pivots = {r.bit_length() - 1: r for r in self.rows}
        while bits:
            b = bits.bit_length() - 1
            row = pivots.get(b)
            if row is None:
                return False
            bits ^= row
        return True

    def row_vector(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def to_lists(self) -> list[list[int]]:
        return [self.row_vector(i).to_bits() for i in range(self.nrows)]


def rref(m: BitMatrix) -> BitMatrix:
    """Reduced row-echelon form of m; preserves the rowspace."""
    return m.rref()


def in_rowspace(m: BitMatrix, v) -> bool:
    """Whether v is an GF(2)-combination of the rows of the echelonized m."""
    return m.in_rowspace(v)
