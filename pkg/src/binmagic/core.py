"""Domain types, validation and feasibility analysis.

A binary magic square (BMS) is a 0/1 matrix in which every row sums to one
constant and every column sums to another.  A square n x n instance with both
constants equal to k always exists for 0 <= k <= n; a rectangular m x n
instance with row sums a and column sums b exists iff a*m == b*n (both sides
count the total number of ones), with a and b inside their trivial ranges.

Matrices are stored row-major and bit-packed: 64 entries per word, each row
padded to a whole number of words, bit j of a word holding column 64*w + j.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Optional

import numpy as np

# Dimensions are capped so products like a*m stay far inside 64-bit range
# even for consumers that move them through fixed-width integers.
DIM_CAP = 1 << 20

WORD_BITS = 64


class FeasibilityError(ValueError):
    """No binary matrix with the requested constant margins exists."""

    def __init__(self, rows_m: int, cols_n: int, row_sum_a: int, col_sum_b: int,
                 pairs: list[tuple[int, int]]):
        self.rows_m = rows_m
        self.cols_n = cols_n
        self.row_sum_a = row_sum_a
        self.col_sum_b = col_sum_b
        self.pairs = pairs
        if len(pairs) <= 8:
            shown = pairs
        else:
            shown = sorted(pairs, key=lambda p: abs(p[0] - row_sum_a) + abs(p[1] - col_sum_b))[:8]
            shown.sort()
        listing = ", ".join(f"({a}, {b})" for a, b in shown)
        suffix = "" if len(pairs) <= 8 else f" and {len(pairs) - 8} more"
        super().__init__(
            f"no {rows_m}x{cols_n} binary matrix has row sums {row_sum_a} and column "
            f"sums {col_sum_b}; feasible (row_sum, col_sum) pairs: {listing}{suffix}"
        )


def _as_int(name: str, value) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise ValueError(f"{name} must be an integer, got {value!r}") from None


def _check_dims(rows_m: int, cols_n: int) -> tuple[int, int]:
    rows_m = _as_int("rows_m", rows_m)
    cols_n = _as_int("cols_n", cols_n)
    for name, v in (("rows_m", rows_m), ("cols_n", cols_n)):
        if not 1 <= v <= DIM_CAP:
            raise ValueError(f"{name} must be in [1, {DIM_CAP}], got {v}")
    return rows_m, cols_n


@dataclass(frozen=True)
class MagicSpec:
    """Problem parameters: every row sums to row_sum_a, every column to col_sum_b."""

    rows_m: int
    cols_n: int
    row_sum_a: int
    col_sum_b: int

    def __post_init__(self):
        m, n = _check_dims(self.rows_m, self.cols_n)
        a = _as_int("row_sum_a", self.row_sum_a)
        b = _as_int("col_sum_b", self.col_sum_b)
        if not 0 <= a <= n:
            raise ValueError(f"row_sum_a must be in [0, {n}], got {a}")
        if not 0 <= b <= m:
            raise ValueError(f"col_sum_b must be in [0, {m}], got {b}")
        object.__setattr__(self, "rows_m", m)
        object.__setattr__(self, "cols_n", n)
        object.__setattr__(self, "row_sum_a", a)
        object.__setattr__(self, "col_sum_b", b)

    @classmethod
    def square(cls, n: int, k: int) -> "MagicSpec":
        """n x n spec with row and column sums both k."""
        return cls(n, n, k, k)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows_m, self.cols_n)

    def is_feasible(self) -> bool:
        return self.row_sum_a * self.rows_m == self.col_sum_b * self.cols_n


class BinaryMatrix:
    """Bit-packed 0/1 matrix.

    `words` has shape (rows_m, ceil(cols_n / 64)) and dtype uint64; entry
    (i, j) is bit (j mod 64) of words[i, j // 64].  Padding bits past cols_n
    are always zero, so whole-word comparison equals entrywise comparison.

    Instances handed out by the public API are frozen; treat them as values.
    """

    __slots__ = ("rows_m", "cols_n", "words")

    def __init__(self, rows_m: int, cols_n: int, words: np.ndarray, *, frozen: bool = True):
        rows_m, cols_n = _check_dims(rows_m, cols_n)
        expected = (rows_m, _words_per_row(cols_n))
        if not isinstance(words, np.ndarray) or words.dtype != np.uint64 or words.shape != expected:
            raise ValueError(f"words must be a uint64 array of shape {expected}")
        pad = cols_n % WORD_BITS
        if pad and bool(np.any(words[:, -1] >> np.uint64(pad))):
            raise ValueError("padding bits past cols_n must be zero")
        self.rows_m = rows_m
        self.cols_n = cols_n
        self.words = words
        if frozen:
            words.setflags(write=False)

    @classmethod
    def zeros(cls, rows_m: int, cols_n: int) -> "BinaryMatrix":
        """All-zero matrix with writable storage, for generator internals."""
        rows_m, cols_n = _check_dims(rows_m, cols_n)
        words = np.zeros((rows_m, _words_per_row(cols_n)), dtype=np.uint64)
        return cls(rows_m, cols_n, words, frozen=False)

    def freeze(self) -> "BinaryMatrix":
        self.words.setflags(write=False)
        return self

    @classmethod
    def from_dense(cls, array) -> "BinaryMatrix":
        dense = np.asarray(array)
        if dense.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {dense.shape}")
        if dense.size and not np.isin(dense, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        m, n = dense.shape
        m, n = _check_dims(m, n)
        width = _words_per_row(n) * WORD_BITS
        padded = np.zeros((m, width), dtype=np.uint8)
        padded[:, :n] = dense
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)
        return cls(m, n, np.ascontiguousarray(words))

    @classmethod
    def from_rowstrings(cls, rows: list[str]) -> "BinaryMatrix":
        if not rows:
            raise ValueError("need at least one row")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows must all have the same length")
        if any(ch not in "01" for r in rows for ch in r):
            raise ValueError("rows may only contain '0' and '1'")
        dense = np.array([[1 if ch == "1" else 0 for ch in r] for r in rows], dtype=np.uint8)
        return cls.from_dense(dense)

    def to_dense(self) -> np.ndarray:
        """(rows_m, cols_n) uint8 array of entries."""
        as_bytes = self.words.astype("<u8", copy=False).view(np.uint8)
        bits = np.unpackbits(as_bytes.reshape(self.rows_m, -1), axis=1, bitorder="little")
        return bits[:, : self.cols_n]

    def to_rowstrings(self) -> list[str]:
        dense = self.to_dense()
        return ["".join("1" if v else "0" for v in row) for row in dense]

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows_m and 0 <= j < self.cols_n):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows_m}x{self.cols_n}")
        return (int(self.words[i, j >> 6]) >> (j & 63)) & 1

    def _set(self, i: int, j: int) -> None:
        self.words[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)

    def row_sums(self) -> list[int]:
        return [int(v) for v in np.bitwise_count(self.words).sum(axis=1)]

    def col_sums(self) -> list[int]:
        return [int(v) for v in self.to_dense().sum(axis=0, dtype=np.int64)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows_m, self.cols_n)

    def key(self) -> tuple[int, int, bytes]:
        """Hashable canonical identity, e.g. for distinct-output sets."""
        return (self.rows_m, self.cols_n, self.words.astype("<u8", copy=False).tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return (self.rows_m == other.rows_m and self.cols_n == other.cols_n
                and bool(np.array_equal(self.words, other.words)))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows_m}x{self.cols_n}, ones={int(np.bitwise_count(self.words).sum())})"


def _words_per_row(cols_n: int) -> int:
    return (cols_n + WORD_BITS - 1) // WORD_BITS


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a matrix against a spec's margins."""

    is_valid: bool
    row_sums: list[int]
    col_sums: list[int]
    first_violation: Optional[tuple[str, int, int, int]]  # (axis, index, observed, expected)


def validate(matrix: BinaryMatrix, spec: MagicSpec) -> ValidationReport:
    """Check every row sum against spec.row_sum_a and every column sum against spec.col_sum_b.

    The sums are fully populated in the report whether or not the matrix is
    valid; first_violation points at the earliest offending row, then the
    earliest offending column.
    """
    if matrix.shape != spec.shape:
        raise ValueError(
            f"matrix is {matrix.rows_m}x{matrix.cols_n} but spec is "
            f"{spec.rows_m}x{spec.cols_n}")
    row_sums = matrix.row_sums()
    col_sums = matrix.col_sums()
    first = None
    for i, v in enumerate(row_sums):
        if v != spec.row_sum_a:
            first = ("row", i, v, spec.row_sum_a)
            break
    if first is None:
        for j, v in enumerate(col_sums):
            if v != spec.col_sum_b:
                first = ("col", j, v, spec.col_sum_b)
                break
    return ValidationReport(first is None, row_sums, col_sums, first)


def is_feasible(rows_m: int, cols_n: int, row_sum_a: int, col_sum_b: int) -> bool:
    """True iff a matrix with these constant margins exists.

    Existence is exactly the counting identity row_sum_a * rows_m ==
    col_sum_b * cols_n (with the sums in range): both sides count the total
    number of ones, and a witness can always be tiled from a square instance
    of side gcd(rows_m, cols_n).  Out-of-range sums raise rather than return
    False, so "malformed" and "infeasible" stay distinguishable.
    """
    spec = MagicSpec(rows_m, cols_n, row_sum_a, col_sum_b)
    return spec.is_feasible()


def feasible_pairs(rows_m: int, cols_n: int) -> list[tuple[int, int]]:
    """All (row_sum, col_sum) pairs realizable on an rows_m x cols_n grid.

    With q = gcd(rows_m, cols_n), rows_m = q*m', cols_n = q*n', these are
    exactly (t*n', t*m') for t = 0..q, ascending.
    """
    rows_m, cols_n = _check_dims(rows_m, cols_n)
    q = math.gcd(rows_m, cols_n)
    m_prime = rows_m // q
    n_prime = cols_n // q
    return [(t * n_prime, t * m_prime) for t in range(q + 1)]


@dataclass(frozen=True)
class GcdDecomposition:
    """Factorization rows_m = q*m_prime, cols_n = q*n_prime with gcd(m', n') = 1.

    For a feasible margin pair, q_prime is the common multiplier with
    row_sum_a = q_prime * n_prime and col_sum_b = q_prime * m_prime.
    """

    q: int
    m_prime: int
    n_prime: int
    q_prime: Optional[int] = None


def decompose(rows_m: int, cols_n: int, row_sum_a: int, col_sum_b: int) -> GcdDecomposition:
    """Gcd decomposition of a feasible margin assignment."""
    if not is_feasible(rows_m, cols_n, row_sum_a, col_sum_b):
        raise FeasibilityError(rows_m, cols_n, row_sum_a, col_sum_b,
                               feasible_pairs(rows_m, cols_n))
    q = math.gcd(rows_m, cols_n)
    m_prime = rows_m // q
    n_prime = cols_n // q
    q_prime = row_sum_a // n_prime
    # a*m == b*n forces n_prime | a and m_prime | b (m' and n' are coprime)
    assert q_prime * n_prime == row_sum_a and q_prime * m_prime == col_sum_b
    return GcdDecomposition(q, m_prime, n_prime, q_prime)


def complement(matrix: BinaryMatrix) -> BinaryMatrix:
    """Entrywise 1 - m_ij.

    Maps a valid (m, n, a, b) instance to a valid (m, n, n-a, m-b) one.
    """
    words = np.bitwise_not(matrix.words)
    pad = matrix.cols_n % WORD_BITS
    if pad:
        words[:, -1] &= np.uint64((1 << pad) - 1)
    return BinaryMatrix(matrix.rows_m, matrix.cols_n, words)


def transpose(matrix: BinaryMatrix) -> BinaryMatrix:
    """Swap rows and columns; margins (a, b) become (b, a)."""
    return BinaryMatrix.from_dense(matrix.to_dense().T)
