"""Deterministic, randomness-free constructions.

`circulant` is the classic existence witness for the square case: row i
carries a run of k ones starting at column i, wrapping past the right edge.
`tile` turns a square witness into a rectangular one by block repetition,
and `deterministic_rect` composes the two through the gcd decomposition.
"""

from __future__ import annotations

import numpy as np

from .core import (BinaryMatrix, MagicSpec, _check_dims, decompose, validate)


def circulant(n: int, k: int) -> BinaryMatrix:
    """n x n matrix with entry (i, j) = 1 iff i <= j < i+k or i <= j+n < i+k.

    Every row and every column sums to k: each row is the previous one
    rotated right by one position.
    """
    n, _ = _check_dims(n, n)
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")
    ii = np.arange(n, dtype=np.int64)[:, None]
    jj = np.arange(n, dtype=np.int64)[None, :]
    on = ((ii <= jj) & (jj < ii + k)) | ((ii <= jj + n) & (jj + n < ii + k))
    return BinaryMatrix.from_dense(on.astype(np.uint8))


def tile(base: BinaryMatrix, vertical_reps: int, horizontal_reps: int) -> BinaryMatrix:
    """Repeat a valid square base block vertically and horizontally.

    A q x q base with sums s tiles into a (q*v) x (q*h) matrix with row sums
    h*s and column sums v*s.
    """
    if base.rows_m != base.cols_n:
        raise ValueError(f"base must be square, got {base.rows_m}x{base.cols_n}")
    if vertical_reps < 1 or horizontal_reps < 1:
        raise ValueError("repetition counts must be at least 1")
    sums = base.row_sums()
    spec = MagicSpec.square(base.rows_m, sums[0])
    if not validate(base, spec).is_valid:
        raise ValueError("base is not a valid square instance (non-constant sums)")
    dense = np.tile(base.to_dense(), (vertical_reps, horizontal_reps))
    return BinaryMatrix.from_dense(dense)


def deterministic_rect(spec: MagicSpec) -> BinaryMatrix:
    """Seedless witness for any feasible spec.

    Decomposes the margins through gcd(rows_m, cols_n), builds the canonical
    circulant for the square core, and tiles it up to the requested shape.
    Raises FeasibilityError when no matrix with these margins exists.
    """
    d = decompose(spec.rows_m, spec.cols_n, spec.row_sum_a, spec.col_sum_b)
    base = circulant(d.q, d.q_prime)
    return tile(base, d.m_prime, d.n_prime)
