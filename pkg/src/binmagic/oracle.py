"""Exhaustive ground truth for small instances.

Row-by-row backtracking: each row is one choice of row_sum_a columns among
those with remaining capacity, where a column's capacity is col_sum_b minus
the ones already placed in it.  Branches die as soon as some column can no
longer be filled by the remaining rows, or the total remaining capacity
stops matching the ones the remaining rows will add.  Counting is always
exact; collected matrices come out in ascending order of their packed row
words, so enumeration output is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import BinaryMatrix, MagicSpec, _words_per_row

SIZE_GUARD = 6

DEFAULT_COLLECT_LIMIT = 10_000


class OracleSizeError(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass
class EnumerationResult:
    count: int
    matrices: list[BinaryMatrix]


def _matrix_from_masks(masks: list[int], cols_n: int) -> BinaryMatrix:
    words = np.array([[mask] for mask in masks], dtype=np.uint64)
    assert _words_per_row(cols_n) == 1
    return BinaryMatrix(len(masks), cols_n, words)


def enumerate_matrices(spec: MagicSpec, collect_limit: int = DEFAULT_COLLECT_LIMIT,
                       stop_after: int | None = None) -> EnumerationResult:
    """All 0/1 matrices with the spec's margins.

    `collect_limit` caps how many matrices are materialized; the count stays
    exact past the cap.  `stop_after` aborts the search once that many
    solutions were found (used by `exists`), making the count a lower bound.
    """
    m, n = spec.rows_m, spec.cols_n
    if m > SIZE_GUARD or n > SIZE_GUARD:
        raise OracleSizeError(
            f"{m}x{n} exceeds the {SIZE_GUARD}x{SIZE_GUARD} enumeration guard")
    a, b = spec.row_sum_a, spec.col_sum_b

    masks = sorted(sum(1 << c for c in combo)
                   for combo in itertools.combinations(range(n), a))
    capacity = [b] * n
    chosen: list[int] = []
    result = EnumerationResult(0, [])

    def place(r: int) -> bool:
        if r == m:
            result.count += 1
            if len(result.matrices) < collect_limit:
                result.matrices.append(_matrix_from_masks(chosen, n))
            return stop_after is not None and result.count >= stop_after
        rem = m - r
        if sum(capacity) != rem * a:
            return False
        blocked = 0
        for j, c in enumerate(capacity):
            if c == 0:
                blocked |= 1 << j
            elif c > rem:
                return False
        for mask in masks:
            if mask & blocked:
                continue
            for j in range(n):
                if mask >> j & 1:
                    capacity[j] -= 1
            chosen.append(mask)
            stop = place(r + 1)
            chosen.pop()
            for j in range(n):
                if mask >> j & 1:
                    capacity[j] += 1
            if stop:
                return True
        return False

    place(0)
    return result


def exists(rows_m: int, cols_n: int, row_sum_a: int, col_sum_b: int) -> bool:
    """Whether any matrix with these margins exists, by exhaustive search.

    Short-circuits on the first solution.  Independent of the feasibility
    predicate: this is the check the predicate is tested against.
    """
    spec = MagicSpec(rows_m, cols_n, row_sum_a, col_sum_b)
    return enumerate_matrices(spec, collect_limit=0, stop_after=1).count > 0
