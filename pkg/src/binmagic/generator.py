"""Randomized column-by-column generation.

The matrix is filled one column at a time while the running row sums are kept
inside a sliding window: after t columns every row sum s_i must satisfy
a + t - n <= s_i <= a (a = target row sum, n = column count).  Ahead of each
column the rows split into three groups:

  forced     s_i == a + t - n   must receive a one or the row can no longer
                                reach a within the remaining columns
  candidates in between         free to receive a one
  saturated  s_i == a           must not receive another one

Each column sets the forced rows plus a uniform random subset of the
candidates so that exactly b ones land in it.  The window argument shows the
forced set never exceeds b and enough candidates remain, so every column gets
exactly b ones and every row finishes at a.

Two execution paths produce bit-identical output for the same (spec, seed):
a pure-Python path with optional per-step invariant checks (instrumented
mode), and a compiled fast path used by default when numba is importable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .core import BinaryMatrix, FeasibilityError, MagicSpec, feasible_pairs
from .rng import MASK64, RngStream, derive_seed

try:
    from . import _kernel
except ImportError:  # pragma: no cover - numba is a declared dependency
    _kernel = None

HAVE_KERNEL = _kernel is not None

# Number of instrumented invariant checks performed since import; lets tests
# confirm instrumentation actually ran.  Not thread-safe; instrumented mode
# is a verification tool, not a production path.
instrumented_checks = 0


class GenerationInvariantError(AssertionError):
    """A per-step invariant of the generation loop failed.

    Reaching this signals a corrupted state or a broken feasibility
    precondition, never a legitimate runtime condition.
    """


@dataclass
class GenState:
    """Mutable progress of one generation run: current column and running row sums."""

    spec: MagicSpec
    col: int = 0
    sums: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.sums:
            self.sums = [0] * self.spec.rows_m

    @classmethod
    def fresh(cls, spec: MagicSpec) -> "GenState":
        return cls(spec)

    def lower_bound(self) -> int:
        """Smallest row sum still able to reach row_sum_a in the remaining columns."""
        return self.spec.row_sum_a + self.col - self.spec.cols_n


@dataclass(frozen=True)
class Partition:
    """Row indices split by running sum, each tuple ascending."""

    forced: tuple[int, ...]
    candidates: tuple[int, ...]
    saturated: tuple[int, ...]


def partition_rows(state: GenState) -> Partition:
    """Split rows into forced / candidates / saturated for the current column."""
    spec = state.spec
    if not 0 <= state.col < spec.cols_n:
        raise GenerationInvariantError(
            f"column index {state.col} outside [0, {spec.cols_n})")
    low = state.lower_bound()
    a = spec.row_sum_a
    forced: list[int] = []
    candidates: list[int] = []
    saturated: list[int] = []
    for i, si in enumerate(state.sums):
        if si == low:
            forced.append(i)
        elif si == a:
            saturated.append(i)
        elif low < si < a:
            candidates.append(i)
        else:
            raise GenerationInvariantError(
                f"row {i} sum {si} outside window [{low}, {a}] at column {state.col}")
    return Partition(tuple(forced), tuple(candidates), tuple(saturated))


def random_subset(pool, count: int, rng: RngStream) -> list[int]:
    """`count` distinct elements of `pool`, uniform over count-subsets.

    Partial Fisher-Yates over the (ascending) pool, one bounded rejection
    draw per swap.  The result is returned sorted; a count outside
    [0, len(pool)] means a feasibility precondition was broken upstream.
    """
    items = list(pool)
    if not 0 <= count <= len(items):
        raise GenerationInvariantError(
            f"cannot draw {count} elements from a pool of {len(items)}")
    for j in range(count):
        r = rng.bounded(len(items) - j)
        items[j], items[j + r] = items[j + r], items[j]
    return sorted(items[:count])


def step_column(state: GenState, matrix: BinaryMatrix, rng: RngStream, *,
                instrumented: bool = False) -> None:
    """Write one column: all forced rows plus a random fill from the candidates.

    Mutates `state` and `matrix` in place and advances state.col.  Exactly
    col_sum_b bits are set; with instrumented=True the window bounds and the
    partition size bounds are asserted before and after the step.
    """
    spec = state.spec
    m, n = spec.rows_m, spec.cols_n
    a, b = spec.row_sum_a, spec.col_sum_b
    if state.col >= n:
        raise GenerationInvariantError("all columns already written")
    part = partition_rows(state)
    if instrumented:
        _check_window(state)
        _check_partition(state, part)
    chosen = random_subset(part.candidates, b - len(part.forced), rng)
    selected = list(part.forced) + chosen
    if len(selected) != b:
        raise GenerationInvariantError(
            f"column {state.col} selected {len(selected)} rows, expected {b}")
    t = state.col
    for i in selected:
        matrix._set(i, t)
        state.sums[i] += 1
    state.col += 1
    if instrumented:
        _check_window(state)


def _check_window(state: GenState) -> None:
    global instrumented_checks
    instrumented_checks += 1
    low = state.lower_bound()
    a = state.spec.row_sum_a
    for i, si in enumerate(state.sums):
        if not low <= si <= a:
            raise GenerationInvariantError(
                f"row {i} sum {si} outside window [{low}, {a}] after {state.col} columns")


def _check_partition(state: GenState, part: Partition) -> None:
    """Size bounds on the partition ahead of a column selection.

    |forced| <= b and |saturated| <= m - b always; both strict once at least
    one column is written, 0 < b < m, and the candidate set is non-empty (an
    empty candidate set allows equality, e.g. the last column of a
    permutation-matrix run).
    """
    global instrumented_checks
    instrumented_checks += 1
    m = state.spec.rows_m
    b = state.spec.col_sum_b
    strict = state.col > 0 and 0 < b < m and len(part.candidates) > 0
    nf, ns = len(part.forced), len(part.saturated)
    if nf > b or (strict and nf >= b):
        raise GenerationInvariantError(
            f"forced set has {nf} rows at column {state.col}, bound is {b}")
    if ns > m - b or (strict and ns >= m - b):
        raise GenerationInvariantError(
            f"saturated set has {ns} rows at column {state.col}, bound is {m - b}")
    if nf + len(part.candidates) + ns != m:
        raise GenerationInvariantError("partition does not cover all rows")


def _require_feasible(spec: MagicSpec) -> None:
    if not spec.is_feasible():
        raise FeasibilityError(spec.rows_m, spec.cols_n, spec.row_sum_a, spec.col_sum_b,
                               feasible_pairs(spec.rows_m, spec.cols_n))


def _generate_pure(spec: MagicSpec, rng: RngStream, instrumented: bool) -> BinaryMatrix:
    matrix = BinaryMatrix.zeros(spec.rows_m, spec.cols_n)
    state = GenState.fresh(spec)
    for _ in range(spec.cols_n):
        step_column(state, matrix, rng, instrumented=instrumented)
    if instrumented and any(si != spec.row_sum_a for si in state.sums):
        raise GenerationInvariantError("final row sums differ from row_sum_a")
    return matrix.freeze()


def generate(spec: MagicSpec, seed: int, *, instrumented: bool = False) -> BinaryMatrix:
    """One matrix with the spec's margins; a pure function of (spec, seed).

    instrumented=True forces the checked pure-Python path; otherwise the
    compiled kernel is used when available.  Both paths consume the random
    stream identically, so the output does not depend on the path taken.
    """
    _require_feasible(spec)
    if instrumented or not HAVE_KERNEL:
        return _generate_pure(spec, RngStream(seed), instrumented)
    return _kernel.generate_fast(spec, seed & MASK64)


@dataclass(frozen=True)
class BatchConfig:
    """Batch parameters; workers=0 means one worker per available CPU."""

    count: int
    master_seed: int
    workers: int = 0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"count must be non-negative, got {self.count}")
        if self.workers < 0:
            raise ValueError(f"workers must be non-negative, got {self.workers}")


def generate_batch(spec: MagicSpec, config: BatchConfig) -> list[BinaryMatrix]:
    """config.count independent matrices, matrix i seeded with derive_seed(master_seed, i).

    The output list is the same for every worker count; workers only change
    how the independent generations are scheduled.
    """
    _require_feasible(spec)
    seeds = [derive_seed(config.master_seed, i) for i in range(config.count)]
    workers = config.workers or os.cpu_count() or 1
    workers = max(1, min(workers, config.count))
    if workers == 1:
        return [generate(spec, s) for s in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: generate(spec, s), seeds))
