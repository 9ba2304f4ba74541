"""Measurement harness: scaling of single-matrix generation and batch throughput.

Wall-clock monotonic timing, median over the requested repetitions, with one
warm-up repetition discarded (the first call also pays JIT compilation).
The scaling exponent is the least-squares slope of log(median time) against
log(n); generation cost should scale like the number of matrix entries, so
the expected slope for dense margins is about 2.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import MagicSpec
from .generator import BatchConfig, generate, generate_batch
from .rng import derive_seed


@dataclass(frozen=True)
class ScalingEntry:
    n: int
    k: int
    median_seconds: float
    matrices_per_second: float


@dataclass(frozen=True)
class ScalingReport:
    entries: list[ScalingEntry]
    exponent: Optional[float]

    def csv_lines(self) -> list[str]:
        lines = ["n,k,median_seconds,matrices_per_second"]
        for e in self.entries:
            lines.append(f"{e.n},{e.k},{e.median_seconds:.9g},{e.matrices_per_second:.9g}")
        return lines

    def to_json_obj(self) -> dict:
        return {
            "entries": [{"n": e.n, "k": e.k, "median_seconds": e.median_seconds,
                         "matrices_per_second": e.matrices_per_second}
                        for e in self.entries],
            "exponent": self.exponent,
        }


def measure_scaling(sizes: list[int], k_policy: float = 0.5, reps: int = 5,
                    master_seed: int = 2024) -> ScalingReport:
    """Median generation time per size, k = floor(n * k_policy).

    Duplicate sizes collapse to one entry; the exponent is reported only
    when at least two distinct sizes are present.
    """
    if not sizes:
        raise ValueError("need at least one size")
    if any(n < 1 for n in sizes):
        raise ValueError("sizes must be positive")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if not 0.0 <= k_policy <= 1.0:
        raise ValueError("k_policy must be a fraction of n in [0, 1]")

    entries = []
    for n in sorted(set(sizes)):
        k = min(n, int(n * k_policy))
        spec = MagicSpec.square(n, k)
        generate(spec, derive_seed(master_seed, 0))  # warm-up, discarded
        times = []
        for r in range(reps):
            seed = derive_seed(master_seed, r + 1)
            t0 = time.perf_counter()
            generate(spec, seed)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        entries.append(ScalingEntry(n, k, med, 1.0 / med if med > 0 else float("inf")))

    exponent = None
    if len(entries) >= 2:
        logs_n = np.log([e.n for e in entries])
        logs_t = np.log([max(e.median_seconds, 1e-12) for e in entries])
        exponent = float(np.polyfit(logs_n, logs_t, 1)[0])
    return ScalingReport(entries, exponent)


def measure_batch_speedup(spec: MagicSpec, count: int, worker_list: list[int],
                          master_seed: int = 0, reps: int = 3) -> list[tuple[int, float]]:
    """Batch throughput (matrices/second) per worker count.

    Before any timing, the batch output is verified bit-identical across all
    requested worker counts.
    """
    if not worker_list:
        raise ValueError("need at least one worker count")
    if any(w < 1 for w in worker_list):
        raise ValueError("worker counts must be positive")
    if count < max(worker_list):
        raise ValueError(f"count={count} must be at least the largest worker count")

    baseline = generate_batch(spec, BatchConfig(count, master_seed, worker_list[0]))
    for w in worker_list[1:]:
        other = generate_batch(spec, BatchConfig(count, master_seed, w))
        if other != baseline:
            raise AssertionError(f"batch output differs between workers={worker_list[0]} "
                                 f"and workers={w}")

    results = []
    for w in worker_list:
        config = BatchConfig(count, master_seed, w)
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            generate_batch(spec, config)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        results.append((w, count / med if med > 0 else float("inf")))
    return results
