"""Compiled fast path for the column generation loop.

Mirrors the pure-Python path bit for bit: same SplitMix64 seeding, same
xoshiro256** stream, same bitmask-rejection bounded draws, same partial
Fisher-Yates swaps, in the same order.  All 64-bit arithmetic stays in
uint64 (numba silently promotes mixed int64/uint64 expressions to float64,
which would corrupt the stream).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import BinaryMatrix, MagicSpec, _words_per_row

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_FIVE = np.uint64(5)
_NINE = np.uint64(9)
_ONE = np.uint64(1)


@njit(cache=True, nogil=True, inline="always")
def _rotl(x, k):
    return (x << k) | (x >> (np.uint64(64) - k))


@njit(cache=True, nogil=True, inline="always")
def _splitmix(state):
    state = state + _GAMMA
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return state, z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True)
def _fill(words, sums, pool, m, n, a, b, seed):
    st = seed
    st, s0 = _splitmix(st)
    st, s1 = _splitmix(st)
    st, s2 = _splitmix(st)
    st, s3 = _splitmix(st)

    for t in range(n):
        low = a + t - n
        word_idx = t >> 6
        bit = _ONE << np.uint64(t & 63)
        npool = 0
        forced = 0
        for i in range(m):
            si = sums[i]
            if si == low:
                words[i, word_idx] |= bit
                sums[i] = si + 1
                forced += 1
            elif si < a:
                pool[npool] = i
                npool += 1
        need = b - forced
        for j in range(need):
            span = npool - j
            mask = np.uint64(span - 1)
            mask |= mask >> np.uint64(1)
            mask |= mask >> np.uint64(2)
            mask |= mask >> np.uint64(4)
            mask |= mask >> np.uint64(8)
            mask |= mask >> np.uint64(16)
            mask |= mask >> np.uint64(32)
            uspan = np.uint64(span)
            while True:
                out = _rotl(s1 * _FIVE, np.uint64(7)) * _NINE
                tshift = s1 << np.uint64(17)
                s2 ^= s0
                s3 ^= s1
                s1 ^= s2
                s0 ^= s3
                s2 ^= tshift
                s3 = _rotl(s3, np.uint64(45))
                r = out & mask
                if r < uspan:
                    break
            idx = j + np.int64(r)
            row = pool[idx]
            pool[idx] = pool[j]
            pool[j] = row
            words[row, word_idx] |= bit
            sums[row] += 1


def generate_fast(spec: MagicSpec, seed: int) -> BinaryMatrix:
    m, n = spec.rows_m, spec.cols_n
    words = np.zeros((m, _words_per_row(n)), dtype=np.uint64)
    sums = np.zeros(m, dtype=np.int64)
    pool = np.empty(m, dtype=np.int64)
    _fill(words, sums, pool, m, n, spec.row_sum_a, spec.col_sum_b, np.uint64(seed))
    return BinaryMatrix(m, n, words)


def warm_up() -> None:
    """Trigger JIT compilation (cached on disk after the first build)."""
    generate_fast(MagicSpec.square(4, 2), 0)
