"""Deterministic random streams.

The generator is xoshiro256** (Blackman & Vigna), seeded through SplitMix64
expansion of a single 64-bit seed, exactly as the reference C implementation
recommends.  Everything here is plain Python integer arithmetic masked to 64
bits, so identical seeds give identical streams on every platform and build.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MUL2 = 0x94D049BB133111EB


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state by one step; return (new_state, output)."""
    state = (state + _SPLITMIX_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _SPLITMIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _SPLITMIX_MUL2) & MASK64
    return state, z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Per-matrix seed for batch generation: one SplitMix64 step of master_seed + index."""
    _, out = splitmix64((master_seed + index) & MASK64)
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class RngStream:
    """A seeded xoshiro256** stream.

    The four state words are filled with successive SplitMix64 outputs of the
    seed, which keeps the state away from all-zeros for any seed value.
    """

    __slots__ = ("seed", "_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int) -> None:
        self.seed = seed & MASK64
        st = self.seed
        st, self._s0 = splitmix64(st)
        st, self._s1 = splitmix64(st)
        st, self._s2 = splitmix64(st)
        st, self._s3 = splitmix64(st)

    def next64(self) -> int:
        """Next 64-bit word of the stream."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def bounded(self, bound: int) -> int:
        """Uniform integer in [0, bound), by bitmask rejection.

        Consumes at least one stream word; the expected number of draws is
        below two for every bound.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        mask = (1 << (bound - 1).bit_length()) - 1
        while True:
            r = self.next64() & mask
            if r < bound:
                return r
