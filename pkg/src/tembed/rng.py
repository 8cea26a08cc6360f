"""Deterministic, portable random streams built on splitmix64.

Every generator in this package draws from a SplitMix64 stream derived from
an integer seed plus a tuple of tags, so the same (seed, tags) always yields
the same sequence regardless of platform or Python hash randomization.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


class SplitMix64:
    """splitmix64 stream; uniform u64, floats in [0, 1), ranges, shuffles."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def random(self) -> float:
        # 53 high bits -> [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection; n >= 1."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def substream(seed: int, *tags: int | str) -> SplitMix64:
    """Derive an independent stream from a seed and a tag path.

    Tags are folded byte by byte through the splitmix64 mixer, so distinct
    tag paths give unrelated streams without relying on Python's hash().
    """
    acc = _mix(seed & _MASK)
    for tag in tags:
        if isinstance(tag, str):
            data = tag.encode("utf-8")
        else:
            data = int(tag).to_bytes(8, "little", signed=True)
        for byte in data:
            acc = _mix(acc ^ byte)
    return SplitMix64(acc)
