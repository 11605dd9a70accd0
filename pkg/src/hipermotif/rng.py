"""SplitMix64: a small counter-based generator with published constants.

Output ``i`` (1-based) of a stream seeded with ``s`` is
``mix(s + i * 0x9E3779B97F4A7C15)`` in 64-bit wrapping arithmetic, so any
language can reproduce the stream bit for bit.  Floats take the top 53 bits;
bounded integers are ``floor(u * n)`` of such a float.
"""
from __future__ import annotations

import numpy as np

__all__ = ["SplitMix64"]

_MASK = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG_53 = 1.0 / (1 << 53)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Sequential stream; block draws consume the same outputs as scalar draws."""

    _BLOCK = 4096

    def __init__(self, seed: int) -> None:
        self._state = int(seed) & _MASK
        self._buf = np.empty(0, dtype=np.float64)
        self._pos = 0

    def next_u64(self, size: int) -> np.ndarray:
        if self._pos < len(self._buf):
            raise RuntimeError("mixing raw draws with buffered scalar draws")
        steps = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            out = _mix(np.uint64(self._state) + steps * _GAMMA)
        self._state = (self._state + size * int(_GAMMA)) & _MASK
        return out

    def random_array(self, size: int) -> np.ndarray:
        """``size`` floats in ``[0, 1)``."""
        head = self._buf[self._pos:self._pos + size]
        self._pos += len(head)
        if len(head) == size:
            return head.copy()
        rest = self._take(size - len(head))
        return np.concatenate([head, rest])

    def _take(self, size: int) -> np.ndarray:
        return (self.next_u64(size) >> np.uint64(11)).astype(np.float64) * _TWO_NEG_53

    def random(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._take(self._BLOCK)
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return float(x)

    def integers_array(self, high: int, size: int) -> np.ndarray:
        """``size`` integers uniform on ``0 .. high-1``."""
        return np.floor(self.random_array(size) * high).astype(np.int64)

    def integer(self, high: int) -> int:
        return int(self.random() * high)
