"""Seeded random number generation for reproducible game layouts.

Game shuffles must be reproducible across processes, language runtimes and
library versions, so randomness comes from a fixed 64-bit linear congruential
generator rather than the stdlib Mersenne twister. The exact recipe, which any
reimplementation must follow to reproduce layouts:

    stateize:   state = seed mod 2**64
    step:       state = (A * state + C) mod 2**64
    output:     31-bit value = state >> 33
    below(n):   step once, return output mod n
    shuffle:    Fisher-Yates, descending; for i = len-1 .. 1: swap(i, below(i+1))
    sample(k):  partial ascending Fisher-Yates over a copy;
                for i = 0 .. k-1: swap(i, i + below(n - i)); keep first k

with A = 6364136223846793005 and C = 1442695040888963407 (Knuth MMIX
constants). The modulo bias of `below` is irrelevant at deck sizes.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

T = TypeVar("T")

_A = 6364136223846793005
_C = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    """The fixed linear congruential generator described in the module docs."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u31(self) -> int:
        self.state = (_A * self.state + _C) & _MASK
        return self.state >> 33

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n)."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u31() % n

    def shuffled(self, items: Sequence[T]) -> list[T]:
        """Return a new list holding a seeded Fisher-Yates permutation of items."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def sample(self, items: Sequence[T], k: int) -> list[T]:
        """Return k distinct positions' worth of items, drawn without replacement."""
        n = len(items)
        if k < 0 or k > n:
            raise ValueError(f"cannot sample {k} from {n} items")
        pool = list(items)
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
