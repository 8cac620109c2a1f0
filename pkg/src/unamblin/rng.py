"""Portable 64-bit linear congruential generator for reproducible sweeps.

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

(Knuth's MMIX constants).  The initial state is ``seed mod 2**64``; each draw
advances the state once and uses its high 32 bits.  ``randint(lo, hi)``
returns ``lo + (high32 % (hi - lo + 1))``; the slight modulo bias is accepted
in exchange for a stream that any language can reproduce bit for bit.
"""

from __future__ import annotations

_MULTIPLIER = 6364136223846793005
_INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u32(self) -> int:
        self.state = (_MULTIPLIER * self.state + _INCREMENT) & _MASK
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` (inclusive)."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u32() % (hi - lo + 1)

    def sample_positions(self, k: int, n: int) -> list[int]:
        """``k`` distinct positions from ``0..n-1``, drawn one at a time in order."""
        chosen: list[int] = []
        for _ in range(k):
            x = self.randint(0, n - 1 - len(chosen))
            for c in sorted(chosen):
                if x >= c:
                    x += 1
            chosen.append(x)
        return chosen
