"""SplitMix64: a tiny seedable 64-bit generator with a fully specified state transition.

    state <- state + 0x9E3779B97F4A7C15             (mod 2**64)
    z     <- state
    z     <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (mod 2**64)
    z     <- (z ^ (z >> 27)) * 0x94D049BB133111EB   (mod 2**64)
    out   <- z ^ (z >> 31)

``below(m)`` rejects draws at or above the largest multiple of m below 2**64,
then reduces mod m, so bounded draws are unbiased and reproducible anywhere.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        if m <= 0:
            raise ValueError("upper bound must be positive")
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            z = self.next_u64()
            if z < limit:
                return z % m

    def fe(self, ctx) -> int:
        """Uniform element of GF(q^n)."""
        return self.below(ctx.order)

    def nonzero_fe(self, ctx) -> int:
        return 1 + self.below(ctx.order - 1)


def as_rng(seed) -> SplitMix64:
    """Accept either an int seed or an existing generator."""
    if isinstance(seed, SplitMix64):
        return seed
    return SplitMix64(int(seed))
