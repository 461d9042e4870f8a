"""Deterministic counter-based pseudo-random generator (splitmix64, v1).

All randomness in this package flows through :class:`Rng` so that every
command line with a fixed seed is reproducible bit-for-bit, including by
reimplementations in other languages.  The generator is the well-known
splitmix64: output i is ``mix64(seed + (i + 1) * GOLDEN)``.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class Rng:
    """splitmix64 stream addressed by an incrementing counter."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64((self.seed + self.counter * GOLDEN) & MASK64)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        return lo + self.randrange(hi - lo + 1)

    def random(self) -> float:
        # 53-bit mantissa, same construction as random.Random.random().
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def chance(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        # Fisher-Yates, descending, so the draw order is fixed.
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq, k: int) -> list:
        """k distinct elements of seq, in draw order."""
        if k > len(seq):
            raise ValueError("sample larger than population")
        pool = list(seq)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.randrange(len(pool))))
        return out


def derive_seed(seed: int, index: int) -> int:
    """Per-trial seed: seed XOR trial index (documented harness convention)."""
    return (seed ^ index) & MASK64
