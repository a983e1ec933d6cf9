"""Seeded pseudorandom generator used everywhere randomness is needed.

The generator is SplitMix64 (Steele, Lea & Flood; the finalizer used by Java 8's
``SplittableRandom``). It was chosen because it is tiny, fast, well studied, and
trivial to reimplement in any language, so a model trained here can be
reproduced bit-for-bit from the seed alone:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   (mod 2^64)
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB   (mod 2^64)
    output <- z XOR (z >> 31)

Doubles are derived from the top 53 bits: ``(output >> 11) * 2^-53``, giving a
uniform value in [0, 1). Integers in [0, n) are ``floor(u * n)``.

The Gibbs sampler consumes this stream in a fixed, documented order (see
``topikrank.lda``); the class below is the reference implementation, mirrored
exactly by the compiled kernel in ``topikrank._gibbs``.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

_INV53 = 1.0 / 9007199254740992.0  # 2^-53


class SplitMix64:
    """Reference SplitMix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self.state = seed & MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * _INV53

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        k = int(self.next_double() * n)
        return n - 1 if k >= n else k
