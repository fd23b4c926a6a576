"""Portable pseudorandom generator for reproducible fixtures.

A 64-bit linear congruential generator (Knuth's MMIX constants:
multiplier 6364136223846793005, increment 1442695040888963407) whose top 53
bits drive uniforms in (0, 1); normals come from the cosine branch of the
Box-Muller transform. Never swap in a platform default generator: golden
files depend on this exact stream.
"""

from __future__ import annotations

import math

__all__ = ["Lcg64"]

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def uniform(self) -> float:
        """Uniform in the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def normal(self) -> float:
        """Standard normal via Box-Muller (cosine branch)."""
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
