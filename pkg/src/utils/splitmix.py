"""
SplitMix64 generator used by every random instance in the project.

State transition: state <- state + 0x9E3779B97F4A7C15 (mod 2^64); the output is the
state mixed by z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
z *= 0x94D049BB133111EB; z ^= z >> 31. Uniform doubles take the top 53 bits.
The sequence is fully specified by these constants, so campaigns replay identically
on any platform or language.
"""
import math
from typing import List

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Seed of the index-th independent stream under a campaign seed."""
    return mix64((seed & MASK64) ^ mix64((index + 1) * GAMMA))


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        unit = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return low + (high - low) * unit

    def randint(self, low: int, high: int) -> int:
        """Integer in [low, high], both ends included."""
        span = high - low + 1
        if span <= 0:
            raise ValueError(f"empty integer range [{low}, {high}]")
        return low + self.next_u64() % span

    def choice(self, items):
        return items[self.randint(0, len(items) - 1)]

    def normal(self) -> float:
        # Box-Muller; 1 - u keeps the log argument in (0, 1]
        u1, u2 = self.uniform(), self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def uniform_array(self, size: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        return np.array([self.uniform(low, high) for _ in range(size)], dtype=np.float64)

    def normal_array(self, shape) -> np.ndarray:
        count = int(np.prod(shape))
        return np.array([self.normal() for _ in range(count)], dtype=np.float64).reshape(shape)

    def permutation(self, n: int) -> List[int]:
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items

    def orthogonal(self, dim: int, passes: int = 2) -> np.ndarray:
        """Product of Givens rotations over every coordinate plane, `passes` times over."""
        Q = np.eye(dim)
        for _ in range(passes):
            for p in range(dim - 1):
                for q in range(p + 1, dim):
                    angle = self.uniform(0.0, 2.0 * math.pi)
                    c, s = math.cos(angle), math.sin(angle)
                    row_p, row_q = Q[p, :].copy(), Q[q, :].copy()
                    Q[p, :] = c * row_p - s * row_q
                    Q[q, :] = s * row_p + c * row_q
        return Q
