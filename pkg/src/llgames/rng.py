"""Small deterministic RNG: splitmix64 stream with Box-Muller normals.

Experiment rows must be reproducible across platforms and Python versions,
so per-row seeds are derived with a stable mixing function rather than
Python's builtin hash.
"""
from __future__ import annotations

import math

MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, z ^ (z >> 31)


def mix_seed(*parts) -> int:
    """Stable 64-bit hash of ints/floats/strings, for derived seeds."""
    acc = 0x6C62272E07BB0142
    for part in parts:
        if isinstance(part, str):
            data = part.encode("utf-8")
        elif isinstance(part, float):
            data = repr(part).encode("ascii")
        else:
            data = int(part).to_bytes(8, "little", signed=True)
        for byte in data:
            acc = ((acc ^ byte) * 0x100000001B3) & MASK
        _, acc = _splitmix64(acc)
    return acc


class Rng:
    """Seedable 64-bit generator (splitmix64) with Box-Muller normals."""

    def __init__(self, seed: int):
        self._state = seed & MASK
        self._spare: float | None = None

    def next_u64(self) -> int:
        self._state, out = _splitmix64(self._state)
        return out

    def uniform(self) -> float:
        """Uniform in (0, 1), never exactly 0."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53)) or 2.0 ** -53

    def normal(self) -> float:
        """Standard normal via the Box-Muller transform."""
        if self._spare is not None:
            out, self._spare = self._spare, None
            return out
        u1 = self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare = radius * math.sin(theta)
        return radius * math.cos(theta)
