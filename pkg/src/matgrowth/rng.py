"""Pinned pseudorandom generator: xoshiro256++ seeded by splitmix64.

Trial ``t`` of a run with seed ``s`` uses the xoshiro256++ stream seeded from
``s`` advanced by ``t`` jumps of 2**128 outputs, so streams never overlap and
do not depend on how trials are scheduled.

Letters are drawn 64 at a time: letter ``j`` is bit ``j % 64`` (least
significant first) of output ``j // 64``; bit 0 is ``A`` and bit 1 is ``B``.
This module is the pure-Python reference; the kernels reproduce it exactly.
"""
from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "xoshiro256++/splitmix64-seed/jump-per-trial"

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
JUMP = (0x180EC6D33CFD0ABA, 0xD5A61266F0C9392C, 0xA9582618E03FC9AA, 0x39ABDC4529B1661C)


def splitmix64(state: int):
    """One splitmix64 step. Returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256pp:
    def __init__(self, state):
        self.s = [int(x) & MASK64 for x in state]
        if not any(self.s):
            raise ValueError("xoshiro256++ state must not be all zero")

    @classmethod
    def from_seed(cls, seed: int) -> "Xoshiro256pp":
        sm = int(seed) & MASK64
        words = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            words.append(out)
        return cls(words)

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[0] + s[3]) & MASK64, 23) + s[0]) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def jump(self) -> None:
        acc = [0, 0, 0, 0]
        for word in JUMP:
            for b in range(64):
                if word & (1 << b):
                    for i in range(4):
                        acc[i] ^= self.s[i]
                self.next()
        self.s = acc

    def copy(self) -> "Xoshiro256pp":
        return Xoshiro256pp(list(self.s))


def trial_states(seed: int, trials: int) -> np.ndarray:
    """Initial xoshiro states, shape ``(trials, 4)`` uint64, one row per trial."""
    gen = Xoshiro256pp.from_seed(seed)
    out = np.empty((trials, 4), dtype=np.uint64)
    for t in range(trials):
        out[t] = gen.s
        gen.jump()
    return out


def reference_letters(state, n: int) -> np.ndarray:
    """Slow reference letter stream (0 = A, 1 = B) for a single trial state."""
    gen = Xoshiro256pp(state)
    letters = np.empty(n, dtype=np.uint8)
    for j in range(n):
        if j % 64 == 0:
            word = gen.next()
        letters[j] = (word >> (j % 64)) & 1
    return letters
