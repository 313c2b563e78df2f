"""Reduction mod p, shortest semigroup relations over Z_p, and exact relation checks.

"Girth" here is the length of the shortest pair of distinct positive words
with equal value mod p (a semigroup relation), which is what a breadth-first
search can certify.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import Mat2, eval_word, word_from_index
from .errors import DomainError, InputError, ResourceCapError

DEFAULT_DEPTH_MAX = 25
STATE_BUDGET = 1 << 26

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ModMat2:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"modulus {self.p} is not prime")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "ModMat2") -> "ModMat2":
        if o.p != self.p:
            raise InputError("moduli differ")
        return ModMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.p,
        )


def reduce_mod(M: Mat2, p: int) -> ModMat2:
    if not M.is_integral():
        raise InputError(f"matrix {M} has non-integer entries; cannot reduce mod {p}")
    return ModMat2(*(int(e) for e in M.entries()), p)


def girth_bound(p: int, s: float) -> int:
    """Word length at which entries growing like ``s**n`` can first reach ``p``."""
    if not is_prime(p):
        raise DomainError(f"modulus {p} is not prime")
    if not s > 1:
        raise DomainError(f"growth rate must exceed 1, got {s}")
    return max(1, math.ceil(math.log(p) / math.log(s)))


@dataclass
class CollisionRecord:
    depth: int
    word_u: str
    word_v: str
    p: int

    def to_dict(self):
        return {"depth": self.depth, "u": self.word_u, "v": self.word_v, "p": self.p}


def _level_products(prev, ma, mb, p):
    nxt = np.empty((2 * len(prev), 4), dtype=prev.dtype)
    for off, M in ((0, ma), (1, mb)):
        nxt[off::2, 0] = (prev[:, 0] * M[0] + prev[:, 1] * M[2]) % p
        nxt[off::2, 1] = (prev[:, 0] * M[1] + prev[:, 1] * M[3]) % p
        nxt[off::2, 2] = (prev[:, 2] * M[0] + prev[:, 3] * M[2]) % p
        nxt[off::2, 3] = (prev[:, 2] * M[1] + prev[:, 3] * M[3]) % p
    return nxt


def _keys(X, p):
    # injective; int64-safe for p < 2**15, Python ints (object arrays) above
    return ((X[:, 0] * p + X[:, 1]) * p + X[:, 2]) * p + X[:, 3]


def bfs_first_collision(A: Mat2, B: Mat2, p: int, depth_max: int = DEFAULT_DEPTH_MAX,
                        *, state_budget: int = STATE_BUDGET) -> Optional[CollisionRecord]:
    """First pair of distinct positive words with equal value mod ``p``.

    Words are explored by increasing length. The reported depth is the length of
    the longer word; among collisions at that depth the lexicographically least
    pair ``(u, v)`` with ``u < v`` is returned. None if nothing collides up to
    ``depth_max``.
    """
    ra, rb = reduce_mod(A, p), reduce_mod(B, p)
    dtype = np.int64 if p < (1 << 15) else object
    ma = np.array(ra.entries(), dtype=dtype)
    mb = np.array(rb.entries(), dtype=dtype)
    seen_keys = []
    level = np.array([[1, 0, 0, 1]], dtype=dtype)
    stored = 0
    for depth in range(1, depth_max + 1):
        size = 1 << depth
        if stored + size > state_budget:
            raise ResourceCapError(
                f"depth {depth} needs {stored + size} stored states (budget {state_budget})"
            )
        level = _level_products(level, ma, mb, p)
        keys = _keys(level, p)
        hit = _collisions_at(depth, keys, seen_keys)
        if hit is not None:
            u, v = hit
            return CollisionRecord(depth, u, v, p)
        seen_keys.append(keys)
        stored += size
    return None


def _collisions_at(depth, keys, seen_keys):
    """Lexicographically least colliding pair involving a word of length ``depth``.

    Earlier levels are collision-free, so every repeated key involves this level.
    """
    all_keys = np.concatenate(seen_keys + [keys])
    lengths = np.concatenate([np.full(len(k), i + 1) for i, k in enumerate(seen_keys)]
                             + [np.full(len(keys), depth)])
    indices = np.concatenate([np.arange(len(k)) for k in seen_keys] + [np.arange(len(keys))])
    order = np.argsort(all_keys, kind="stable")
    sk = all_keys[order]
    dup = np.flatnonzero(sk[1:] == sk[:-1])
    if len(dup) == 0:
        return None
    groups = {}
    for i in np.unique(np.concatenate([dup, dup + 1])):
        j = order[i]
        groups.setdefault(sk[i], []).append(word_from_index(int(indices[j]), int(lengths[j])))
    pairs = [tuple(sorted(words)[:2]) for words in groups.values()]
    return min(pairs)


def verify_relation(u: str, v: str, A: Mat2, B: Mat2) -> bool:
    """Exact check that ``u(A, B) == v(A, B)`` over the rationals."""
    return eval_word(u, A, B) == eval_word(v, A, B)


def freeness_sufficient(k, m) -> bool:
    """True when ``k*m >= 4``, which makes <A(k), B(m)> a free semigroup.

    False means "not certified", not "not free".
    """
    return Fraction(k) * Fraction(m) >= 4


def suffix_freeness_check(u: str, v: str) -> bool:
    """True if neither word is a suffix of the other.

    Then u and v, read as words in free semigroup generators, themselves freely
    generate a free semigroup.
    """
    if not u or not v:
        raise InputError("words must be nonempty")
    if u == v:
        raise InputError("words must be distinct")
    return not (u.endswith(v) or v.endswith(u))
