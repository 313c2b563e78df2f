"""Numba kernels. Same signatures and results as ``_kernels_numpy``.

Matrices are flat length-4 arrays ``[a, b, c, d]``. Word ``i`` of length ``n``
has letter ``j`` equal to bit ``n - 1 - j`` of ``i`` (0 = A, 1 = B), so index
order is lexicographic order.
"""
import numpy as np

from . import _accel  # noqa: F401  (sets the threading layer before numba loads)
from numba import njit, prange

NORM_L1 = 0
NORM_MAXABS = 1
STAT_MAXABS = 0
STAT_L1 = 1


# suffix table size; 2**12 products of 4 int64 entries stay in L2 cache
SUFFIX_BITS = 12


@njit(cache=True)
def _suffix_table(A, B, h):
    """Products of all ``2**h`` words of length ``h`` in index order, and their B-counts."""
    S = np.empty((1 << h, 4), dtype=A.dtype)
    ones = np.zeros(1 << h, dtype=np.int64)
    S[0, 0] = 1
    S[0, 1] = 0
    S[0, 2] = 0
    S[0, 3] = 1
    size = 1
    for _ in range(h):
        # in place from the top so that row i is read before rows 2i, 2i+1 are written
        for i in range(size - 1, -1, -1):
            a, b, c, d = S[i, 0], S[i, 1], S[i, 2], S[i, 3]
            k = ones[i]
            S[2 * i, 0] = a * A[0] + b * A[2]
            S[2 * i, 1] = a * A[1] + b * A[3]
            S[2 * i, 2] = c * A[0] + d * A[2]
            S[2 * i, 3] = c * A[1] + d * A[3]
            S[2 * i + 1, 0] = a * B[0] + b * B[2]
            S[2 * i + 1, 1] = a * B[1] + b * B[3]
            S[2 * i + 1, 2] = c * B[0] + d * B[2]
            S[2 * i + 1, 3] = c * B[1] + d * B[3]
            ones[2 * i] = k
            ones[2 * i + 1] = k + 1
        size *= 2
    return S, ones


@njit(cache=True)
def _prefix(A, B, p, length):
    a, b, c, d = A.dtype.type(1), A.dtype.type(0), A.dtype.type(0), A.dtype.type(1)
    for j in range(length - 1, -1, -1):
        M = B if (p >> j) & 1 else A
        a, b, c, d = (a * M[0] + b * M[2], a * M[1] + b * M[3],
                      c * M[0] + d * M[2], c * M[1] + d * M[3])
    return a, b, c, d


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        c += x & 1
        x >>= 1
    return c


@njit(cache=True, inline="always")
def _stat(a, b, c, d, stat):
    if stat == STAT_MAXABS:
        return max(max(abs(a), abs(b)), max(abs(c), abs(d)))
    return abs(a) + abs(b) + abs(c) + abs(d)


@njit(cache=True, inline="always")
def _rho2(t, det):
    disc = t * t - 4.0 * det
    if disc >= 0:
        return (abs(t) + np.sqrt(disc)) / 2.0
    return np.sqrt(det)


@njit(cache=True, parallel=True)
def int_stat_scan(A, B, n, stat, target, collect, limit):
    """Max of an integer statistic over all words of length ``n``.

    With ``collect`` set, instead return indices of words whose statistic
    equals ``target`` (the first ``limit`` in index order) and their total count.
    Prefixes are scanned in parallel against a shared table of suffix products.
    """
    h = min(n, SUFFIX_BITS)
    S, _ = _suffix_table(A, B, h)
    npre = 1 << (n - h)
    nsuf = 1 << h
    counts = np.zeros(npre, dtype=np.int64)
    bests = np.empty(npre, dtype=A.dtype)
    for p in prange(npre):
        pa, pb, pc, pd = _prefix(A, B, p, n - h)
        best = A.dtype.type(-1)
        cnt = 0
        for j in range(nsuf):
            v = _stat(pa * S[j, 0] + pb * S[j, 2], pa * S[j, 1] + pb * S[j, 3],
                      pc * S[j, 0] + pd * S[j, 2], pc * S[j, 1] + pd * S[j, 3], stat)
            if collect:
                if v == target:
                    cnt += 1
            elif v > best:
                best = v
        bests[p] = best
        counts[p] = cnt
    total = counts.sum()
    hits = np.empty(min(limit, total) if collect else 0, dtype=np.int64)
    if collect and len(hits):
        offsets = np.cumsum(counts) - counts
        for p in prange(npre):
            k = offsets[p]
            if counts[p] == 0 or k >= limit:
                continue
            pa, pb, pc, pd = _prefix(A, B, p, n - h)
            for j in range(nsuf):
                v = _stat(pa * S[j, 0] + pb * S[j, 2], pa * S[j, 1] + pb * S[j, 3],
                          pc * S[j, 0] + pd * S[j, 2], pc * S[j, 1] + pd * S[j, 3], stat)
                if v == target:
                    if k >= limit:
                        break
                    hits[k] = (np.int64(p) << h) + j
                    k += 1
    return bests.max(), hits, total


@njit(cache=True, parallel=True)
def rho_scan(A, B, n, detA, detB, threshold, collect, limit):
    """Max spectral radius over words of length ``n`` (or hits >= threshold)."""
    h = min(n, SUFFIX_BITS)
    S, ones = _suffix_table(A, B, h)
    powA = np.empty(n + 1)
    powB = np.empty(n + 1)
    powA[0] = 1.0
    powB[0] = 1.0
    for k in range(n):
        powA[k + 1] = powA[k] * detA
        powB[k + 1] = powB[k] * detB
    npre = 1 << (n - h)
    nsuf = 1 << h
    counts = np.zeros(npre, dtype=np.int64)
    bests = np.empty(npre)
    for p in prange(npre):
        pa, pb, pc, pd = _prefix(A, B, p, n - h)
        po = _popcount(p)
        best = -1.0
        cnt = 0
        for j in range(nsuf):
            t = float(pa * S[j, 0] + pb * S[j, 2] + pc * S[j, 1] + pd * S[j, 3])
            nb = po + ones[j]
            r = _rho2(t, powA[n - nb] * powB[nb])
            if collect:
                if r >= threshold:
                    cnt += 1
            elif r > best:
                best = r
        bests[p] = best
        counts[p] = cnt
    total = counts.sum()
    hits = np.empty(min(limit, total) if collect else 0, dtype=np.int64)
    if collect and len(hits):
        offsets = np.cumsum(counts) - counts
        for p in prange(npre):
            k = offsets[p]
            if counts[p] == 0 or k >= limit:
                continue
            pa, pb, pc, pd = _prefix(A, B, p, n - h)
            po = _popcount(p)
            for j in range(nsuf):
                t = float(pa * S[j, 0] + pb * S[j, 2] + pc * S[j, 1] + pd * S[j, 3])
                nb = po + ones[j]
                if _rho2(t, powA[n - nb] * powB[nb]) >= threshold:
                    if k >= limit:
                        break
                    hits[k] = (np.int64(p) << h) + j
                    k += 1
    return bests.max(), hits, total


# ------------------------------------------------------------------ lyapunov


@njit(cache=True, inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(cache=True)
def _norm(p0, p1, p2, p3, kind):
    if kind == NORM_L1:
        return abs(p0) + abs(p1) + abs(p2) + abs(p3)
    return max(max(abs(p0), abs(p1)), max(abs(p2), abs(p3)))


@njit(cache=True)
def letter_stream(states, n):
    trials = states.shape[0]
    out = np.empty((trials, n), dtype=np.uint8)
    for t in range(trials):
        s0, s1, s2, s3 = states[t, 0], states[t, 1], states[t, 2], states[t, 3]
        word = np.uint64(0)
        for j in range(n):
            if j % 64 == 0:
                word = _rotl(s0 + s3, 23) + s0
                tt = s1 << np.uint64(17)
                s2 ^= s0
                s3 ^= s1
                s1 ^= s2
                s0 ^= s3
                s2 ^= tt
                s3 = _rotl(s3, 45)
            out[t, j] = np.uint8((word >> np.uint64(j % 64)) & np.uint64(1))
    return out


@njit(cache=True)
def _step(p, M, kind):
    q0 = p[0] * M[0] + p[1] * M[2]
    q1 = p[0] * M[1] + p[1] * M[3]
    q2 = p[2] * M[0] + p[3] * M[2]
    q3 = p[2] * M[1] + p[3] * M[3]
    c = _norm(q0, q1, q2, q3, kind)
    if not (c > 0.0):
        return c
    p[0] = q0 / c
    p[1] = q1 / c
    p[2] = q2 / c
    p[3] = q3 / c
    return c


@njit(cache=True)
def log_norm_sum(letters, A, B, kind):
    """log of the norm of the product, accumulated with per-step renormalization."""
    p = np.array([1.0, 0.0, 0.0, 1.0])
    acc = 0.0
    for j in range(letters.shape[0]):
        c = _step(p, B if letters[j] else A, kind)
        if not (c > 0.0) or not np.isfinite(c):
            return np.nan
        acc += np.log(c)
    return acc


@njit(cache=True, parallel=True)
def lyapunov_sums(states, n, A, B, kind):
    """Per-trial log-norm sums of random products of ``n`` factors."""
    trials = states.shape[0]
    out = np.empty(trials)
    for t in prange(trials):
        s0, s1, s2, s3 = states[t, 0], states[t, 1], states[t, 2], states[t, 3]
        p = np.array([1.0, 0.0, 0.0, 1.0])
        acc = 0.0
        word = np.uint64(0)
        bad = False
        for j in range(n):
            if j % 64 == 0:
                word = _rotl(s0 + s3, 23) + s0
                tt = s1 << np.uint64(17)
                s2 ^= s0
                s3 ^= s1
                s1 ^= s2
                s0 ^= s3
                s2 ^= tt
                s3 = _rotl(s3, 45)
            if (word >> np.uint64(j % 64)) & np.uint64(1):
                c = _step(p, B, kind)
            else:
                c = _step(p, A, kind)
            if not (c > 0.0) or not np.isfinite(c):
                bad = True
                break
            acc += np.log(c)
        out[t] = np.nan if bad else acc
    return out
