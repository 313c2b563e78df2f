"""Pure-numpy kernels mirroring ``_kernels_numba``.

Exhaustive scans work block-wise: a block is every word sharing a fixed prefix,
evaluated as ``prefix @ suffixes`` with the suffix products built once. Integer
arrays may be ``int64`` or ``object`` (arbitrary precision).

The random product is reduced as a balanced tree of pairwise products, each
renormalized, instead of strictly left to right. The log-norm sum is the same
quantity; rounding differs from the sequential kernel in the last digits.
"""
import numpy as np

NORM_L1 = 0
NORM_MAXABS = 1
STAT_MAXABS = 0
STAT_L1 = 1

BLOCK_BITS = 15


def _rmul(X, M):
    """Row-wise ``X[i] @ M`` for flat matrices."""
    return np.stack(
        [
            X[:, 0] * M[0] + X[:, 1] * M[2],
            X[:, 0] * M[1] + X[:, 1] * M[3],
            X[:, 2] * M[0] + X[:, 3] * M[2],
            X[:, 2] * M[1] + X[:, 3] * M[3],
        ],
        axis=1,
    )


def _lmul(M, X):
    return np.stack(
        [
            M[0] * X[:, 0] + M[1] * X[:, 2],
            M[0] * X[:, 1] + M[1] * X[:, 3],
            M[2] * X[:, 0] + M[3] * X[:, 2],
            M[2] * X[:, 1] + M[3] * X[:, 3],
        ],
        axis=1,
    )


def _pairmul(X, Y):
    return np.stack(
        [
            X[:, 0] * Y[:, 0] + X[:, 1] * Y[:, 2],
            X[:, 0] * Y[:, 1] + X[:, 1] * Y[:, 3],
            X[:, 2] * Y[:, 0] + X[:, 3] * Y[:, 2],
            X[:, 2] * Y[:, 1] + X[:, 3] * Y[:, 3],
        ],
        axis=1,
    )


def _identity(dtype):
    return np.array([1, 0, 0, 1], dtype=dtype)


def all_products(A, B, n):
    """Products of all ``2**n`` words of length ``n`` in index order."""
    S = _identity(A.dtype)[None, :]
    for _ in range(n):
        nxt = np.empty((2 * len(S), 4), dtype=A.dtype)
        nxt[0::2] = _rmul(S, A)
        nxt[1::2] = _rmul(S, B)
        S = nxt
    return S


def _word_product(A, B, index, length):
    P = _identity(A.dtype)
    for j in range(length - 1, -1, -1):
        M = B if (index >> j) & 1 else A
        P = _rmul(P[None, :], M)[0]
    return P


def _blocks(A, B, n):
    h = min(n, BLOCK_BITS)
    S = all_products(A, B, h)
    ones = np.bitwise_count(np.arange(1 << h, dtype=np.uint64)).astype(np.int64)
    for p in range(1 << (n - h)):
        prefix = _word_product(A, B, p, n - h)
        yield p << h, _lmul(prefix, S), ones + int(p).bit_count()


def _int_stat(X, stat):
    X = np.abs(X)
    return X.max(axis=1) if stat == STAT_MAXABS else X.sum(axis=1)


def int_stat_scan(A, B, n, stat, target, collect, limit):
    best = None
    hits = []
    count = 0
    for base, X, _ in _blocks(A, B, n):
        v = _int_stat(X, stat)
        if collect:
            idx = np.flatnonzero(v == target)
            count += len(idx)
            room = limit - sum(len(h) for h in hits)
            if room > 0:
                hits.append(idx[:room] + base)
        else:
            m = v.max()
            if best is None or m > best:
                best = m
    out = np.concatenate(hits).astype(np.int64) if hits else np.empty(0, dtype=np.int64)
    return best, out, count


def _rho(X, ones, n, detA, detB):
    t = (X[:, 0] + X[:, 3]).astype(np.float64)
    det = np.power(float(detA), (n - ones).astype(np.float64)) * np.power(
        float(detB), ones.astype(np.float64)
    )
    disc = t * t - 4.0 * det
    real = disc >= 0
    return np.where(
        real,
        (np.abs(t) + np.sqrt(np.where(real, disc, 0.0))) / 2.0,
        np.sqrt(np.where(real, 1.0, det)),
    )


def rho_scan(A, B, n, detA, detB, threshold, collect, limit):
    best = -1.0
    hits = []
    count = 0
    for base, X, ones in _blocks(A, B, n):
        r = _rho(X, ones, n, detA, detB)
        if collect:
            idx = np.flatnonzero(r >= threshold)
            count += len(idx)
            room = limit - sum(len(h) for h in hits)
            if room > 0:
                hits.append(idx[:room] + base)
        else:
            best = max(best, float(r.max()))
    out = np.concatenate(hits).astype(np.int64) if hits else np.empty(0, dtype=np.int64)
    return best, out, count


# ------------------------------------------------------------------ lyapunov


def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


def letter_stream(states, n):
    s0, s1, s2, s3 = (states[:, i].copy() for i in range(4))
    nwords = -(-n // 64)
    words = np.empty((states.shape[0], nwords), dtype="<u8")
    for w in range(nwords):
        words[:, w] = _rotl(s0 + s3, 23) + s0
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(bits[:, :n])


def _norms(X, kind):
    X = np.abs(X)
    return X.sum(axis=1) if kind == NORM_L1 else X.max(axis=1)


def log_norm_sum(letters, A, B, kind):
    if len(letters) == 0:
        return 0.0
    M = np.where(letters.astype(bool)[:, None], B[None, :], A[None, :]).astype(np.float64)
    acc = 0.0
    while True:
        c = _norms(M, kind)
        if not np.all(c > 0) or not np.all(np.isfinite(c)):
            return np.nan
        acc += float(np.log(c).sum())
        M = M / c[:, None]
        if len(M) == 1:
            return acc
        carry = M[-1:] if len(M) % 2 else None
        M = _pairmul(M[0:len(M) - 1:2] if carry is not None else M[0::2], M[1::2])
        if carry is not None:
            M = np.concatenate([M, carry])


def lyapunov_sums(states, n, A, B, kind):
    letters = letter_stream(states, n)
    return np.array([log_norm_sum(row, A, B, kind) for row in letters])
