"""numba-compiled kernels; same contracts as :mod:`._numpy`."""
import numpy as np
from numba import njit


@njit(cache=True)
def subset_sum(weights):
    n = weights.shape[0]
    out = np.zeros(1 << n, dtype=weights.dtype)
    for i in range(n):
        half = 1 << i
        w = weights[i]
        for j in range(half):
            out[half + j] = out[j] + w
    return out


@njit(cache=True)
def subset_or(masks):
    n = masks.shape[0]
    out = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        half = 1 << i
        for j in range(half):
            out[half + j] = out[j] | masks[i]
    return out


@njit(cache=True)
def rank_table(rows, counts, nbits):
    # depth-first over masks, one XOR basis (indexed by pivot bit) per depth
    n = counts.shape[0]
    out = np.zeros(1 << n, dtype=np.int64)
    basis = np.zeros((n + 1, max(nbits, 1)), dtype=np.int64)
    rank = np.zeros(n + 1, dtype=np.int64)
    mask = np.zeros(n + 1, dtype=np.int64)
    nxt = np.zeros(n + 1, dtype=np.int64)
    depth = 0
    while depth >= 0:
        e = nxt[depth]
        if e >= n:
            depth -= 1
            continue
        nxt[depth] = e + 1
        basis[depth + 1, :] = basis[depth, :]
        r = rank[depth]
        for k in range(counts[e]):
            v = rows[e, k]
            for b in range(nbits - 1, -1, -1):
                if (v >> b) & 1:
                    if basis[depth + 1, b] == 0:
                        basis[depth + 1, b] = v
                        r += 1
                        break
                    v ^= basis[depth + 1, b]
        m = mask[depth] | (1 << e)
        out[m] = r
        mask[depth + 1] = m
        rank[depth + 1] = r
        nxt[depth + 1] = e + 1
        depth += 1
    return out


@njit(cache=True)
def _scan_value(values, weights, B, n):
    s = values[B]
    for b in range(n):
        if (B >> b) & 1:
            s -= weights[b]
    return s


@njit(cache=True)
def sfm_scan(values, weights, within, must, tol):
    n = weights.shape[0]
    free = within & ~must
    best = _scan_value(values, weights, must | free, n)
    sub = free
    while True:
        g = _scan_value(values, weights, must | sub, n)
        if g < best:
            best = g
        if sub == 0:
            break
        sub = (sub - 1) & free
    lo = must | free
    hi = must
    sub = free
    while True:
        B = must | sub
        if _scan_value(values, weights, B, n) <= best + tol:
            lo &= B
            hi |= B
        if sub == 0:
            break
        sub = (sub - 1) & free
    return best, lo, hi


@njit(cache=True)
def _bell(m):
    row = np.zeros(m + 1, dtype=np.int64)
    nxt = np.zeros(m + 1, dtype=np.int64)
    row[0] = 1
    size = 1
    for _ in range(m):
        nxt[0] = row[size - 1]
        for j in range(size):
            nxt[j + 1] = nxt[j] + row[j]
        size += 1
        row[:size] = nxt[:size]
    return row[0]


@njit(cache=True)
def rgs_table(m):
    out = np.zeros((_bell(m), m), dtype=np.int8)
    if m == 0:
        return out
    a = np.zeros(m, dtype=np.int64)
    b = np.ones(m, dtype=np.int64)
    row = 0
    while True:
        for j in range(m):
            out[row, j] = a[j]
        row += 1
        i = m - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            break
        a[i] += 1
        for j in range(i + 1, m):
            a[j] = 0
            b[j] = max(b[j - 1], a[j - 1] + 1)
    return out


@njit(cache=True)
def partition_sums(rgs, elements, table):
    P, m = rgs.shape
    total = np.zeros(P, dtype=table.dtype)
    nblocks = np.zeros(P, dtype=np.int64)
    bm = np.zeros(max(m, 1), dtype=np.int64)
    for p in range(P):
        bm[:] = 0
        k = 0
        for i in range(m):
            lab = rgs[p, i]
            bm[lab] |= 1 << elements[i]
            if lab + 1 > k:
                k = lab + 1
        s = table[0] * 0
        for lab in range(k):
            s += table[bm[lab]]
        total[p] = s
        nblocks[p] = k
    return total, nblocks


@njit(cache=True)
def block_masks(rgs, elements):
    P, m = rgs.shape
    out = np.zeros((P, m), dtype=np.int64)
    for p in range(P):
        for i in range(m):
            out[p, rgs[p, i]] |= 1 << elements[i]
    return out
