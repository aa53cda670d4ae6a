"""Vectorized numpy implementations of the hot kernels.

Each function mirrors one in :mod:`._jit` with identical inputs and outputs;
the parity tests hold the two paths to bitwise-equal results.
"""
import numpy as np

_CHUNK = 1 << 14


def subset_sum(weights):
    """``out[mask] = sum(weights[i] for i in mask)`` over all ``2**n`` masks."""
    weights = np.asarray(weights)
    out = np.zeros(1 << len(weights), dtype=weights.dtype)
    for i, w in enumerate(weights):
        half = 1 << i
        out[half:2 * half] = out[:half] + w
    return out


def subset_or(masks):
    masks = np.asarray(masks, dtype=np.int64)
    out = np.zeros(1 << len(masks), dtype=np.int64)
    for i, m in enumerate(masks):
        half = 1 << i
        out[half:2 * half] = out[:half] | m
    return out


def rank_table(rows, counts, nbits):
    """GF(2) rank of the union of per-element row sets, for every mask.

    ``rows[i, :counts[i]]`` hold element ``i``'s vectors packed into int64.
    """
    n = len(counts)
    owner = np.repeat(np.arange(n), counts)
    flat = np.concatenate([rows[i, :counts[i]] for i in range(n)]) if n else np.zeros(0, np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    if flat.size == 0:
        return out
    for start in range(0, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        live = ((masks[:, None] >> owner[None, :]) & 1).astype(bool)
        M = np.where(live, flat[None, :], 0)
        rank = np.zeros(len(masks), dtype=np.int64)
        for b in range(nbits):
            has = ((M >> b) & 1).astype(bool)
            found = has.any(axis=1)
            piv = M[np.arange(len(masks)), has.argmax(axis=1)]
            M = np.where(has & found[:, None], M ^ piv[:, None], M)
            rank += found
        out[masks] = rank
    return out


def _submasks(free, must):
    bits = [b for b in range(free.bit_length()) if (free >> b) & 1]
    idx = np.arange(1 << len(bits), dtype=np.int64)
    sub = np.full(len(idx), must, dtype=np.int64)
    for j, b in enumerate(bits):
        sub |= ((idx >> j) & 1) << b
    return sub


def sfm_scan(values, weights, within, must, tol):
    """Minimize ``values[B] - weights(B)`` over ``must <= B <= within``.

    Returns the minimum and the intersection / union of all minimizers
    (minimizers are those within ``tol`` of the minimum).
    """
    within = int(within)
    must = int(must)
    sub = _submasks(within & ~must, must)
    wsum = np.zeros(len(sub), dtype=values.dtype)
    for b in range(len(weights)):
        if (within >> b) & 1:
            wsum += ((sub >> b) & 1).astype(values.dtype) * weights[b]
    g = values[sub] - wsum
    best = g.min()
    sel = sub[g <= best + tol]
    return best, int(np.bitwise_and.reduce(sel)), int(np.bitwise_or.reduce(sel))


def rgs_table(m):
    """All restricted growth strings of length ``m`` (lexicographic), as rows."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int8)
    table = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)  # max label so far, per row
    for _ in range(1, m):
        reps = top.astype(np.int64) + 2
        parent = np.repeat(np.arange(len(table)), reps)
        offs = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
        last = offs.astype(np.int8)
        table = np.concatenate([table[parent], last[:, None]], axis=1)
        top = np.maximum(top[parent], last)
    return table


def partition_sums(rgs, elements, table):
    """Sum of ``table`` over the blocks of each partition, and block counts."""
    m = rgs.shape[1]
    elements = np.asarray(elements, dtype=np.int64)
    total = np.zeros(len(rgs), dtype=table.dtype)
    for lab in range(m):
        bm = (((rgs == lab).astype(np.int64)) << elements[None, :]).sum(axis=1)
        total += np.where(bm > 0, table[bm], 0)
    nblocks = rgs.max(axis=1).astype(np.int64) + 1 if m else np.zeros(len(rgs), np.int64)
    return total, nblocks


def block_masks(rgs, elements):
    """Block mask matrix: ``out[p, lab]`` is the mask of block ``lab``."""
    elements = np.asarray(elements, dtype=np.int64)
    m = rgs.shape[1]
    out = np.zeros((len(rgs), m), dtype=np.int64)
    for lab in range(m):
        out[:, lab] = (((rgs == lab).astype(np.int64)) << elements[None, :]).sum(axis=1)
    return out
