"""Compiled inner loops for codeword enumeration.

A code with ``k`` basis rows is stored as a ``(k, 2W)`` uint64 array: words
``[0, W)`` pack the x-half and ``[W, 2W)`` the y-half of each row.  The
weight of a word is ``sum(popcount(x | y))``, which is the symplectic weight;
Hamming weight is obtained by packing the whole word as the x-half and
leaving the y-half zero.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.core.extending import intrinsic


@intrinsic
def _popcount(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@intrinsic
def _ctz(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], context.get_constant(types.boolean, False))

    return sig, codegen


@njit(cache=True, nogil=True)
def _weight(cur, half):
    w = 0
    for j in range(half):
        w += _popcount(cur[j] | cur[half + j])
    return w


@njit(cache=True, nogil=True)
def _start_word(rows, start):
    k, width = rows.shape
    cur = np.zeros(width, dtype=np.uint64)
    g = start ^ (start >> 1)
    for b in range(k):
        if (g >> b) & 1:
            for j in range(width):
                cur[j] ^= rows[b, j]
    return cur


@njit(cache=True, nogil=True)
def gray_min(rows, start, stop, stop_at):
    """Minimum nonzero weight over Gray indices [start, stop).

    Returns (best weight, Gray index of a minimising word, indices visited).
    Stops early once a weight <= ``stop_at`` is seen.
    """
    width = rows.shape[1]
    half = width // 2
    cur = _start_word(rows, start)
    best = 1 << 62
    best_i = -1
    visited = 0
    i = start
    while i < stop:
        if i != 0:
            w = _weight(cur, half)
            if w > 0 and w < best:
                best = w
                best_i = i
            visited += 1
            if best <= stop_at:
                break
        i += 1
        if i < stop:
            b = _ctz(np.uint64(i))
            for j in range(width):
                cur[j] ^= rows[b, j]
    return best, best_i, visited


@njit(cache=True, nogil=True)
def gray_hist(rows, start, stop, max_weight):
    width = rows.shape[1]
    half = width // 2
    hist = np.zeros(max_weight + 1, dtype=np.int64)
    cur = _start_word(rows, start)
    i = start
    while i < stop:
        hist[_weight(cur, half)] += 1
        i += 1
        if i < stop:
            b = _ctz(np.uint64(i))
            for j in range(width):
                cur[j] ^= rows[b, j]
    return hist


@njit(cache=True, nogil=True)
def gray_collect(rows, start, stop, target, out):
    """Write the Gray indices of words of weight ``target`` into ``out``; return the count."""
    width = rows.shape[1]
    half = width // 2
    cur = _start_word(rows, start)
    count = 0
    cap = out.shape[0]
    i = start
    while i < stop:
        if _weight(cur, half) == target:
            if count < cap:
                out[count] = i
            count += 1
        i += 1
        if i < stop:
            b = _ctz(np.uint64(i))
            for j in range(width):
                cur[j] ^= rows[b, j]
    return count


@njit(cache=True, nogil=True)
def sample_dense(rows, infos):
    """Minimum weight over information words given as packed uint64 bitmasks."""
    k, width = rows.shape
    half = width // 2
    best = 1 << 62
    best_t = -1
    cur = np.zeros(width, dtype=np.uint64)
    for t in range(infos.shape[0]):
        for j in range(width):
            cur[j] = 0
        for b in range(k):
            if (infos[t, b >> 6] >> np.uint64(b & 63)) & np.uint64(1):
                for j in range(width):
                    cur[j] ^= rows[b, j]
        w = _weight(cur, half)
        if w > 0 and w < best:
            best = w
            best_t = t
    return best, best_t


@njit(cache=True, nogil=True)
def sample_sparse(rows, idx, counts):
    """Minimum weight over sums of ``counts[t]`` rows listed in ``idx[t]``."""
    width = rows.shape[1]
    half = width // 2
    best = 1 << 62
    best_t = -1
    cur = np.zeros(width, dtype=np.uint64)
    for t in range(idx.shape[0]):
        for j in range(width):
            cur[j] = 0
        for s in range(counts[t]):
            b = idx[t, s]
            for j in range(width):
                cur[j] ^= rows[b, j]
        w = _weight(cur, half)
        if w > 0 and w < best:
            best = w
            best_t = t
    return best, best_t
