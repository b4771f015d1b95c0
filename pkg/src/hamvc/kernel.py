"""Vectorized shattering tests over many subsets at once.

Subsets of a graph with at most 64 vertices are uint64 masks. For a fixed
candidate W the set of u realizing the trace S is the vertex mask
AND_{w in S} A(w) AND AND_{w not in S} ~A(w), with A(w) the adjacency mask of
w, so "W is shattered inside M" is 2^k mask tests. The tests are run over
blocks of (subsets x candidates) and subsets drop out as soon as they hit.

Enumeration order is colex: numeric order of the masks.
"""

from __future__ import annotations

from itertools import combinations, islice
from math import comb
from typing import Iterator

import numpy as np

from .core import HammingParams

MAX_BITS = 64
BLOCK = 1 << 20  # subsets x candidates per vectorized step


def fits(params: HammingParams) -> bool:
    return params.n_vertices <= MAX_BITS


def adjacency_masks(params: HammingParams) -> np.ndarray:
    n = params.n_vertices
    out = np.zeros(n, dtype=np.uint64)
    for v in range(n):
        m = 0
        for w in params.neighbor_indices(v):
            m |= 1 << w
        out[v] = m
    return out


def _colex_all(n: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros(1, dtype=np.uint64)
    if m > n:
        return np.zeros(0, dtype=np.uint64)
    if m == n:
        return np.array([(1 << n) - 1], dtype=np.uint64)
    top = np.uint64(1 << (n - 1))
    return np.concatenate([_colex_all(n - 1, m), _colex_all(n - 1, m - 1) | top])


def colex_chunks(n: int, m: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    """All m-subsets of range(n) as masks, in increasing numeric order, chunked."""
    if comb(n, m) <= chunk or m == 0 or m >= n:
        yield _colex_all(n, m)
        return
    yield from colex_chunks(n - 1, m, chunk)
    top = np.uint64(1 << (n - 1))
    for arr in colex_chunks(n - 1, m - 1, chunk):
        yield arr | top


def all_subsets_chunks(n: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    total = 1 << n
    for lo in range(0, total, chunk):
        yield np.arange(lo, min(total, lo + chunk), dtype=np.uint64)


def sample_subsets(n: int, m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform m-subsets of range(n) as masks.

    Each row draws n uniform keys and keeps the m smallest, which is uniform
    over m-subsets.
    """
    if m == 0 or count == 0:
        return np.zeros(count, dtype=np.uint64)
    keys = rng.random((count, n))
    if m < n:
        idx = np.argpartition(keys, m - 1, axis=1)[:, :m]
    else:
        idx = np.tile(np.arange(n), (count, 1))
    bits = np.left_shift(np.uint64(1), idx.astype(np.uint64))
    return np.bitwise_or.reduce(bits, axis=1)


def random_subsets(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random subsets with a uniformly random size in [0, n], then a uniform subset of that size."""
    sizes = rng.integers(0, n + 1, size=count)
    out = np.zeros(count, dtype=np.uint64)
    for m in np.unique(sizes):
        rows = np.nonzero(sizes == m)[0]
        out[rows] = sample_subsets(n, int(m), len(rows), rng)
    return out


def _candidate_tables(adj: np.ndarray, k: int, first: int, largest: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(W masks, trace masks) for every k-subset W of the vertices, in blocks
    that start at ``first`` candidates and double up to ``largest``.

    Trace column S holds the vertices u with n(u) ∩ W = S.
    """
    n = len(adj)
    full = np.uint64((1 << n) - 1) if n < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    it = combinations(range(n), k)
    size = first
    while True:
        block = list(islice(it, size))
        if not block:
            return
        size = min(largest, 2 * size)
        idx = np.array(block, dtype=np.int64).reshape(len(block), k)
        wmask = np.bitwise_or.reduce(np.left_shift(np.uint64(1), idx.astype(np.uint64)), axis=1)
        A = adj[idx]  # (C, k)
        traces = np.empty((len(block), 1 << k), dtype=np.uint64)
        for S in range(1 << k):
            col = np.full(len(block), full, dtype=np.uint64)
            for j in range(k):
                col &= A[:, j] if S >> j & 1 else ~A[:, j]
            traces[:, S] = col
        yield wmask, traces


def has_shattered(masks: np.ndarray, adj: np.ndarray, k: int) -> np.ndarray:
    """Boolean array: does the subset ``masks[i]`` shatter some W ⊆ masks[i] with |W| = k?

    Equivalently vc(masks[i]) >= k. Empty subsets are False for every k >= 0.
    Candidates come in growing blocks: most subsets hit early, and the ones
    that remain are few enough for large blocks.
    """
    masks = np.asarray(masks, dtype=np.uint64)
    n = len(adj)
    sizes = np.bitwise_count(masks)
    hit = np.zeros(len(masks), dtype=bool)
    if k == 0:
        return sizes > 0
    # 2^k distinct traces need 2^k distinct members
    pending = np.nonzero(sizes >= (1 << k))[0]
    if len(pending) == 0 or k > n:
        return hit
    for wmask, traces in _candidate_tables(adj, k, 16, BLOCK // 64):
        if len(pending) == 0:
            break
        step = max(1, BLOCK // (len(wmask) * (1 << k)))
        still = []
        for lo in range(0, len(pending), step):
            rows = pending[lo : lo + step]
            M = masks[rows][:, None]
            ok = (M & wmask[None, :]) == wmask[None, :]
            for S in range(traces.shape[1]):
                ok &= (M & traces[None, :, S]) != 0
            got = ok.any(axis=1)
            hit[rows[got]] = True
            still.append(rows[~got])
        pending = np.concatenate(still) if still else pending[:0]
    return hit


def line_masks(params: HammingParams) -> np.ndarray:
    """One mask per axis-parallel line."""
    out = []
    seen = set()
    for v in range(params.n_vertices):
        x = params.decode(v)
        for j in range(params.d):
            key = (j, x[:j] + x[j + 1 :])
            if key in seen:
                continue
            seen.add(key)
            m = 0
            for c in range(params.q):
                m |= 1 << params.encode(x[:j] + (c,) + x[j + 1 :])
            out.append(m)
    return np.array(out, dtype=np.uint64)


def rectangle_masks(params: HammingParams) -> np.ndarray:
    """One mask per rectangle (four corners of a 2x2 grid inside an axis plane)."""
    out = []
    q = params.q
    for v in range(params.n_vertices):
        p = params.decode(v)
        for i, j in combinations(range(params.d), 2):
            for vi in range(p[i] + 1, q):
                for vj in range(p[j] + 1, q):
                    pi = p[:i] + (vi,) + p[i + 1 :]
                    pj = p[:j] + (vj,) + p[j + 1 :]
                    pij = pi[:j] + (vj,) + pi[j + 1 :]
                    out.append(sum(1 << params.encode(r) for r in (p, pi, pj, pij)))
    return np.array(out, dtype=np.uint64)


def contains_any(masks: np.ndarray, patterns: np.ndarray, at_least: int | None = None) -> np.ndarray:
    """For each mask: does it contain some pattern entirely (or at least ``at_least`` of its bits)?"""
    hit = np.zeros(len(masks), dtype=bool)
    if len(patterns) == 0:
        return hit
    step = max(1, BLOCK // len(patterns))
    for lo in range(0, len(masks), step):
        M = masks[lo : lo + step][:, None] & patterns[None, :]
        if at_least is None:
            hit[lo : lo + step] = (M == patterns[None, :]).any(axis=1)
        else:
            hit[lo : lo + step] = (np.bitwise_count(M) >= at_least).any(axis=1)
    return hit

