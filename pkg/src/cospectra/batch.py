"""Vectorised kernels for exhaustive runs over labeled graphs.

Everything here is exact: int64 products are guarded against overflow
before they happen, and determinants go through the arbitrary-precision
Bareiss routine after deduplication. Labeled graph ``index`` on ``n``
vertices has edge ``pairs[k]`` iff bit ``k`` of ``index`` is set, with
``pairs`` in graph6 order.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import InvariantViolation
from .graph import Graph
from .linalg import det

_LIMIT = 1 << 62


def graph6_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def num_labeled_graphs(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def labeled_adjacency(n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    a = np.zeros((len(idx), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(graph6_pairs(n)):
        bit = (idx >> k) & 1
        a[:, i, j] = bit
        a[:, j, i] = bit
    return a


def labeled_graph(n: int, index: int) -> Graph:
    return Graph.from_edges(n, [p for k, p in enumerate(graph6_pairs(n)) if index >> k & 1])


def _guard(*arrays: np.ndarray, factor: int = 1) -> None:
    bound = factor
    for x in arrays:
        bound *= int(np.abs(x).max(initial=0))
    if bound >= _LIMIT:
        raise OverflowError("int64 product bound exceeded; use the arbitrary-precision path")


def char_poly(a: np.ndarray) -> np.ndarray:
    """Batched Berkowitz: ``(B, n, n)`` int64 -> ``(B, n + 1)`` coefficients by degree."""
    batch, n, _ = a.shape
    p = np.ones((batch, 1), dtype=np.int64)  # decreasing degree
    for r in range(n):
        toep = np.empty((batch, r + 2), dtype=np.int64)
        toep[:, 0] = 1
        toep[:, 1] = -a[:, r, r]
        row = a[:, r, :r]
        v = a[:, :r, r]
        sub = a[:, :r, :r]
        for s in range(r):
            _guard(row, v, factor=max(r, 1))
            toep[:, 2 + s] = -np.einsum("bi,bi->b", row, v)
            if s + 1 < r:
                _guard(sub, v, factor=r)
                v = np.einsum("bij,bj->bi", sub, v)
        q = np.zeros((batch, r + 2), dtype=np.int64)
        _guard(toep, p, factor=r + 2)
        for i in range(r + 2):
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                q[:, i] += toep[:, i - j] * p[:, j]
        p = q
    return p[:, ::-1].copy()


def walk_vectors(a: np.ndarray, count: int) -> np.ndarray:
    """``(B, count, n)`` array holding ``A^m e`` for ``m < count``."""
    batch, n, _ = a.shape
    out = np.empty((batch, count, n), dtype=np.int64)
    v = np.ones((batch, n), dtype=np.int64)
    for m in range(count):
        out[:, m] = v
        if m + 1 < count:
            _guard(a, v, factor=n)
            v = np.einsum("bij,bj->bi", a, v)
    return out


def sorted_rows(w: np.ndarray) -> np.ndarray:
    """Sort the rows of each matrix lexicographically (a relabeling invariant)."""
    batch, n, cols = w.shape
    order = np.lexsort([w[:, :, c] for c in range(cols - 1, -1, -1)], axis=-1)
    return np.take_along_axis(w, order[:, :, None], axis=1)


def abs_det(w: np.ndarray, canonical: np.ndarray | None = None) -> list[int]:
    """Exact ``|det|`` of each matrix; equal row multisets share one Bareiss call."""
    if canonical is None:
        canonical = sorted_rows(w)
    flat = canonical.reshape(canonical.shape[0], -1)
    uniq, inverse = np.unique(flat, axis=0, return_inverse=True)
    n = w.shape[1]
    dets = [abs(det(row.reshape(n, n).tolist())) for row in uniq]
    return [dets[i] for i in inverse.reshape(-1)]


def triangle_counts(a: np.ndarray) -> np.ndarray:
    n = a.shape[1]
    tri = np.zeros(a.shape[0], dtype=np.int64)
    for i, j, k in combinations(range(n), 3):
        tri += a[:, i, j] * a[:, j, k] * a[:, i, k]
    return tri


def trace_cube(a: np.ndarray) -> np.ndarray:
    _guard(a, a, a, factor=a.shape[1] ** 2)
    return np.einsum("bij,bjk,bki->b", a, a, a)


def matrix_power_traces_mod2_64(a: np.ndarray, max_power: int) -> np.ndarray:
    """``Tr(A^j) mod 2^64`` for ``j <= max_power`` via wrapping uint64 products."""
    batch, n, _ = a.shape
    au = a.astype(np.uint64)
    p = np.broadcast_to(np.eye(n, dtype=np.uint64), (batch, n, n)).copy()
    out = np.empty((batch, max_power + 1), dtype=np.uint64)
    with np.errstate(over="ignore"):
        for j in range(max_power + 1):
            out[:, j] = np.einsum("bii->b", p)
            if j < max_power:
                p = np.matmul(p, au)
    return out


def walk_counts_mod2_64(a: np.ndarray, max_power: int) -> np.ndarray:
    batch, n, _ = a.shape
    au = a.astype(np.uint64)
    v = np.ones((batch, n), dtype=np.uint64)
    out = np.empty((batch, max_power + 1), dtype=np.uint64)
    with np.errstate(over="ignore"):
        for m in range(max_power + 1):
            out[:, m] = v.sum(axis=1)
            if m < max_power:
                v = np.einsum("bij,bj->bi", au, v)
    return out


def extend_by_recurrence(phi: list[int], initial: list[int], count: int) -> list[int]:
    """Extend a sequence annihilated by the monic ``phi`` (e.g. traces or walk counts)."""
    n = len(phi) - 1
    seq = list(initial)
    if len(seq) < n:
        raise ValueError("need at least deg(phi) initial terms")
    while len(seq) < count:
        m = len(seq)
        seq.append(-sum(phi[i] * seq[m - n + i] for i in range(n)))
    return seq[:count]


def check_eta_divisibility(dets: list[int], n: int) -> list[int]:
    scale = 1 << (n // 2)
    out = []
    for d in dets:
        if d % scale:
            raise InvariantViolation(f"2^{n // 2} does not divide det W = {d}")
        out.append(d // scale)
    return out
