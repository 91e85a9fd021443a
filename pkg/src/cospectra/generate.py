"""Corpus generators: all labeled graphs on n vertices, and free trees."""

from __future__ import annotations

from typing import Iterator

from .batch import labeled_graph, num_labeled_graphs
from .graph import Graph

LABELED_MAX_N = 7


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in index order (no isomorphism reduction)."""
    if n > LABELED_MAX_N:
        raise ValueError(f"labeled generation is limited to n <= {LABELED_MAX_N}")
    for idx in range(num_labeled_graphs(n)):
        yield labeled_graph(n, idx)


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return layer


def _encode(adj: list[list[int]], root: int) -> str:
    def enc(v, parent):
        return "(" + "".join(sorted(enc(u, v) for u in adj[v] if u != parent)) + ")"

    return enc(root, -1)


def tree_canonical_string(g: Graph) -> str:
    adj = [g.neighbors(v) for v in range(g.n)]
    return min(_encode(adj, c) for c in _centers(adj))


def _tree_from_string(code: str) -> Graph:
    edges = []
    stack = []
    count = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        else:
            stack.pop()
    return Graph.from_edges(count, edges)


def free_trees(n: int) -> list[Graph]:
    """All non-isomorphic trees on ``n`` vertices, canonically labeled, in sorted order."""
    if n < 1:
        return []
    level = {"()": None}
    for _ in range(n - 1):
        nxt = {}
        for code in level:
            t = _tree_from_string(code)
            for v in range(t.n):
                grown = Graph.from_edges(t.n + 1, t.edges() + [(v, t.n)])
                nxt.setdefault(tree_canonical_string(grown), None)
        level = nxt
    return [_tree_from_string(code) for code in sorted(level)]
