"""Simple undirected graphs stored as bit-packed adjacency rows.

Vertex ``i`` is adjacent to ``j`` iff bit ``j`` of ``rows[i]`` is set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvariantViolation, ParseError

MAX_VERTICES = 64
MAX_GRAPH6_VERTICES = 62


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise DomainError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise DomainError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise DomainError(f"row {i} references a vertex >= {self.n}")
            if r >> i & 1:
                raise DomainError(f"loop at vertex {i}")
            for j in _bits(r):
                if not self.rows[j] >> i & 1:
                    raise DomainError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise DomainError(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"edge ({i}, {j}) out of range for n={n}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, a: Sequence[Sequence[int]]) -> Graph:
        n = len(a)
        rows = []
        for i, row in enumerate(a):
            if len(row) != n:
                raise DomainError(f"row {i} has length {len(row)}, expected {n}")
            r = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise DomainError(f"entry ({i}, {j}) = {x} is not 0/1")
                if x:
                    r |= 1 << j
            rows.append(r)
        return cls(n, tuple(rows))

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def to_matrix(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``i`` renamed to ``perm[i]``."""
        return Graph.from_edges(self.n, [(perm[i], perm[j]) for i, j in self.edges()])

    def __str__(self):
        return to_graph6(self) if self.n <= MAX_GRAPH6_VERTICES else f"Graph(n={self.n})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.rows + tuple(r << shift for r in h.rows))


# -- graph6 -----------------------------------------------------------------

def _pairs(n: int) -> Iterator[tuple[int, int]]:
    # graph6 bit order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ParseError("empty graph6 string at byte 0")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {pos}: character {ch!r} outside graph6 range 63..126")
    n = ord(s[0]) - 63
    if n == 63:
        raise ParseError(f"byte 0: multi-byte header (n > {MAX_GRAPH6_VERTICES}) not supported")
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise ParseError(
            f"byte {min(len(s), expected)}: length {len(s)} inconsistent with n={n} "
            f"(expected {expected} bytes)"
        )
    rows = [0] * n
    pairs = _pairs(n)
    for k in range(nbits):
        byte = ord(s[1 + k // 6]) - 63
        if byte >> (5 - k % 6) & 1:
            i, j = next(pairs)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        else:
            next(pairs)
    if nbits % 6:
        last = ord(s[-1]) - 63
        pad = 6 - nbits % 6
        if last & ((1 << pad) - 1):
            raise ParseError(f"byte {len(s) - 1}: nonzero padding bits")
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_VERTICES:
        raise DomainError(f"graph6 output supports n <= {MAX_GRAPH6_VERTICES}, got {g.n}")
    bits = [g.rows[i] >> j & 1 for i, j in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        out.append(chr(63 + v))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | ParseError]]:
    """Yield ``(line_number, graph or ParseError)`` for each non-blank line."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield lineno, parse_graph6(line)
        except ParseError as exc:
            yield lineno, exc


def parse_adjacency_text(text: str) -> Graph:
    """Parse ``n`` lines of ``n`` characters in ``{0,1}``."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    n = len(lines)
    for i, ln in enumerate(lines):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ParseError(f"line {i + 1}: expected {n} characters in {{0,1}}, got {ln!r}")
    a = [[int(c) for c in ln] for ln in lines]
    for i in range(n):
        if a[i][i]:
            raise ParseError(f"line {i + 1}: nonzero diagonal entry")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ParseError(f"line {i + 1}: asymmetric entry at column {j + 1}")
    return Graph.from_matrix(a)


# -- structure ---------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ r ^ (1 << i) for i, r in enumerate(g.rows)))


def triangle_count(g: Graph) -> int:
    from .linalg import mat_from_graph, trace_power

    t = trace_power(mat_from_graph(g), 3)
    if t % 6:
        raise InvariantViolation(f"Tr(A^3) = {t} is not divisible by 6")
    return t // 6


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges() == g.n - 1 and is_connected(g)


def _greedy_leaf_matching(g: Graph) -> bool:
    # In a forest, some maximum matching uses the edge at any leaf.
    rows = list(g.rows)
    alive = (1 << g.n) - 1
    while alive:
        leaf = next((v for v in _bits(alive) if rows[v].bit_count() <= 1), None)
        if leaf is None:
            raise DomainError("greedy leaf matching requires a forest")
        if rows[leaf] == 0:
            return False
        mate = rows[leaf].bit_length() - 1
        for v in (leaf, mate):
            for u in _bits(rows[v]):
                rows[u] &= ~(1 << v)
            rows[v] = 0
            alive &= ~(1 << v)
    return True


def tree_has_perfect_matching(g: Graph) -> bool:
    """Decide via the char-poly constant term and via leaf matching; both must agree."""
    if not is_tree(g):
        raise DomainError("tree_has_perfect_matching requires a tree")
    from .linalg import char_poly, mat_from_graph

    const = char_poly(mat_from_graph(g))[0]
    if const not in (-1, 0, 1):
        raise InvariantViolation(f"tree char poly constant term {const} not in {{-1,0,1}}")
    by_poly = const != 0
    by_matching = _greedy_leaf_matching(g)
    if by_poly != by_matching:
        raise InvariantViolation(
            f"{to_graph6(g)}: char-poly verdict {by_poly} != matching verdict {by_matching}"
        )
    return by_poly
