import random

from hypothesis import strategies as st

from cospectra.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    return Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@st.composite
def trees(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    return Graph.from_edges(n, [(p, v + 1) for v, p in enumerate(parents)])


@st.composite
def int_matrices(draw, max_n=6, bound=5, symmetric=False):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    a = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i):
                a[i][j] = a[j][i]
    return a


def relabeled(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
