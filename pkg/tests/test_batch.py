import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospectra import batch
from cospectra.errors import InvariantViolation
from cospectra.generate import all_labeled_graphs, free_trees, tree_canonical_string
from cospectra.graph import Graph, is_tree, to_graph6, triangle_count
from cospectra.invariants import eta, walk_counts
from cospectra.linalg import char_poly, mat_from_graph, trace_power


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_batch_kernels_match_exact_path(n):
    total = batch.num_labeled_graphs(n)
    a = batch.labeled_adjacency(n, 0, total)
    phi = batch.char_poly(a)
    vecs = batch.walk_vectors(a, 2 * n + 1)
    w = vecs[:, :n, :].transpose(0, 2, 1)
    dets = batch.abs_det(w)
    tri = batch.triangle_counts(a)
    traces = batch.matrix_power_traces_mod2_64(a, 6)
    walks64 = batch.walk_counts_mod2_64(a, 6)
    for idx in range(total):
        g = batch.labeled_graph(n, idx)
        assert a[idx].tolist() == mat_from_graph(g)
        assert phi[idx].tolist() == char_poly(mat_from_graph(g))
        assert vecs[idx].sum(axis=1).tolist() == list(walk_counts(g, 2 * n).counts)
        assert dets[idx] == abs(eta(g).det_walk)
        assert tri[idx] == triangle_count(g)
        assert traces[idx].tolist() == [trace_power(mat_from_graph(g), j) for j in range(7)]
        assert walks64[idx].tolist() == list(walk_counts(g, 6).counts)


def test_labeled_index_uses_graph6_bit_order():
    # bit k of the index is the k-th graph6 pair, so index 1 is the edge {0, 1}
    assert batch.labeled_graph(3, 1) == Graph.from_edges(3, [(0, 1)])
    assert to_graph6(batch.labeled_graph(3, 7)) == "Bw"


def test_overflow_guard():
    big = np.full((1, 3, 3), 1 << 40, dtype=np.int64)
    with pytest.raises(OverflowError):
        batch.walk_vectors(big, 3)


def test_uint64_route_wraps_consistently():
    a = batch.labeled_adjacency(7, 2**21 - 1, 2**21)  # K7
    got = batch.matrix_power_traces_mod2_64(a, 40)[0, 40]
    # Tr(A(K7)^m) = 6^m + 6 (-1)^m
    assert int(got) == (6**40 + 6) % 2**64


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(5, 30))
def test_extend_by_recurrence(roots, count):
    # phi = prod (x - r), power sums p_j = sum r^j satisfy phi's recurrence
    phi = [1]
    for r in roots:
        phi = [(-r) * phi[0]] + [phi[i - 1] - r * phi[i] for i in range(1, len(phi))] + [phi[-1]]
    seq = [sum(r**j for r in roots) for j in range(count)]
    assert batch.extend_by_recurrence(phi, seq[:3], count) == seq


def test_eta_divisibility_check():
    assert batch.check_eta_divisibility([16, 0, 48], 9) == [1, 0, 3]
    with pytest.raises(InvariantViolation):
        batch.check_eta_divisibility([8], 9)


def test_all_labeled_graphs_count():
    assert sum(1 for _ in all_labeled_graphs(4)) == 64
    with pytest.raises(ValueError):
        next(all_labeled_graphs(8))


def test_free_tree_counts():
    counts = [len(free_trees(n)) for n in range(1, 13)]
    assert counts == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


@pytest.mark.parametrize("n", range(1, 10))
def test_free_trees_are_distinct_trees(n):
    ts = free_trees(n)
    assert all(is_tree(t) and t.n == n for t in ts)
    codes = [tree_canonical_string(t) for t in ts]
    assert len(set(codes)) == len(codes)


def test_free_trees_cover_labeled_trees():
    trees = {tree_canonical_string(g) for g in all_labeled_graphs(6) if is_tree(g)}
    assert trees == {tree_canonical_string(t) for t in free_trees(6)}
