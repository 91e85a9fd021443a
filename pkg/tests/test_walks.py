import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from cospectra.errors import DomainError, InvariantViolation, ResourceCapError
from cospectra.graph import complete_graph, cycle_graph, disjoint_union, empty_graph, path_graph, star_graph
from cospectra.invariants import walk_counts
from cospectra.linalg import mat_from_graph, trace_power
from cospectra.walks import (
    closed_walk_array,
    converse,
    count_palindromic,
    enumerate_closed_walks,
    enumerate_walks,
    is_closed_walk,
    minimal_period,
    odd_self_converse_count,
    orbit,
    orbit_census,
    self_converse_translates,
    translate,
    translation_identity_violations,
    verify_walk_trace_counting,
    verify_translation_converse_lemma,
)

K2, K3, C4 = complete_graph(2), complete_graph(3), cycle_graph(4)


def test_translate_and_converse_examples():
    assert translate((0, 1), 1) == (1, 0)
    assert converse((0, 1, 2)) == (0, 2, 1)
    assert translate((0, 1, 2), -1) == (2, 0, 1)


def test_orbit_examples():
    assert orbit((0, 1)).size == 2
    assert orbit((0, 1, 2)).size == 3
    assert orbit((0, 1, 0, 1)).size == 2
    assert minimal_period((0, 1, 0, 1)) == 2


cycles = st.lists(st.integers(0, 3), min_size=1, max_size=10)


@given(cycles, st.integers(-20, 20), st.integers(-20, 20))
def test_translation_converse_identities(c, d, e):
    c = tuple(c)
    m = len(c)
    assert converse(converse(c)) == c
    assert translate(translate(c, d), e) == translate(c, d + e)
    assert converse(translate(c, d)) == translate(converse(c), m - d)
    assert m % orbit(c).size == 0


@given(cycles)
def test_self_converse_translates_are_consistent(c):
    c = tuple(c)
    for k in self_converse_translates(c):
        t = translate(c, k)
        assert converse(t) == t


def test_vectorised_identities_catch_a_broken_row():
    arr = closed_walk_array(C4, 4)
    assert translation_identity_violations(arr) == 0
    assert arr.shape[0] == 32


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=6), st.integers(1, 6))
def test_walk_enumeration_matches_algebra(g, m):
    assert enumerate_walks(g, m) == walk_counts(g, m).counts[m]
    closed = list(enumerate_closed_walks(g, m))
    assert len(closed) == trace_power(mat_from_graph(g), m)
    assert closed == sorted(closed) and len(set(closed)) == len(closed)
    assert all(is_closed_walk(g, c) for c in closed)
    arr = closed_walk_array(g, m)
    assert [tuple(r) for r in arr.tolist()] == closed


def test_k3_closed_four_walks():
    assert len(list(enumerate_closed_walks(K3, 4))) == 18


@pytest.mark.parametrize("g, m, expected", [(K2, 2, 2), (C4, 4, 16), (K3, 4, 12)])
def test_palindromic_examples(g, m, expected):
    assert count_palindromic(g, m) == expected


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=5), st.sampled_from([2, 4, 6, 8]))
def test_palindromic_count_is_half_length_walk_count(g, m):
    assert count_palindromic(g, m) == walk_counts(g, m // 2).counts[m // 2]


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=5), st.sampled_from([1, 3, 5, 7]))
def test_no_odd_self_converse_walks(g, m):
    assert odd_self_converse_count(g, m) == 0


def test_palindromic_rejects_odd_length():
    with pytest.raises(DomainError):
        count_palindromic(K3, 3)
    with pytest.raises(DomainError):
        odd_self_converse_count(K3, 4)


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=5), st.integers(1, 8))
def test_orbit_census(g, m):
    census = orbit_census(g, m)
    assert census.ok


@pytest.mark.parametrize("g, m", [(C4, 8), (K3, 4), (K2, 4), (star_graph(3), 8), (path_graph(4), 8)])
def test_translation_converse_lemma_examples(g, m):
    rep = verify_translation_converse_lemma(g, m)
    assert rep.verdict == "pass"


def test_translation_converse_lemma_cycle_example():
    # a full-orbit closed 8-walk on C4 fixed by exactly the translates 3 and 7
    c = (0, 1, 2, 3, 2, 1, 0, 3)
    assert is_closed_walk(C4, c)
    assert translate(c, 3) == (3, 2, 1, 0, 3, 0, 1, 2)
    assert self_converse_translates(c) == [3, 7]
    assert orbit(c).size == 8


def test_translation_converse_lemma_requires_multiple_of_four():
    with pytest.raises(DomainError):
        verify_translation_converse_lemma(C4, 6)


@pytest.mark.parametrize("g, m", [(K3, 1), (C4, 1), (K2, 2), (complete_graph(4), 2), (path_graph(5), 4), (C4, 4)])
def test_counting_chain_examples(g, m):
    rep = verify_walk_trace_counting(g, m)
    assert rep.verdict == "pass", rep.checks


def test_counting_chain_k3_values():
    rep = verify_walk_trace_counting(K3, 1)
    assert rep.walk_difference == 6 and rep.trace_difference == 12


@settings(max_examples=25)
@given(graphs(min_n=1, max_n=5), st.sampled_from([1, 2]))
def test_counting_chain_random(g, m):
    assert verify_walk_trace_counting(g, m).verdict == "pass"


def test_work_cap(monkeypatch):
    monkeypatch.setenv("COSPECTRA_CAP", "100")
    with pytest.raises(ResourceCapError, match="estimated"):
        enumerate_walks(complete_graph(5), 6)
    with pytest.raises(ResourceCapError):
        list(enumerate_closed_walks(complete_graph(5), 6))
    assert enumerate_walks(complete_graph(5), 2) == 80


def test_empty_and_edgeless():
    assert closed_walk_array(empty_graph(0), 3).shape == (0, 3)
    assert closed_walk_array(empty_graph(4), 2).shape == (0, 2)
    assert orbit_census(disjoint_union(K2, empty_graph(2)), 3).ok
    with pytest.raises(DomainError):
        enumerate_walks(K3, 0)


def test_palindromic_mismatch_raises(monkeypatch):
    import cospectra.walks as walks

    monkeypatch.setattr(walks, "palindromic_mask", lambda arr: np.zeros(arr.shape[0], dtype=bool))
    with pytest.raises(InvariantViolation):
        walks.count_palindromic(K3, 4)
