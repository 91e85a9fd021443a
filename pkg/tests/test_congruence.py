import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from cospectra.congruence import (
    FAIL,
    INAPPLICABLE,
    NOT_COSPECTRAL,
    PASS,
    Check,
    CongruenceReport,
    check_complement_mod4_pair,
    check_walk_complement_equivalence,
    check_eta_parity_pair,
    check_walk_trace_congruence,
    check_walk_mod4_pair,
    gram_parity_matrix,
    nu2_decompose,
    random_symmetric,
    require_pass,
    walk_trace_sides,
    verify_matrix_lemmas,
    walk_count_formula,
    walk_count_mod4,
)
from cospectra.errors import DomainError, InvariantViolation
from cospectra.fixtures import (
    PRINTED_PHI_COMPLEMENT_G,
    PRINTED_PHI_COMPLEMENT_H,
    PRINTED_WALKS_G,
    PRINTED_WALKS_H,
    example_pair,
)
from cospectra.graph import complete_graph, cycle_graph, disjoint_union, empty_graph, star_graph
from cospectra.invariants import walk_counts
from cospectra.linalg import mat_from_graph, trace_power

G, H = example_pair()
K1, K2, K3, K4 = (complete_graph(n) for n in range(1, 5))
C4K1 = disjoint_union(cycle_graph(4), empty_graph(1))
STAR4 = star_graph(4)


@pytest.mark.parametrize("m, t, k", [(12, 2, 1), (1, 0, 0), (8, 3, 0), (7, 0, 3)])
def test_nu2_decompose(m, t, k):
    d = nu2_decompose(m)
    assert (d.t, d.k) == (t, k)
    assert (1 << d.t) * (2 * d.k + 1) == m


def test_nu2_decompose_rejects_zero():
    with pytest.raises(DomainError):
        nu2_decompose(0)


def test_walk_trace_examples():
    a = mat_from_graph(K3)
    assert walk_trace_sides(a, 1) == (6, 6)
    lhs, _ = walk_trace_sides(mat_from_graph(G), 2)
    assert lhs == PRINTED_WALKS_G[4] - PRINTED_WALKS_G[2] == 1308
    assert check_walk_trace_congruence(G, 2).verdict == PASS
    for m in range(1, 6):
        assert walk_trace_sides(mat_from_graph(K1), m) == (0, 0)


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=7), st.integers(1, 12))
def test_walk_trace_random_graphs(g, m):
    assert check_walk_trace_congruence(g, m).verdict == PASS


def test_walk_count_formula_k3_m2():
    a = mat_from_graph(K3)
    traces = {j: trace_power(a, j) for j in range(9)}
    # Tr(A^4)/4 + (Tr(A)/1 + Tr(A^2)/2 + Tr(A^4)/4)
    assert walk_count_formula(traces, 2) == Fraction(18, 4) + 0 + Fraction(6, 2) + Fraction(18, 4) == 12


def test_walk_count_mod4_examples():
    assert walk_count_mod4(K3, 1) == 2
    assert walk_count_mod4(K3, 2) == 0
    assert walk_count_mod4(G, 4) == PRINTED_WALKS_G[4] % 4 == 0
    assert walk_count_mod4(K3, 0) == 3


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=7), st.integers(1, 16))
def test_walk_count_mod4_matches_direct(g, m):
    assert walk_count_mod4(g, m) == walk_counts(g, m).counts[m] % 4


def test_walk_count_formula_summands_may_be_half_integral():
    a = mat_from_graph(K2)
    traces = {j: trace_power(a, j) for j in range(9)}
    # m = 2: Tr(A^4)/4 + Tr(A) + Tr(A^2)/2 + Tr(A^4)/4, and Tr(A^4) = 2 for K2
    assert Fraction(traces[4], 4) == Fraction(1, 2)
    assert walk_count_formula(traces, 2) == 2 == walk_counts(K2, 2).counts[2]


def test_worked_example_pair_checks():
    rep = check_walk_mod4_pair(G, H, 9)
    assert rep.verdict == PASS
    assert [c.lhs for c in rep.checks] == [1, 0, 0, 0, 0, 2, 0, 0, 0, 0]
    assert [c.lhs for c in rep.checks] == [x % 4 for x in PRINTED_WALKS_G]
    assert [c.rhs for c in rep.checks] == [x % 4 for x in PRINTED_WALKS_H]
    assert "Cayley-Hamilton" in rep.notes[0]
    assert len(check_walk_mod4_pair(G, H).checks) == 19

    rep = check_complement_mod4_pair(G, H)
    assert rep.verdict == PASS
    diffs = [c.lhs - c.rhs for c in rep.checks]
    printed = [-(a - b) for a, b in zip(PRINTED_PHI_COMPLEMENT_G, PRINTED_PHI_COMPLEMENT_H)]
    assert [(x - y) % 4 for x, y in zip(diffs, printed)] == [0] * 10
    assert [a - b for a, b in zip(PRINTED_PHI_COMPLEMENT_G, PRINTED_PHI_COMPLEMENT_H)] == [0, -4, -8, 4, 4, 0, 0, 0, 0, 0]

    rep = check_eta_parity_pair(G, H)
    assert rep.verdict == PASS and rep.checks[0].lhs == rep.checks[0].rhs == 1

    rep = check_walk_complement_equivalence(G, H)
    assert rep.verdict == PASS and rep.checks[0].lhs == rep.checks[0].rhs == 1


def test_small_cospectral_pair():
    assert walk_counts(C4K1, 2).counts[2] == 16 and walk_counts(STAR4, 2).counts[2] == 20
    for rep in (
        check_walk_mod4_pair(C4K1, STAR4, 10),
        check_complement_mod4_pair(C4K1, STAR4),
        check_eta_parity_pair(C4K1, STAR4),
        check_walk_complement_equivalence(C4K1, STAR4),
    ):
        assert rep.cospectral and rep.verdict == PASS


def test_self_pairs_and_non_cospectral():
    assert check_walk_mod4_pair(K3, K3).verdict == PASS
    assert check_complement_mod4_pair(G, G).verdict == PASS
    assert check_eta_parity_pair(G, G).verdict == PASS
    assert check_walk_mod4_pair(K3, K4).verdict == NOT_COSPECTRAL
    assert check_complement_mod4_pair(K3, cycle_graph(3).relabel([0, 1, 2])).verdict == PASS
    assert check_walk_complement_equivalence(K3, K4).verdict == INAPPLICABLE
    assert check_eta_parity_pair(K2, empty_graph(2)).verdict == NOT_COSPECTRAL


def test_report_verdicts_and_require_pass():
    rep = CongruenceReport("x", "demo", True, [Check(0, 1, 3, 4)])
    assert rep.verdict == FAIL
    with pytest.raises(InvariantViolation, match="demo"):
        require_pass(rep)
    ok = CongruenceReport("x", "demo", True, [Check(0, 1, 5, 4)])
    assert require_pass(ok) is ok
    assert ok.to_dict()["checks"][0]["pass"] is True


def test_gram_parity_examples():
    assert gram_parity_matrix(K2) == [[1, 1], [1, 1]]
    assert gram_parity_matrix(K1) == [[1]]
    assert gram_parity_matrix(G) == gram_parity_matrix(H)


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=8))
def test_gram_parity_is_integral(g):
    gram_parity_matrix(g)


def test_matrix_lemma_examples():
    a1 = mat_from_graph(K3)
    ones = [[1] * 3 for _ in range(3)]
    rep = verify_matrix_lemmas(a1, ones, ells=(2,), ts=(2,), ms=(1,), odd_ks=(1,))
    assert rep.verdict == PASS
    quad = [c for c in rep.checks if c["lemma"] == "ones-quadratic-mod4"][0]
    assert quad["rhs"] == 12 and (quad["lhs"] - 12) % 4 == 0
    zero = [[0] * 3 for _ in range(3)]
    rep = verify_matrix_lemmas(a1, zero)
    assert all(c["lhs"] == c["rhs"] for c in rep.checks if c["lemma"] != "walk-trace-congruence")


def test_matrix_lemma_preconditions():
    with pytest.raises(DomainError, match="diagonal"):
        verify_matrix_lemmas([[1]], [[0]])
    with pytest.raises(DomainError, match="symmetric"):
        verify_matrix_lemmas([[0, 1], [2, 0]], [[0, 0], [0, 0]])
    with pytest.raises(DomainError, match="t >= 2"):
        verify_matrix_lemmas([[0]], [[0]], ts=(1,))


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_matrix_lemmas_random(seed, n):
    rng = random.Random(seed)
    a1 = random_symmetric(rng, n, 5, even_diagonal=True)
    a2 = random_symmetric(rng, n, 5, even_diagonal=False)
    assert verify_matrix_lemmas(a1, a2).verdict == PASS


def test_matrix_lemmas_fail_without_even_diagonal_hypothesis(monkeypatch):
    # bypass the precondition: with a1 = [[1]] the odd-power diagonal is odd
    from cospectra import congruence

    with pytest.raises(DomainError):
        verify_matrix_lemmas([[1]], [[0]])
    monkeypatch.setattr(congruence, "_check_even_diagonal", lambda a, name: None)
    assert verify_matrix_lemmas([[1]], [[0]]).verdict == FAIL
