"""Verification suites that sweep the identities over whole families of inputs."""

from __future__ import annotations

import random
from collections import Counter

import numpy as np

from . import batch
from .congruence import (
    PASS,
    check_walk_trace_congruence,
    nu2_decompose,
    random_symmetric,
    verify_matrix_lemmas,
    walk_count_mod4,
)
from .errors import InvariantViolation
from .invariants import walk_counts
from .linalg import char_poly, mat_from_graph, power_sums_from_char_poly
from .walks import (
    closed_walk_array,
    palindromic_mask,
    translation_identity_violations,
    verify_translation_converse_lemma,
)

_MASK64 = (1 << 64) - 1


def _as_u64(values: list[int]) -> np.ndarray:
    return np.array([v & _MASK64 for v in values], dtype=np.uint64)


def identity_suite(n_max: int = 6, m_max: int = 16, n_min: int = 1) -> dict:
    """Walk-count trace identities for every labeled graph on ``n_min..n_max`` vertices.

    Two routes, both exact:

    * every graph: traces and walk counts mod 2^64 from wrapping products,
      which fix every residue the identities talk about (mod 4, and the
      2^{t+1} divisibility with t <= 4);
    * ``walk_count_mod4`` and ``check_walk_trace_congruence`` called once per distinct
      (n, char poly, N_0..N_{n-1}), which determines all traces and walk
      counts; every graph's mod-2^64 values are checked against the
      recurrence extension of its class.
    """
    ms = range(1, m_max + 1)
    report = {"n_range": [n_min, n_max], "m_range": [1, m_max], "graphs": 0, "classes": 0, "failures": Counter()}
    for n in range(n_min, n_max + 1):
        total = batch.num_labeled_graphs(n)
        for start in range(0, total, 1 << 14):
            stop = min(start + (1 << 14), total)
            a = batch.labeled_adjacency(n, start, stop)
            traces = batch.matrix_power_traces_mod2_64(a, 4 * m_max)
            walks = batch.walk_counts_mod2_64(a, 2 * m_max)
            _residue_checks(traces, walks, ms, report["failures"])
            phi = batch.char_poly(a)
            init = batch.walk_vectors(a, n).sum(axis=2)
            keys = np.concatenate([phi, init], axis=1)
            uniq, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
            inverse = inverse.reshape(-1)
            for u, row in enumerate(uniq):
                g = batch.labeled_graph(n, start + int(first[u]))
                poly = row[: n + 1].tolist()
                exact_traces = power_sums_from_char_poly(poly, 4 * m_max + 1)
                exact_walks = batch.extend_by_recurrence(poly, row[n + 1:].tolist(), 2 * m_max + 1)
                if poly != char_poly(mat_from_graph(g)):
                    raise InvariantViolation("batched char poly disagrees with the exact one")
                members = inverse == u
                if not (traces[members] == _as_u64(exact_traces)).all():
                    report["failures"]["trace-recurrence"] += 1
                if not (walks[members] == _as_u64(exact_walks)).all():
                    report["failures"]["walk-recurrence"] += 1
                direct = walk_counts(g, m_max).counts
                for m in ms:
                    if walk_count_mod4(g, m) != direct[m] % 4:
                        report["failures"]["walk_count_mod4"] += 1
                    if check_walk_trace_congruence(g, m).verdict != PASS:
                        report["failures"]["check_walk_trace_congruence"] += 1
                report["classes"] += 1
            report["graphs"] += stop - start
    report["failures"] = dict(sorted(report["failures"].items()))
    report["verdict"] = PASS if not report["failures"] else "fail"
    return report


def _residue_checks(traces: np.ndarray, walks: np.ndarray, ms, failures: Counter) -> None:
    """The walk-count identities on mod-2^64 values, one row per graph."""
    with np.errstate(over="ignore"):
        for m in ms:
            dec = nu2_decompose(m)
            q = 2 * dec.k + 1
            shift = np.uint64(dec.t + 1)
            low = np.uint64((1 << (dec.t + 1)) - 1)
            diff = traces[:, 4 * m] - traces[:, 2 * m]
            if (diff & low).any():
                failures["trace-divisibility"] += int(((diff & low) != 0).sum())
            lhs = (walks[:, 2 * m] - walks[:, m]) & np.uint64(3)
            rhs = (diff >> shift) & np.uint64(3)
            failures["walk-trace-congruence"] += int((lhs != rhs).sum())
            # the trace formula scaled by 2^{t+1} so every summand is integral
            s = traces[:, 2 * m].copy()
            for ell in range(dec.t + 2):
                s += traces[:, (1 << ell) * q] << np.uint64(dec.t + 1 - ell)
            if (s & low).any():
                failures["trace-formula-integrality"] += int(((s & low) != 0).sum())
            got = (s >> shift) & np.uint64(3)
            failures["trace-formula"] += int((got != (walks[:, m] & np.uint64(3))).sum())
            if m % 2:
                odd = (traces[:, 2 * m] + traces[:, m]) & np.uint64(3)
                failures["odd-m-trace-form"] += int((odd != (walks[:, m] & np.uint64(3))).sum())
    for k in [k for k, v in failures.items() if v == 0]:
        del failures[k]


def combinatorial_suite(n_max: int = 5, m_max: int = 10, lemma_ms=(4, 8)) -> dict:
    """Closed-walk oracles on every labeled graph with at most ``n_max`` vertices."""
    failures: Counter = Counter()
    stats: Counter = Counter()
    graphs = 0
    for n in range(1, n_max + 1):
        for idx in range(batch.num_labeled_graphs(n)):
            g = batch.labeled_graph(n, idx)
            counts = walk_counts(g, m_max).counts
            graphs += 1
            for m in range(1, m_max + 1):
                arr = closed_walk_array(g, m)
                stats["closed_walks"] += arr.shape[0]
                failures["translation-converse-identities"] += translation_identity_violations(arr)
                pal = int(palindromic_mask(arr).sum())
                if m % 2 == 0:
                    failures["palindromic-count"] += pal != counts[m // 2]
                else:
                    failures["odd-self-converse"] += pal
            for m in lemma_ms:
                rep = verify_translation_converse_lemma(g, m)
                stats["full_orbits"] += rep.full_orbits
                stats["self_converse_orbits"] += rep.self_converse_orbits
                failures["translation-converse-lemma"] += len(rep.violations)
    failures = Counter({k: int(v) for k, v in failures.items() if v})
    return {
        "n_max": n_max,
        "m_max": m_max,
        "graphs": graphs,
        "stats": dict(sorted(stats.items())),
        "failures": dict(sorted(failures.items())),
        "verdict": PASS if not failures else "fail",
    }


def matrix_lemma_suite(count: int = 100, seed: int = 20240531, n_max: int = 6, bound: int = 5) -> dict:
    """Random symmetric integral pairs through ``verify_matrix_lemmas``."""
    rng = random.Random(seed)
    failures: Counter = Counter()
    per_lemma: Counter = Counter()
    checks = 0
    for _ in range(count):
        n = rng.randint(1, n_max)
        a1 = random_symmetric(rng, n, bound, even_diagonal=True)
        a2 = random_symmetric(rng, n, bound, even_diagonal=False)
        rep = verify_matrix_lemmas(a1, a2)
        checks += len(rep.checks)
        for c in rep.checks:
            per_lemma[c["lemma"]] += 1
            if not c["pass"]:
                failures[c["lemma"]] += 1
    return {
        "pairs": count,
        "seed": seed,
        "checks": checks,
        "per_lemma": dict(sorted(per_lemma.items())),
        "failures": dict(sorted(failures.items())),
        "verdict": PASS if not failures else "fail",
    }
