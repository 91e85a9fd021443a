"""Corpus mining: cospectral classes, class suites, DGS certificates, witnesses."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from . import batch
from .congruence import (
    PASS,
    check_complement_mod4_pair,
    check_walk_complement_equivalence,
    check_eta_parity_pair,
    check_walk_mod4_pair,
    require_pass,
)
from .errors import DomainError, InvariantViolation
from .graph import Graph, is_tree, to_graph6, tree_has_perfect_matching, triangle_count
from .invariants import (
    DEFAULT_TRIAL_BOUND,
    complement_char_poly,
    discriminant,
    eta,
    odd_squarefree_check,
    two_adic_valuation,
)
from .linalg import char_poly, mat_from_graph, trace_power

log = logging.getLogger(__name__)

MODES = ("adjacency", "complement", "generalized")
ISO_MAX_N = 10
DEFAULT_MEMBER_LIMIT = 16
SHARD_SIZE = 1 << 15

CERTIFIED_ETA = "certified-thm1.1"
CERTIFIED_DISCRIMINANT = "certified-thm1.5"


# -- isomorphism -------------------------------------------------------------------

def is_isomorphic(g: Graph, h: Graph) -> bool | None:
    """Exact permutation search with degree pruning; ``None`` when ``n`` is too large."""
    if g.n != h.n:
        return False
    if g.n > ISO_MAX_N:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()) or g.num_edges() != h.num_edges():
        return False
    n = g.n

    def signature(x: Graph, v: int):
        return x.degree(v), tuple(sorted(x.degree(u) for u in x.neighbors(v)))

    sig_g = [signature(g, v) for v in range(n)]
    sig_h = [signature(h, v) for v in range(n)]
    if sorted(sig_g) != sorted(sig_h):
        return False
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for w in range(n):
            if used[w] or sig_h[w] != sig_g[v]:
                continue
            if all(g.adjacent(v, order[q]) == h.adjacent(w, mapping[order[q]]) for q in range(pos)):
                mapping[v] = w
                used[w] = True
                if extend(pos + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return extend(0)


# -- grouping ----------------------------------------------------------------------

def charpoly_key(g: Graph, mode: str) -> tuple[int, ...]:
    if mode == "adjacency":
        return tuple(char_poly(mat_from_graph(g)))
    if mode == "complement":
        return tuple(complement_char_poly(g))
    if mode == "generalized":
        return tuple(char_poly(mat_from_graph(g))) + tuple(complement_char_poly(g))
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


@dataclass
class CospectralClassReport:
    key: tuple[int, ...]
    mode: str
    members: list[str]
    size: int = 0
    congruence: dict | None = None
    eta_parities: list[str] = field(default_factory=list)
    nonisomorphic_witness: tuple[str, str] | None = None
    graphs: list[Graph] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.size:
            self.size = len(self.members)

    def to_dict(self):
        return {
            "mode": self.mode,
            "key": list(self.key),
            "size": self.size,
            "members": self.members,
            "congruence": self.congruence,
            "eta_parities": self.eta_parities,
            "nonisomorphic_witness": list(self.nonisomorphic_witness) if self.nonisomorphic_witness else None,
        }


def _key_chunk(args):
    graphs, mode = args
    return [charpoly_key(g, mode) for g in graphs]


def group_by_charpoly(corpus: Iterable[Graph], mode: str = "adjacency", workers: int = 1) -> list[CospectralClassReport]:
    """Partition a corpus by characteristic polynomial; classes sorted by key."""
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    graphs = list(corpus)
    chunks = [graphs[i:i + 256] for i in range(0, len(graphs), 256)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            keys = [k for part in pool.map(_key_chunk, [(c, mode) for c in chunks]) for k in part]
    else:
        keys = [k for c in chunks for k in _key_chunk((c, mode))]
    classes: dict[tuple, list[Graph]] = defaultdict(list)
    for g, k in zip(graphs, keys):
        classes[k].append(g)
    out = []
    for k in sorted(classes, key=lambda k: (len(k), k)):
        members = classes[k]
        if len({g.n for g in members}) != 1:
            raise InvariantViolation(f"class {k} mixes vertex counts")
        out.append(CospectralClassReport(k, mode, [to_graph6(g) for g in members], graphs=members))
    assert sum(c.size for c in out) == len(graphs)
    return out


def _find_witness(graphs: list[Graph]) -> tuple[str, str] | None:
    first = graphs[0]
    for other in graphs[1:]:
        if is_isomorphic(first, other) is False:
            return to_graph6(first), to_graph6(other)
    return None


def run_class_suite(cls: CospectralClassReport, max_power: int | None = None) -> CospectralClassReport:
    """Run every pairwise congruence check on a class; any failure raises."""
    graphs = cls.graphs
    if len(graphs) < 2:
        cls.congruence = {"verdict": "inapplicable", "pairs": 0}
        cls.eta_parities = [eta(g).parity for g in graphs]
        return cls
    counts: Counter = Counter()
    for g, h in combinations(graphs, 2):
        if cls.mode in ("adjacency", "generalized"):
            for check in (check_walk_mod4_pair, check_walk_complement_equivalence):
                rep = require_pass(check(g, h, max_power))
                counts[f"{rep.kind}:{rep.verdict}"] += 1
            for check in (check_complement_mod4_pair, check_eta_parity_pair):
                rep = require_pass(check(g, h))
                counts[f"{rep.kind}:{rep.verdict}"] += 1
        else:
            ok = triangle_count(g) % 2 == triangle_count(h) % 2
            if not ok:
                raise InvariantViolation(f"triangle parity differs for {to_graph6(g)} and {to_graph6(h)}")
            counts["triangle-parity:pass"] += 1
            same = charpoly_key(g, "adjacency") == charpoly_key(h, "adjacency")
            if same:
                for check in (check_walk_mod4_pair, check_eta_parity_pair):
                    rep = require_pass(check(g, h, max_power) if check is check_walk_mod4_pair else check(g, h))
                    counts[f"{rep.kind}:{rep.verdict}"] += 1
    cls.congruence = {"verdict": PASS, "pairs": len(graphs) * (len(graphs) - 1) // 2, "checks": dict(sorted(counts.items()))}
    cls.eta_parities = [eta(g).parity for g in graphs]
    cls.nonisomorphic_witness = _find_witness(graphs)
    return cls


# -- DGS certification ---------------------------------------------------------------

@dataclass
class DgsCertificate:
    graph6: str
    eta: int
    eta_odd: bool
    eta_squarefree: str
    delta: int
    delta_odd_squarefree: str
    verdict: str
    certifications: list[str] = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        if self.verdict == CERTIFIED_DISCRIMINANT:
            assert self.eta_odd and self.delta_odd_squarefree == "yes"
        if self.verdict == CERTIFIED_ETA:
            assert self.eta_odd and self.eta_squarefree == "yes"

    def to_dict(self):
        return {
            "graph6": self.graph6,
            "eta": self.eta,
            "eta_odd": self.eta_odd,
            "eta_squarefree": self.eta_squarefree,
            "delta": self.delta,
            "delta_odd_squarefree": self.delta_odd_squarefree,
            "verdict": self.verdict,
            "certifications": self.certifications,
            "note": self.note,
        }


def squarefree_check(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> str:
    if n == 0:
        return "no"
    if two_adic_valuation(n) >= 2:
        return "no"
    return odd_squarefree_check(n, trial_bound)


def certify_dgs(g: Graph, trial_bound: int = DEFAULT_TRIAL_BOUND) -> DgsCertificate:
    """Apply the two sufficient DGS criteria.

    The eta criterion (odd and squarefree) is reported as the verdict when it
    holds; every criterion that holds is listed in ``certifications``.
    """
    e = eta(g).eta
    eta_odd = e % 2 == 1
    eta_sf = squarefree_check(e, trial_bound)
    delta = discriminant(char_poly(mat_from_graph(g))) if g.n >= 1 else 0
    delta_sf = odd_squarefree_check(delta, trial_bound) if delta else "inapplicable"
    certs = []
    if eta_odd and eta_sf == "yes":
        certs.append(CERTIFIED_ETA)
    if eta_odd and delta_sf == "yes":
        certs.append(CERTIFIED_DISCRIMINANT)
    if certs:
        verdict = certs[0]
    elif eta_odd and "unknown" in (eta_sf, delta_sf):
        verdict = "unknown"
    else:
        verdict = "not-applicable"
    note = ""
    if CERTIFIED_DISCRIMINANT in certs:
        note = "every graph cospectral with this graph (including itself) is DGS"
    elif CERTIFIED_ETA in certs:
        note = "this graph is DGS"
    return DgsCertificate(to_graph6(g), e, eta_odd, eta_sf, delta, delta_sf, verdict, certs, note)


# -- corollary witnesses -----------------------------------------------------------------

def find_tree_matching_witnesses(corpus: Iterable[Graph]) -> dict:
    """Trees with equal complement char polys must agree on having a perfect matching."""
    trees, rejected = [], 0
    for g in corpus:
        if is_tree(g):
            trees.append(g)
        else:
            rejected += 1
    classes = group_by_charpoly(trees, "complement")
    multi = []
    for cls in classes:
        if cls.size < 2:
            continue
        verdicts = [tree_has_perfect_matching(t) for t in cls.graphs]
        if len(set(verdicts)) != 1:
            raise InvariantViolation(f"perfect-matching verdicts differ within class {cls.members}")
        multi.append({"members": cls.members, "perfect_matching": verdicts[0]})
    return {
        "kind": "tree-perfect-matching",
        "trees": len(trees),
        "rejected": rejected,
        "classes": len(classes),
        "multi_member_classes": len(multi),
        "witnesses": multi,
        "vacuous": not multi,
        "verdict": PASS,
    }


def find_triangle_parity_witnesses(corpus: Iterable[Graph]) -> dict:
    """Graphs with equal complement char polys must have equal triangle-count parity."""
    classes = group_by_charpoly(corpus, "complement")
    multi = 0
    for cls in classes:
        if cls.size < 2:
            continue
        multi += 1
        parities = set()
        trace_parities = set()
        for g in cls.graphs:
            parities.add(triangle_count(g) % 2)
            trace_parities.add(trace_power(mat_from_graph(g), 3) // 6 % 2)
        if len(parities) != 1 or len(trace_parities) != 1:
            raise InvariantViolation(f"triangle parity differs within class {cls.members}")
    return {
        "kind": "triangle-parity",
        "graphs": sum(c.size for c in classes),
        "classes": len(classes),
        "multi_member_classes": multi,
        "vacuous": multi == 0,
        "verdict": PASS,
    }


# -- exhaustive labeled runs ---------------------------------------------------------------

LABELED_MAX_N = 7


def _shard_ranges(n: int, shard_size: int) -> list[tuple[int, int]]:
    total = batch.num_labeled_graphs(n)
    return [(s, min(s + shard_size, total)) for s in range(0, total, shard_size)]


def _signature_layout(n: int, max_power: int) -> dict[str, slice]:
    w = max_power + 1
    c = w + n + 1
    return {
        "walks": slice(0, w),
        "complement": slice(w, c),
        "eta": slice(c, c + 1),
        "triangles": slice(c + 1, c + 2),
        "trace_triangles": slice(c + 2, c + 3),
    }


def _shard_summary(args) -> dict:
    """Invariants for one block of labeled graphs, aggregated by key within the block.

    Each graph gets a signature: walk counts mod 4 up to ``max_power``,
    complement char poly mod 4, eta parity, and triangle parity computed
    combinatorially and as ``Tr(A^3)/6``.
    """
    n, start, stop, mode, max_power, member_limit = args
    a = batch.labeled_adjacency(n, start, stop)
    comp = 1 - np.eye(n, dtype=np.int64)[None] - a
    phi = batch.char_poly(a)
    phibar = batch.char_poly(comp)
    vecs = batch.walk_vectors(a, max(max_power + 1, n))
    walks = vecs.sum(axis=2)[:, : max_power + 1]
    w = vecs[:, :n, :].transpose(0, 2, 1)
    canon = batch.sorted_rows(w)
    etas = np.array(batch.check_eta_divisibility(batch.abs_det(w, canon), n), dtype=object)
    eta_par = np.array([int(e) % 2 for e in etas], dtype=np.int64)
    tri = batch.triangle_counts(a)
    tr3 = batch.trace_cube(a)
    if (tr3 % 6).any():
        raise InvariantViolation("Tr(A^3) not divisible by 6 in shard")
    if mode == "adjacency":
        keys = phi
    elif mode == "complement":
        keys = phibar
    else:
        keys = np.concatenate([phi, phibar], axis=1)
    sig = np.concatenate(
        [walks % 4, phibar % 4, eta_par[:, None], (tri % 2)[:, None], ((tr3 // 6) % 2)[:, None]], axis=1
    )
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    flat_canon = canon.reshape(canon.shape[0], -1)
    classes = {}
    for u in range(len(uniq)):
        rows = order[bounds[u]:bounds[u + 1]]
        sigs = Counter(map(tuple, sig[rows].tolist()))
        distinct: dict[bytes, int] = {}
        for r in rows:
            b = flat_canon[r].tobytes()
            if b not in distinct:
                distinct[b] = start + int(r)
                if len(distinct) == 2:
                    break
        classes[tuple(uniq[u].tolist())] = {
            "size": len(rows),
            "rep_sig": tuple(sig[rows[0]].tolist()),
            "samples": [start + int(r) for r in rows[:member_limit]],
            "distinct": distinct,
            "sigs": sigs,
        }
    return {"n": n, "start": start, "classes": classes}


def _merge(partials: list[dict], member_limit: int) -> dict:
    """Combine shard maps; shards are folded in index order so the result is worker-independent."""
    merged: dict = {}
    for part in sorted(partials, key=lambda p: (p["n"], p["start"])):
        for key, info in part["classes"].items():
            slot = merged.get((part["n"], key))
            if slot is None:
                merged[(part["n"], key)] = {**info, "sigs": Counter(info["sigs"]), "distinct": dict(info["distinct"])}
                continue
            slot["size"] += info["size"]
            slot["samples"] = (slot["samples"] + info["samples"])[:member_limit]
            for b, idx in info["distinct"].items():
                if len(slot["distinct"]) < 2 and b not in slot["distinct"]:
                    slot["distinct"][b] = idx
            slot["sigs"].update(info["sigs"])
    return merged


def _class_violations(sigs: Counter, rep: tuple, layout: dict[str, slice], mode: str) -> dict[str, int]:
    def differ(sl: slice) -> int:
        return sum(c for s, c in sigs.items() if s[sl] != rep[sl])

    out: dict[str, int] = {}
    if mode in ("adjacency", "generalized"):
        out["walk_counts_mod4"] = differ(layout["walks"])
        out["complement_charpoly_mod4"] = differ(layout["complement"])
        out["eta_parity"] = differ(layout["eta"])
        out["walks_iff_complement"] = sum(
            c for s, c in sigs.items()
            if (s[layout["walks"]] == rep[layout["walks"]]) != (s[layout["complement"]] == rep[layout["complement"]])
        )
    if mode in ("complement", "generalized"):
        out["triangle_parity"] = differ(layout["triangles"])
        out["trace_triangle_parity"] = differ(layout["trace_triangles"])
    return out


def mine_exhaustive(
    n_max: int = LABELED_MAX_N,
    mode: str = "adjacency",
    max_power: int | None = None,
    workers: int = 1,
    member_limit: int = DEFAULT_MEMBER_LIMIT,
    n_min: int = 1,
    shard_size: int = SHARD_SIZE,
) -> tuple[list[dict], dict]:
    """Group every labeled graph on ``n_min..n_max`` vertices and check each class.

    Every member is compared with the class's lowest-index member. All the
    checked relations are equalities of residues, so this covers every pair.
    ``max_power`` defaults to ``2n``. Returns ``(class_records, summary)``;
    both are independent of ``workers``.
    """
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not 1 <= n_min <= n_max <= LABELED_MAX_N:
        raise DomainError(f"exhaustive labeled runs need 1 <= n_min <= n_max <= {LABELED_MAX_N}")
    if max_power is not None and max_power < 1:
        raise DomainError("max_power must be positive")

    def horizon(n: int) -> int:
        return 2 * n if max_power is None else max_power

    jobs = [
        (n, s, e, mode, horizon(n), member_limit)
        for n in range(n_min, n_max + 1)
        for s, e in _shard_ranges(n, shard_size)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            partials = list(pool.map(_shard_summary, jobs))
    else:
        partials = [_shard_summary(j) for j in jobs]
    merged = _merge(partials, member_limit)

    records = []
    totals: Counter = Counter()
    graphs = 0
    for n, key in sorted(merged):
        info = merged[(n, key)]
        graphs += info["size"]
        layout = _signature_layout(n, horizon(n))
        multi = info["size"] > 1
        viol = _class_violations(info["sigs"], info["rep_sig"], layout, mode) if multi else {}
        totals.update(viol)
        distinct = sorted(info["distinct"].values())
        witness = [to_graph6(batch.labeled_graph(n, i)) for i in distinct] if len(distinct) == 2 else None
        records.append({
            "mode": mode,
            "n": n,
            "key": list(key),
            "size": info["size"],
            "members": [to_graph6(batch.labeled_graph(n, i)) for i in info["samples"]],
            "members_truncated": info["size"] > len(info["samples"]),
            "eta_parity": info["rep_sig"][layout["eta"].start],
            "violations": viol,
            "verdict": "inapplicable" if not multi else ("pass" if not any(viol.values()) else "fail"),
            "nonisomorphic_witness": witness,
        })
    summary = {
        "mode": mode,
        "n_range": [n_min, n_max],
        "graphs": graphs,
        "classes": len(records),
        "multi_member_classes": sum(1 for r in records if r["size"] > 1),
        "violations": dict(sorted(totals.items())),
        "total_violations": sum(totals.values()),
    }
    summary["verdict"] = "pass" if summary["total_violations"] == 0 else "fail"
    expected = sum(batch.num_labeled_graphs(n) for n in range(n_min, n_max + 1))
    if graphs != expected:
        raise InvariantViolation(f"partition covers {graphs} graphs, expected {expected}")
    return records, summary
