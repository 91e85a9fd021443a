"""Executable forms of the mod-4 congruences for cospectral graphs.

Verdicts use a fixed vocabulary: ``pass``, ``fail``, ``not-cospectral``,
``inapplicable``. Divisibility facts that the congruences rely on raise
``InvariantViolation`` instead of being reported.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantViolation
from .graph import Graph
from .invariants import complement_char_poly, eta, graph_id, walk_counts, walk_matrix
from .linalg import (
    Matrix,
    PowerCache,
    all_ones_quadratic,
    char_poly,
    is_symmetric,
    mat_add,
    mat_from_graph,
    mat_mul,
    mat_scale,
    trace_power,
    transpose,
)

PASS, FAIL, NOT_COSPECTRAL, INAPPLICABLE = "pass", "fail", "not-cospectral", "inapplicable"


@dataclass(frozen=True)
class Nu2Decomposition:
    m: int
    t: int
    k: int


def nu2_decompose(m: int) -> Nu2Decomposition:
    """Write ``m = 2^t (2k + 1)``."""
    if m < 1:
        raise DomainError("nu2_decompose needs m >= 1")
    t = (m & -m).bit_length() - 1
    return Nu2Decomposition(m, t, ((m >> t) - 1) // 2)


@dataclass
class Check:
    index: int
    lhs: int
    rhs: int
    modulus: int

    @property
    def passed(self) -> bool:
        return (self.lhs - self.rhs) % self.modulus == 0

    def to_dict(self):
        d = asdict(self)
        d["pass"] = self.passed
        return d


@dataclass
class CongruenceReport:
    pair_id: str
    kind: str
    cospectral: bool
    checks: list[Check] = field(default_factory=list)
    status: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.status is not None:
            return self.status
        return PASS if all(c.passed for c in self.checks) else FAIL

    def to_dict(self):
        return {
            "pair": self.pair_id,
            "kind": self.kind,
            "cospectral": self.cospectral,
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }


def require_pass(report: CongruenceReport) -> CongruenceReport:
    if report.verdict == FAIL:
        bad = [c.to_dict() for c in report.checks if not c.passed][:5]
        raise InvariantViolation(f"{report.kind} failed for {report.pair_id}: {bad}")
    return report


def _pair_id(g: Graph, h: Graph) -> str:
    return f"{graph_id(g)}|{graph_id(h)}"


def cospectral(g: Graph, h: Graph) -> bool:
    return g.n == h.n and char_poly(mat_from_graph(g)) == char_poly(mat_from_graph(h))


# -- single-matrix identities ----------------------------------------------------

def walk_trace_sides(a: Matrix, m: int, cache: PowerCache | None = None) -> tuple[int, int]:
    """Return ``(e^T A^{2m} e - e^T A^m e, Tr(A^{4m} - A^{2m}) / 2^{t+1})`` exactly."""
    dec = nu2_decompose(m)
    cache = cache or PowerCache(a)
    diff = trace_power(a, 4 * m, cache) - trace_power(a, 2 * m, cache)
    q, r = divmod(diff, 1 << (dec.t + 1))
    if r:
        raise InvariantViolation(f"2^{dec.t + 1} does not divide Tr(A^{4 * m}) - Tr(A^{2 * m}) = {diff}")
    lhs = all_ones_quadratic(cache.power(2 * m)) - all_ones_quadratic(cache.power(m))
    return lhs, q


def check_walk_trace_congruence(g: Graph, m: int) -> CongruenceReport:
    lhs, rhs = walk_trace_sides(mat_from_graph(g), m)
    return CongruenceReport(graph_id(g), "walk-trace-congruence", True, [Check(m, lhs, rhs, 4)])


def walk_count_formula(traces: dict[int, int], m: int) -> Fraction:
    """Trace expression for ``e^T A^m e`` mod 4, ``traces[j] = Tr(A^j)``.

    Individual summands may be half-integral; only the total is integral.
    """
    dec = nu2_decompose(m)
    q = 2 * dec.k + 1
    total = Fraction(traces[2 * m], 1 << (dec.t + 1))
    for ell in range(dec.t + 2):
        total += Fraction(traces[(1 << ell) * q], 1 << ell)
    return total


def walk_count_mod4(g: Graph, m: int) -> int:
    if m < 0:
        raise DomainError("m must be nonnegative")
    if m == 0:
        return g.n % 4
    a = mat_from_graph(g)
    cache = PowerCache(a)
    dec = nu2_decompose(m)
    q = 2 * dec.k + 1
    needed = {2 * m} | {(1 << ell) * q for ell in range(dec.t + 2)}
    traces = {j: trace_power(a, j, cache) for j in needed}
    total = walk_count_formula(traces, m)
    if total.denominator != 1:
        raise InvariantViolation(f"trace formula for m={m} is not integral: {total}")
    residue = total.numerator % 4
    direct = walk_counts(g, m).counts[m] % 4
    if residue != direct:
        raise InvariantViolation(f"{graph_id(g)}: trace formula gives {residue} mod 4, N_{m} = {direct} mod 4")
    if m % 2:
        odd_form = (trace_power(a, 2 * m, cache) + trace_power(a, m, cache)) % 4
        if odd_form != direct:
            raise InvariantViolation(f"{graph_id(g)}: odd-m trace form gives {odd_form}, N_{m} = {direct} mod 4")
    return residue


# -- pair checks ---------------------------------------------------------------

def check_walk_mod4_pair(g: Graph, h: Graph, max_power: int | None = None) -> CongruenceReport:
    rep = CongruenceReport(_pair_id(g, h), "walk-counts-mod4", cospectral(g, h))
    if not rep.cospectral:
        rep.status = NOT_COSPECTRAL
        return rep
    if max_power is None:
        max_power = 2 * g.n
    ng = walk_counts(g, max_power).counts
    nh = walk_counts(h, max_power).counts
    rep.checks = [Check(m, ng[m] % 4, nh[m] % 4, 4) for m in range(max_power + 1)]
    rep.notes.append(
        f"checked m <= {max_power}; larger m follow from the shared char-poly recurrence (Cayley-Hamilton)"
    )
    return rep


def check_complement_mod4_pair(g: Graph, h: Graph) -> CongruenceReport:
    rep = CongruenceReport(_pair_id(g, h), "complement-charpoly-mod4", cospectral(g, h))
    if not rep.cospectral:
        rep.status = NOT_COSPECTRAL
        return rep
    pg, ph = complement_char_poly(g), complement_char_poly(h)
    rep.checks = [Check(i, x % 4, y % 4, 4) for i, (x, y) in enumerate(zip(pg, ph))]
    return rep


def check_eta_parity_pair(g: Graph, h: Graph) -> CongruenceReport:
    rep = CongruenceReport(_pair_id(g, h), "eta-parity", cospectral(g, h))
    if not rep.cospectral:
        rep.status = NOT_COSPECTRAL
        return rep
    rep.checks = [Check(0, eta(g).eta % 2, eta(h).eta % 2, 2)]
    return rep


def gram_parity_matrix(g: Graph) -> list[list[int]]:
    """``W^T W / 2`` (even n) or ``W_1^T W / 2`` (odd n, first column doubled), mod 2."""
    w = walk_matrix(g)
    left = [row[:] for row in w]
    if g.n % 2:
        for row in left:
            row[0] *= 2
    gram = mat_mul(transpose(left), w)
    out = []
    for i, row in enumerate(gram):
        half = []
        for j, x in enumerate(row):
            if x % 2:
                raise InvariantViolation(f"Gram entry ({i}, {j}) = {x} is odd")
            half.append(x // 2 % 2)
        out.append(half)
    return out


def check_walk_complement_equivalence(g: Graph, h: Graph, max_power: int | None = None) -> CongruenceReport:
    """Walk counts agree mod 4 iff complement char polys agree mod 4."""
    rep = CongruenceReport(_pair_id(g, h), "walks-iff-complement", cospectral(g, h))
    if not rep.cospectral:
        rep.status = INAPPLICABLE
        return rep
    s1 = check_walk_mod4_pair(g, h, max_power).verdict == PASS
    s2 = check_complement_mod4_pair(g, h).verdict == PASS
    rep.checks = [Check(0, int(s1), int(s2), 2)]
    rep.notes.append(f"walk statement {s1}, complement statement {s2}")
    if s1 != s2:
        raise InvariantViolation(f"{rep.pair_id}: equivalent statements disagree ({s1} vs {s2})")
    return rep


# -- matrix lemmas ---------------------------------------------------------------

def _check_even_diagonal(a: Matrix, name: str) -> None:
    for i in range(len(a)):
        if a[i][i] % 2:
            raise DomainError(f"{name} diagonal entry ({i}, {i}) = {a[i][i]} is odd")


@dataclass
class LemmaReport:
    checks: list[dict] = field(default_factory=list)

    def add(self, lemma: str, param: int, lhs: int, rhs: int, modulus: int | None):
        ok = lhs == rhs if modulus is None else (lhs - rhs) % modulus == 0
        self.checks.append(
            {"lemma": lemma, "param": param, "lhs": lhs, "rhs": rhs, "modulus": modulus, "pass": ok}
        )

    @property
    def verdict(self) -> str:
        return PASS if all(c["pass"] for c in self.checks) else FAIL

    def to_dict(self):
        return {"verdict": self.verdict, "checks": self.checks}


def verify_matrix_lemmas(
    a1: Matrix,
    a2: Matrix,
    ells: Sequence[int] = (2, 4, 6),
    ts: Sequence[int] = (2, 3),
    ms: Sequence[int] = (1, 2, 4),
    odd_ks: Sequence[int] = (1, 2, 3, 4),
) -> LemmaReport:
    """Check the parity lemmas on symmetric integral ``a1`` (even diagonal) and ``a2``."""
    for name, a in (("a1", a1), ("a2", a2)):
        if not is_symmetric(a):
            raise DomainError(f"{name} must be symmetric")
    if len(a1) != len(a2):
        raise DomainError("a1 and a2 must have the same size")
    _check_even_diagonal(a1, "a1")
    rep = LemmaReport()
    c1 = PowerCache(a1)
    combined = mat_add(a1, mat_scale(2, a2))
    cc = PowerCache(combined)
    # odd powers of an even-diagonal symmetric matrix keep an even diagonal
    for k in odd_ks:
        p = c1.power(2 * k + 1)
        odd_entries = sum(p[i][i] % 2 for i in range(len(p)))
        rep.add("odd-power-diagonal-even", k, odd_entries, 0, None)
    rep.add("trace-product-even", 0, sum(a1[i][j] * a2[j][i] for i in range(len(a1)) for j in range(len(a1))), 0, 2)
    for ell in ells:
        if ell % 2:
            raise DomainError("ell must be even")
        rep.add("ones-quadratic-mod4", ell, all_ones_quadratic(cc.power(ell)), all_ones_quadratic(c1.power(ell)), 4)
    for t in ts:
        if t < 2:
            raise DomainError("trace power congruence is stated for t >= 2")
        e = 1 << t
        rep.add("trace-power-mod-2^(t+2)", t, trace_power(combined, e, cc), trace_power(a1, e, c1), 1 << (t + 2))
    for m in ms:
        lhs, rhs = walk_trace_sides(a1, m, c1)
        rep.add("walk-trace-congruence", m, lhs, rhs, 4)
    return rep


def random_symmetric(rng: random.Random, n: int, bound: int, even_diagonal: bool) -> Matrix:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rng.randint(-bound, bound)
            if i == j and even_diagonal:
                x = 2 * rng.randint(-(bound // 2), bound // 2)
            a[i][j] = a[j][i] = x
    return a
