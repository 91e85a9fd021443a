"""Walk counts, walk matrix, eta, discriminant and complement char polys."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from math import isqrt

from .errors import DomainError, InvariantViolation
from .graph import Graph, complement, to_graph6
from .linalg import (
    Matrix,
    Poly,
    char_poly,
    det,
    mat_from_graph,
    mat_vec,
    poly_derivative,
    poly_taylor_shift,
    poly_trim,
    transpose,
)

DEFAULT_TRIAL_BOUND = 10**6


def graph_id(g: Graph) -> str:
    return to_graph6(g) if g.n <= 62 else f"n{g.n}"


@dataclass(frozen=True)
class WalkProfile:
    graph_id: str
    counts: tuple[int, ...]

    @property
    def max_power(self) -> int:
        return len(self.counts) - 1

    def to_dict(self):
        return {"graph": self.graph_id, "max_power": self.max_power, "counts": list(self.counts)}


@dataclass(frozen=True)
class EtaCertificate:
    graph_id: str
    det_walk: int
    eta: int
    parity: str

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class DiscriminantReport:
    poly_id: str
    delta: int
    two_adic_valuation: int | None
    odd_part_squarefree: str
    trial_bound: int

    def to_dict(self):
        return asdict(self)


def walk_vectors(g: Graph, count: int) -> list[list[int]]:
    """``[e, Ae, A^2 e, ...]``, ``count`` vectors, by repeated mat-vec."""
    a = mat_from_graph(g)
    v = [1] * g.n
    out = []
    for _ in range(count):
        out.append(v)
        v = mat_vec(a, v)
    return out


def walk_counts(g: Graph, max_power: int | None = None) -> WalkProfile:
    if max_power is None:
        max_power = 2 * g.n - 1
    if max_power < 0:
        raise DomainError("max_power must be nonnegative")
    counts = tuple(sum(v) for v in walk_vectors(g, max_power + 1))
    return WalkProfile(graph_id(g), counts)


def walk_matrix(g: Graph) -> Matrix:
    return transpose(walk_vectors(g, g.n)) if g.n else []


def eta(g: Graph) -> EtaCertificate:
    d = det(walk_matrix(g))
    scale = 1 << (g.n // 2)
    if d % scale:
        raise InvariantViolation(f"2^{g.n // 2} does not divide det W = {d}")
    e = abs(d) // scale
    return EtaCertificate(graph_id(g), d, e, "odd" if e % 2 else "even")


# -- discriminant ------------------------------------------------------------

def sylvester_matrix(p: Poly, q: Poly) -> Matrix:
    m, k = len(p) - 1, len(q) - 1
    size = m + k
    rows = []
    hi_p, hi_q = p[::-1], q[::-1]
    for i in range(k):
        rows.append([0] * i + hi_p + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hi_q + [0] * (size - k - 1 - i))
    return rows


def resultant(p: Poly, q: Poly) -> int:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return 0
    if len(p) == 1 and len(q) == 1:
        return 1
    return det(sylvester_matrix(p, q))


def discriminant(p: Poly) -> int:
    p = poly_trim(p)
    n = len(p) - 1
    if n < 1:
        raise DomainError("discriminant needs degree >= 1")
    res = resultant(p, poly_derivative(p))
    lead = p[-1]
    q, r = divmod(res, lead)
    if r:
        raise InvariantViolation("resultant not divisible by the leading coefficient")
    return (-1) ** (n * (n - 1) // 2) * q


@lru_cache(maxsize=4)
def _odd_primes_upto(bound: int) -> tuple[int, ...]:
    if bound < 3:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i in range(3, bound + 1) if sieve[i])


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise DomainError("2-adic valuation of 0 is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def odd_squarefree_check(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> str:
    """Is ``n`` free of odd prime squares? Returns ``"yes"``, ``"no"`` or ``"unknown"``."""
    if n == 0:
        raise DomainError("discriminant zero: repeated eigenvalues, criterion inapplicable")
    if trial_bound < 2:
        raise DomainError("trial_bound must be at least 2")
    r = abs(n) >> two_adic_valuation(n)
    for p in _odd_primes_upto(trial_bound):
        if p * p > r:
            return "yes"  # r is 1 or prime
        if r % p == 0:
            r //= p
            if r % p == 0:
                return "no"
    if r == 1 or r <= trial_bound * trial_bound:
        return "yes"
    s = isqrt(r)
    if s * s == r:
        return "no"
    if r < trial_bound**3:
        return "yes"  # at most two distinct primes above the bound
    return "unknown"


def discriminant_report(p: Poly, trial_bound: int = DEFAULT_TRIAL_BOUND, poly_id: str = "") -> DiscriminantReport:
    d = discriminant(p)
    if d == 0:
        return DiscriminantReport(poly_id, 0, None, "inapplicable", trial_bound)
    return DiscriminantReport(poly_id, d, two_adic_valuation(d), odd_squarefree_check(d, trial_bound), trial_bound)


# -- complement characteristic polynomial ------------------------------------

def complement_poly_via_walks(phi: Poly, profile: WalkProfile | list[int] | tuple[int, ...]) -> Poly:
    """Recover the complement's char poly from ``phi`` and walk counts.

    Uses the generating series of the walk counts: with ``r(t) = t^n phi(1/t)``,
    ``(-1)^n t^n phibar(-(t+1)/t) = t r(t) H(t) + r(t)`` as power series.
    """
    counts = list(profile.counts if isinstance(profile, WalkProfile) else profile)
    phi = poly_trim(phi)
    n = len(phi) - 1
    if n < 0 or phi[-1] != 1:
        raise DomainError("phi must be monic")
    if len(counts) < n + 1:
        raise DomainError(f"walk profile needs counts for m = 0..{n}, got {len(counts)}")
    rev = phi[::-1]  # r(t): coefficient of t^k is phi[n-k]
    # Truncated to degree n + 1; the t^(n+1) coefficient must vanish.
    rhs = [0] * (n + 2)
    for k in range(n + 2):
        acc = rev[k] if k <= n else 0
        for i in range(min(k, n + 1)):
            j = k - 1 - i
            if j < len(counts):
                acc += rev[i] * counts[j]
        rhs[k] = acc
    if rhs[n + 1] != 0:
        raise InvariantViolation("degree n+1 coefficient of the walk series identity is nonzero")
    # (-1)^n L(t) = sum_j e_j (-1)^j t^(n-j) where phibar(x) = sum_j e_j (x+1)^j
    sign = (-1) ** n
    shifted = [sign * rhs[n - j] * (-1) ** j for j in range(n + 1)]
    return poly_taylor_shift(shifted, 1)


def complement_char_poly(g: Graph) -> Poly:
    direct = char_poly(mat_from_graph(complement(g)))
    phi = char_poly(mat_from_graph(g))
    via = complement_poly_via_walks(phi, walk_counts(g, g.n))
    if via != direct:
        raise InvariantViolation(f"complement char poly mismatch for {graph_id(g)}: {direct} vs {via}")
    return direct
