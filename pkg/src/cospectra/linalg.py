"""Dense matrices and polynomials over Python's arbitrary-precision ints.

Matrices are lists of row lists. Polynomials are coefficient lists indexed
by degree, with the zero polynomial represented as ``[]``.

``char_poly`` returns the monic ``det(xI - A)``. Printed expansions for odd
``n`` that lead with ``-x^n`` are ``(-1)^n`` times this.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

from .errors import DomainError, InvariantViolation

if TYPE_CHECKING:
    from .graph import Graph

Matrix = list[list[int]]
Poly = list[int]


def _check_square(a: Sequence[Sequence[int]]) -> int:
    n = len(a)
    for i, row in enumerate(a):
        if len(row) != n:
            raise DomainError(f"matrix is not square: row {i} has {len(row)} entries, n={n}")
    return n


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(n: int) -> Matrix:
    return [[0] * n for _ in range(n)]


def mat_from_graph(g: Graph) -> Matrix:
    return g.to_matrix()


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise DomainError(f"dimension mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Sequence[int]) -> list[int]:
    if a and len(a[0]) != len(v):
        raise DomainError(f"dimension mismatch: {len(a[0])} columns, vector of length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise DomainError("dimension mismatch in mat_add")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: int, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def all_ones_quadratic(a: Matrix) -> int:
    """``e^T a e``, i.e. the sum of all entries."""
    return sum(sum(row) for row in a)


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def mat_pow(a: Matrix, m: int) -> Matrix:
    if m < 0:
        raise DomainError("negative matrix power")
    n = _check_square(a)
    result = identity(n)
    base = a
    while m:
        if m & 1:
            result = mat_mul(result, base)
        m >>= 1
        if m:
            base = mat_mul(base, base)
    return result


class PowerCache:
    """Memo of ``a^(2^j)`` for one matrix, used to assemble arbitrary powers."""

    def __init__(self, a: Matrix):
        self.n = _check_square(a)
        self._squares = [a]

    def square(self, j: int) -> Matrix:
        while len(self._squares) <= j:
            last = self._squares[-1]
            self._squares.append(mat_mul(last, last))
        return self._squares[j]

    def power(self, m: int) -> Matrix:
        if m < 0:
            raise DomainError("negative matrix power")
        result = None
        j = 0
        while m:
            if m & 1:
                sq = self.square(j)
                result = sq if result is None else mat_mul(result, sq)
            m >>= 1
            j += 1
        return identity(self.n) if result is None else result


def trace_power(a: Matrix, m: int, cache: PowerCache | None = None) -> int:
    if m < 0:
        raise DomainError("trace_power needs m >= 0")
    cache = cache or PowerCache(a)
    if m == 0:
        return cache.n
    # Tr(XY) without forming XY: split m into the top binary power and the rest.
    top = m.bit_length() - 1
    rest = m - (1 << top)
    x = cache.square(top)
    if rest == 0:
        return trace(x)
    y = cache.power(rest)
    return sum(x[i][k] * y[k][i] for i in range(cache.n) for k in range(cache.n))


def det(a: Matrix) -> int:
    """Fraction-free Bareiss elimination with row pivoting."""
    n = _check_square(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                num = ri[j] * pivot - mik * rk[j]
                q, r = divmod(num, prev)
                if r:
                    raise InvariantViolation("Bareiss division was not exact")
                ri[j] = q
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def char_poly(a: Matrix) -> Poly:
    """Division-free Berkowitz algorithm; returns monic det(xI - a)."""
    n = _check_square(a)
    # Coefficients in decreasing degree while building.
    p = [1]
    for r in range(n):
        arr = a[r][r]
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        sub = [a[i][:r] for i in range(r)]
        # Toeplitz column: 1, -a_rr, -R C, -R S C, ..., -R S^{r-1} C
        toep = [1, -arr]
        v = col
        for _ in range(r):
            toep.append(-sum(x * y for x, y in zip(row, v)))
            v = mat_vec(sub, v) if r else v
        q = []
        for i in range(r + 2):
            q.append(sum(toep[i - j] * p[j] for j in range(min(i, r) + 1) if i - j < len(toep)))
        p = q
    return p[::-1]


def char_poly_faddeev(a: Matrix) -> Poly:
    """Faddeev-LeVerrier recursion; every division is checked to be exact."""
    n = _check_square(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = zeros(n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        t = sum(a[i][j] * mk[j][i] for i in range(n) for j in range(n))
        q, r = divmod(-t, k)
        if r:
            raise InvariantViolation(f"Faddeev-LeVerrier division by {k} not exact")
        coeffs[n - k] = q
    return coeffs


def split_even_odd(a: Matrix) -> tuple[Matrix, Matrix]:
    """Write ``a = a1 + 2*a2`` with ``a1`` a 0/1 adjacency matrix."""
    n = _check_square(a)
    if not is_symmetric(a):
        raise DomainError("split_even_odd needs a symmetric matrix")
    for i in range(n):
        if a[i][i] % 2:
            raise DomainError(f"diagonal entry ({i}, {i}) = {a[i][i]} is odd")
    a1 = [[x % 2 if i != j else 0 for j, x in enumerate(row)] for i, row in enumerate(a)]
    a2 = [[(x - y) // 2 for x, y in zip(ra, r1)] for ra, r1 in zip(a, a1)]
    return a1, a2


# -- polynomials -------------------------------------------------------------

def poly_trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p: Poly, q: Poly) -> Poly:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, [-c for c in q])


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_derivative(p: Poly) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_eval(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_matrix(p: Poly, a: Matrix) -> Matrix:
    n = _check_square(a)
    acc = zeros(n)
    for c in reversed(p):
        acc = mat_mul(acc, a)
        for i in range(n):
            acc[i][i] += c
    return acc


def poly_taylor_shift(p: Poly, s: int) -> Poly:
    """Coefficients of ``p(x + s)``."""
    out = list(p)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += s * out[j + 1]
    return poly_trim(out)


def poly_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if c == 0:
            continue
        mag = abs(c)
        body = "" if (mag == 1 and d) else str(mag)
        if d:
            body += var if d == 1 else f"{var}^{d}"
        terms.append(("-" if c < 0 else "+", body))
    head_sign, head = terms[0]
    s = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def power_sums_from_char_poly(p: Poly, count: int) -> list[int]:
    """Newton's identities: ``p_m = sum(lambda_i^m)`` for ``m < count``."""
    n = len(p) - 1
    if n < 0 or p[n] != 1:
        raise DomainError("power sums need a monic polynomial")
    # e_k = (-1)^k * coefficient of x^(n-k)
    e = [(-1) ** k * p[n - k] for k in range(n + 1)]
    sums = []
    for m in range(count):
        if m == 0:
            sums.append(n)
            continue
        s = (-1) ** (m - 1) * m * e[m] if m <= n else 0
        for i in range(1, min(m, n + 1)):
            s += (-1) ** (i - 1) * e[i] * sums[m - i]
        sums.append(s)
    return sums
