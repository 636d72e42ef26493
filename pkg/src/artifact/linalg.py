"""Dense exact linear algebra over Scalar or RatFunc entries.

Matrices are lists of row lists. Everything here is generic over any field
whose elements support +, -, *, / and compare against 0 via bool/==.
"""

from __future__ import annotations

from gmpy2 import mpq

from .scalar import RatFunc, as_ratfunc


def mat_identity(n, one=mpq(1), zero=mpq(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_zero(rows, cols, zero=mpq(0)):
    return [[zero] * cols for _ in range(rows)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    bt = [[b[i][j] for i in range(k)] for j in range(m)]
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                term = x * y
                acc = term if acc is None else acc + term
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not x == y:
                return False
    return True


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_inverse(a, one=None, zero=None):
    """Gauss-Jordan inverse; raises ValueError on singular input."""
    n = len(a)
    if n == 0:
        return []
    sample = a[0][0]
    if one is None:
        one = sample * 0 + 1 if not isinstance(sample, RatFunc) else as_ratfunc(1)
    if zero is None:
        zero = sample * 0 if not isinstance(sample, RatFunc) else as_ratfunc(0)
    m = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = one / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r == col:
                continue
            f = m[r][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve_right(a, b):
    """Solve a @ x = b for x (b a matrix of columns); square nonsingular a."""
    return mat_mul(mat_inverse(a), b)


def det_bareiss(a):
    """Fraction-free determinant for Scalar entries (works for any integral
    domain with exact division via /)."""
    n = len(a)
    if n == 0:
        return mpq(1)
    m = [list(row) for row in a]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            piv = None
            for r in range(k + 1, n):
                if m[r][k]:
                    piv = r
                    break
            if piv is None:
                return m[0][0] * 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else num / prev
            m[i][k] = m[i][k] * 0
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def char_poly(a):
    """Characteristic polynomial det(x*I - A) over mpq entries, low degree
    first, via Hessenberg reduction. Returns a tuple of mpq, degree n monic."""
    n = len(a)
    if n == 0:
        return (mpq(1),)
    h = [[mpq(x) for x in row] for row in a]
    for col in range(n - 2):
        piv = None
        for r in range(col + 1, n):
            if h[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != col + 1:
            h[col + 1], h[piv] = h[piv], h[col + 1]
            for row in h:
                row[col + 1], row[piv] = row[piv], row[col + 1]
        inv = 1 / h[col + 1][col]
        for r in range(col + 2, n):
            f = h[r][col] * inv
            if f != 0:
                h[r] = [x - f * y for x, y in zip(h[r], h[col + 1])]
                for row in h:
                    row[col + 1] += f * row[r]
    # charpoly of Hessenberg matrix by the standard recurrence:
    # p_0 = 1; p_k = (x - h[k-1][k-1]) p_{k-1}
    #              - sum_{i<k-1} h[i][k-1] (prod of subdiagonals) p_i
    polys = [(mpq(1),)]
    for k in range(1, n + 1):
        x_minus = (-h[k - 1][k - 1], mpq(1))
        p = _poly_mul_q(x_minus, polys[k - 1])
        prod = mpq(1)
        for i in range(k - 2, -1, -1):
            prod *= h[i + 1][i]
            coeff = h[i][k - 1] * prod
            if coeff != 0:
                p = _poly_sub_q(p, _poly_scale_q(polys[i], coeff))
        polys.append(p)
    return polys[n]


def _poly_mul_q(a, b):
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _poly_sub_q(a, b):
    out = list(a) + [mpq(0)] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return tuple(out)


def _poly_scale_q(a, c):
    return tuple(x * c for x in a)


def poly_squarefree(p):
    """True iff gcd(p, p') is constant (all roots simple)."""
    from .scalar import poly_gcd, poly_trim
    p = poly_trim(p)
    deriv = poly_trim(tuple(p[i] * i for i in range(1, len(p))))
    g = poly_gcd(p, deriv)
    return len(g) == 1
