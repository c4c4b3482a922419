"""Exact integer/rational matrix helpers: determinants, solving, Hermite form, integral LLL.

Matrices are lists of rows. Nothing here uses floating point.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def det(a):
    """Determinant. Bareiss elimination for integer input, Gaussian otherwise."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    if all(isinstance(x, int) for r in m for x in r):
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]
    m = [[Fraction(x) for x in r] for r in m]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return result


def solve(a, b):
    """Solve a x = b exactly for square nonsingular a; b a vector."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    cols = [solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def ldl(gram):
    """Exact LDL^T of a symmetric rational matrix: returns (diag, mu) with
    x^T G x = sum_i diag[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.

    Raises ValueError when a pivot is not positive (matrix not positive definite).
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    diag = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        piv = a[i][i]
        if piv <= 0:
            raise ValueError("not positive definite")
        diag.append(piv)
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / piv
        for j in range(i + 1, n):
            f = a[i][j]
            if f:
                for k in range(j, n):
                    a[j][k] -= f * mu[i][k]
                    if k != j:
                        a[k][j] = a[j][k]
    return diag, mu


def leading_minors(gram):
    return [det([row[:k] for row in gram[:k]]) for k in range(1, len(gram) + 1)]


def is_positive_definite(gram):
    try:
        ldl(gram)
    except ValueError:
        return False
    return True


def is_positive_semidefinite(gram):
    """Exact test via symmetric Gaussian elimination with zero-pivot handling."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    alive = list(range(n))
    while alive:
        i = alive[0]
        piv = a[i][i]
        if piv < 0:
            return False
        if piv == 0:
            if any(a[i][j] for j in alive):
                return False
            alive.pop(0)
            continue
        rest = alive[1:]
        for j in rest:
            f = a[j][i] / piv
            if f:
                for k in rest:
                    a[j][k] -= f * a[i][k]
        alive = rest
    return True


def hermite(rows):
    """Row-style Hermite normal form with transform.

    Returns (h, u) with u unimodular and u * rows = h; nonzero rows of h come
    first (upper echelon, positive pivots, entries above pivots reduced) and zero
    rows last.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    h = [list(r) for r in rows]
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h, u


def row_basis(rows):
    """Z-basis (HNF rows) of the lattice spanned by integer row vectors."""
    if not rows:
        return []
    h, _ = hermite(rows)
    return [row for row in h if any(row)]


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def lll_gram(gram, delta=Fraction(3, 4)):
    """Integral LLL reduction of a positive definite integer Gram matrix.

    Returns (reduced_gram, t) where the rows of t are the reduced basis vectors
    in the original coordinates, so reduced_gram = t * gram * t^T.
    """
    n = len(gram)
    g = [list(r) for r in gram]
    t = identity(n)
    if n <= 1:
        return g, t
    num, den = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = g[0][0]
    if d[1] <= 0:
        raise ValueError("not positive definite")

    def reduce(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            t[k] = [x - q * y for x, y in zip(t[k], t[l])]
            gkk = g[k][k] - 2 * q * g[k][l] + q * q * g[l][l]
            for j in range(n):
                if j != k:
                    g[k][j] -= q * g[l][j]
                    g[j][k] = g[k][j]
            g[k][k] = gkk
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        t[k], t[k - 1] = t[k - 1], t[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        b = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            tt = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * tt) // d[k]
            lam[i][k - 1] = (b * tt + lk * lam[i][k]) // d[k + 1]
        d[k] = b

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = g[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise ValueError("not positive definite")
                    d[k + 1] = u
        reduce(k, k - 1)
        if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce(k, l)
            k += 1
    return g, t
