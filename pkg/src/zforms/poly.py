"""Dense univariate polynomials over Q, coefficient lists with constant term first."""

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p, q):
    """Division with remainder over Q."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(a) for a in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    quo = [Fraction(0)] * max(len(r) - dq, 1)
    while len(r) - 1 >= dq and r:
        c = r[-1] / lead
        k = len(r) - 1 - dq
        quo[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = trim(r)
    return trim(quo), r


def rem(p, q):
    return divmod_poly(p, q)[1]


def gcd(p, q):
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_shift(p, t):
    """Return p(x + t)."""
    out = []
    for c in reversed(p):
        out = add(mul(out, [t, 1]), [c])
    return out


def sturm_sequence(p):
    seq = [trim(p), derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(scale(r, -1))
    return seq


def sign_changes(seq, x):
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq, a, b):
    """Number of distinct real roots in (a, b] via a precomputed Sturm sequence."""
    return sign_changes(seq, a) - sign_changes(seq, b)


def cauchy_bound(p):
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) for c in p[:-1]) / lead if len(p) > 1 else Fraction(1)


def resultant(p, q):
    """Resultant via the Sylvester determinant (exact)."""
    from .intmat import det

    p, q = trim(p), trim(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return det(rows)


def discriminant(p):
    p = trim(p)
    d = len(p) - 1
    res = resultant(p, derivative(p))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return Fraction(sign * res, p[-1])
