"""Fincke-Pohst enumeration core.

Candidates are generated with float arithmetic from an exactly computed LDL^T,
with the bound widened by a relative slack; every caller re-verifies what it
keeps with exact integer/rational arithmetic, so the slack only ever adds
candidates, never removes them.
"""

import math

SLACK = 1e-9


def enumerate_ellipsoid(diag, mu, bound, center=None, half=False):
    """Yield (x, approx_value) for integer x with
    sum_i diag[i] * (y_i + sum_{j>i} mu[i][j] * y_j)**2 <= bound, y = x - center.

    `diag`, `mu`, `center` are floats. With half=True (center must be zero) only
    one of each +-x pair is produced, plus the zero vector.
    """
    n = len(diag)
    if n == 0:
        yield (), 0.0
        return
    c = list(center) if center is not None else [0.0] * n
    tol = SLACK * max(1.0, abs(bound))
    big = bound + tol
    x = [0] * n
    ctr = [0.0] * n
    rem = [0.0] * (n + 1)
    hi = [0] * n
    rem[n] = big
    # nonzero[i]: some coordinate above level i is nonzero (for half-space pruning)
    nonzero = [False] * (n + 1)

    def level_range(i):
        s = c[i]
        row = mu[i]
        for j in range(i + 1, n):
            m = row[j]
            if m:
                s -= m * (x[j] - c[j])
        ctr[i] = s
        r2 = rem[i + 1] / diag[i]
        if r2 < 0:
            return 1, 0
        r = math.sqrt(r2)
        pad = 1e-9 * (1.0 + abs(s) + r)
        lo = math.ceil(s - r - pad)
        top = math.floor(s + r + pad)
        if half and not nonzero[i + 1] and lo < 0:
            lo = 0
        return lo, top

    i = n - 1
    lo, hi[i] = level_range(i)
    x[i] = lo - 1
    while True:
        x[i] += 1
        if x[i] > hi[i]:
            i += 1
            if i == n:
                return
            continue
        t = x[i] - ctr[i]
        r = rem[i + 1] - diag[i] * t * t
        if r < -tol:
            # still inside the padded range only at its edges; keep scanning
            continue
        rem[i] = r
        nonzero[i] = nonzero[i + 1] or x[i] != 0
        if i == 0:
            if half and not nonzero[0]:
                # zero vector
                yield tuple(x), 0.0
            else:
                yield tuple(x), big - r
            continue
        i -= 1
        lo, hi[i] = level_range(i)
        if half and not nonzero[i + 1]:
            # all higher coordinates zero: this level must be >= 0
            lo = max(lo, 0)
        x[i] = lo - 1
