"""Certified real embeddings, exact total positivity, and box enumeration in O_K."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from ._fp import enumerate_ellipsoid
from .intmat import lll_gram, ldl


class EmbeddingError(ValueError):
    pass


class ZeroElement(EmbeddingError):
    pass


class UnboundedBox(EmbeddingError):
    pass


class PrecisionExhausted(EmbeddingError):
    pass


START_BITS = 64
MAX_BITS = 4096


class EmbeddingData:
    """Disjoint isolating rational intervals for the real roots, ascending."""

    def __init__(self, minpoly, intervals):
        self.minpoly = list(minpoly)
        self.intervals = [tuple(iv) for iv in intervals]

    def width(self):
        return max(hi - lo for lo, hi in self.intervals)

    def refined(self, bits):
        """Return a copy with every interval of width <= 2**-bits (nested in self)."""
        target = Fraction(1, 2 ** bits)
        f = self.minpoly
        out = []
        for lo, hi in self.intervals:
            flo = poly.evaluate(f, lo)
            while hi - lo > target:
                mid = (lo + hi) / 2
                fm = poly.evaluate(f, mid)
                if fm == 0:
                    lo = hi = mid
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            out.append((lo, hi))
        return EmbeddingData(f, out)

    def floats(self):
        return [float((lo + hi) / 2) for lo, hi in self.intervals]


def isolate_roots(field, precision_bits=START_BITS):
    """Sturm-sequence isolation of the d real roots, refined to the requested width."""
    f = list(field.minpoly)
    seq = poly.sturm_sequence(f)
    bound = poly.cauchy_bound(f)
    # endpoints must not be roots; the Cauchy bound is strict, bisection midpoints
    # that hit a root are nudged
    pending = [(-bound, bound)]
    found = []
    while pending:
        lo, hi = pending.pop()
        n = poly.count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1 and poly.evaluate(f, hi) != 0:
            found.append((lo, hi))
            continue
        if n == 1:
            # root exactly at hi (rational root): shrink to a tiny interval around it
            eps = (hi - lo) / 4
            found.append((hi - eps, hi + eps) if poly.count_roots(seq, hi - eps, hi + eps) == 1 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        if poly.evaluate(f, mid) == 0:
            mid += (hi - lo) / 7
        pending.append((lo, mid))
        pending.append((mid, hi))
    found.sort()
    data = EmbeddingData(f, found)
    return data.refined(precision_bits)


def _interval_eval(num, den, lo, hi):
    """Interval enclosure of (sum num_j x^j)/den for x in [lo, hi]."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(num):
        # [a, b] * [lo, hi]
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a / den, b / den


def embedding_intervals(elem, bits=START_BITS):
    data = elem.field.embeddings if bits <= START_BITS else elem.field.embeddings.refined(bits)
    return [_interval_eval(elem.num, elem.den, lo, hi) for lo, hi in data.intervals]


def _float_signs(elem):
    """Signs of the embeddings from a float evaluation with a conservative error
    bound; None where undecided."""
    out = []
    for r in elem.field.real_roots():
        acc = 0.0
        mag = 0.0
        ar = abs(r) + 1.0
        for c in reversed(elem.num):
            acc = acc * r + c
            mag = mag * ar + abs(c)
        err = 1e-11 * mag
        if acc > err:
            out.append(1)
        elif acc < -err:
            out.append(-1)
        else:
            out.append(None)
    return out


def charpoly_alternates(elem):
    """Exact total positivity: charpoly coefficients strictly alternate in sign."""
    cp = elem.charpoly()
    d = len(cp) - 1
    for k, c in enumerate(cp):
        expected = 1 if (d - k) % 2 == 0 else -1
        if c == 0 or (c > 0) != (expected > 0):
            return False
    return True


def is_totally_positive(elem):
    if not elem:
        return False
    signs = _float_signs(elem)
    if all(s == 1 for s in signs):
        return True
    if any(s == -1 for s in signs):
        return False
    return charpoly_alternates(elem)


def is_totally_nonnegative(elem):
    return not elem or is_totally_positive(elem)


def signature_of(elem):
    """Tuple of +1/-1 signs of the embeddings (ascending root order)."""
    if not elem:
        raise ZeroElement("signature of zero is undefined")
    signs = _float_signs(elem)
    if all(s is not None for s in signs):
        return tuple(signs)
    bits = START_BITS
    while bits <= MAX_BITS:
        ivs = embedding_intervals(elem, bits)
        if all(lo > 0 or hi < 0 for lo, hi in ivs):
            return tuple(1 if lo > 0 else -1 for lo, hi in ivs)
        bits *= 2
    raise PrecisionExhausted("could not certify signature")


def compare_embedding(elem, i, q):
    """Sign of sigma_i(elem) - q for rational q, exactly."""
    if elem == elem.field.from_fractions([q]):
        return 0
    bits = START_BITS
    while bits <= MAX_BITS:
        lo, hi = embedding_intervals(elem, bits)[i]
        if lo > q:
            return 1
        if hi < q:
            return -1
        bits *= 2
    raise PrecisionExhausted(f"cannot separate embedding {i} from {q}")


@dataclass(frozen=True)
class EnumerationBox:
    """Open box lo_i < sigma_i(x) < hi_i, optionally over scale * O_K and with a
    linear equality sum_j coeffs[j] * y_j == target on the O_K-coordinates y."""

    lo: tuple
    hi: tuple
    linear: tuple | None = None
    scale: object = None

    def __post_init__(self):
        for a, b in zip(self.lo, self.hi):
            if a is None or b is None or (isinstance(a, float) and math.isinf(a)) or (
                isinstance(b, float) and math.isinf(b)
            ):
                raise UnboundedBox("every box bound must be finite")
            if not a < b:
                raise EmbeddingError("box has lo >= hi")


def _reduced_frame(field, weights):
    """LLL-reduced float frame for the form sum_i w_i sigma_i(y)^2 on O_K."""
    roots = field.real_roots()
    d = field.degree
    gram = [[sum(w * r ** (j + k) for w, r in zip(weights, roots)) for k in range(d)] for j in range(d)]
    scale = 2.0 ** 40 / max(abs(gram[i][i]) for i in range(d))
    igram = [[round(gram[j][k] * scale) for k in range(d)] for j in range(d)]
    try:
        _, t = lll_gram(igram)
    except ValueError:
        t = [[int(i == j) for j in range(d)] for i in range(d)]
    red = [[sum(t[a][j] * gram[j][k] * t[b][k] for j in range(d) for k in range(d)) for b in range(d)] for a in range(d)]
    return roots, t, red


def _float_ldl(g):
    n = len(g)
    a = [list(map(float, r)) for r in g]
    diag = []
    mu = [[0.0] * n for _ in range(n)]
    for i in range(n):
        piv = a[i][i]
        if piv <= 0:
            raise EmbeddingError("degenerate enumeration frame")
        diag.append(piv)
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / piv
        for j in range(i + 1, n):
            f = a[i][j]
            for k in range(j, n):
                a[j][k] -= f * mu[i][k]
    return diag, mu


def _candidates(field, centers, halfwidths):
    """Integer coordinate vectors y whose embeddings might lie in the box
    |sigma_i(y) - centers_i| < halfwidths_i (covering ellipsoid)."""
    d = field.degree
    weights = [1.0 / (h * h) for h in halfwidths]
    roots, t, red = _reduced_frame(field, weights)
    # center in power-basis coordinates: solve V y = centers
    vand = [[r ** j for j in range(d)] for r in roots]
    yc = _float_solve(vand, centers)
    # reduced coordinates z with y = t^T z  =>  z = (t^T)^{-1} y
    tt = [[t[j][i] for j in range(d)] for i in range(d)]
    zc = _float_solve([[float(x) for x in row] for row in tt], yc)
    diag, mu = _float_ldl(red)
    for z, _ in enumerate_ellipsoid(diag, mu, float(d), center=zc):
        yield [sum(t[a][j] * z[a] for a in range(d)) for j in range(d)]


def _float_solve(a, b):
    n = len(a)
    m = [list(map(float, row)) + [float(v)] for row, v in zip(a, b)]
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(m[i][k]))
        m[k], m[piv] = m[piv], m[k]
        for i in range(n):
            if i != k:
                f = m[i][k] / m[k][k]
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] / m[i][i] for i in range(n)]


def enumerate_box(field, box: EnumerationBox, predicate=None):
    """All x = scale * y (y in O_K) with lo_i < sigma_i(x) < hi_i and the linear
    constraint, each confirmed exactly; sorted by (den, num)."""
    d = field.degree
    scale = box.scale
    sfl = scale.embed() if scale is not None else [1.0] * d
    if any(s <= 0 for s in sfl) and scale is not None and not is_totally_positive(scale):
        raise EmbeddingError("box scale must be totally positive")
    lo = [float(a) / s for a, s in zip(box.lo, sfl)]
    hi = [float(b) / s for b, s in zip(box.hi, sfl)]
    centers = [(a + b) / 2 for a, b in zip(lo, hi)]
    half = [(b - a) / 2 * (1 + 1e-9) + 1e-12 for a, b in zip(lo, hi)]
    out = []
    for y in _candidates(field, centers, half):
        if box.linear is not None:
            coeffs, target = box.linear
            if sum(c * v for c, v in zip(coeffs, y)) != target:
                continue
        elem = field.element(y)
        x = elem * scale if scale is not None else elem
        if not _inside(x, box):
            continue
        if predicate is not None and not predicate(x):
            continue
        out.append(x)
    out.sort(key=lambda e: e.sort_key())
    return out


def _inside(x, box):
    emb = x.embed()
    for i, (v, a, b) in enumerate(zip(emb, box.lo, box.hi)):
        fa, fb = float(a), float(b)
        margin = 1e-9 * (1 + abs(v))
        if v < fa - margin or v > fb + margin:
            return False
        if v <= fa + margin and compare_embedding(x, i, Fraction(a)) <= 0:
            return False
        if v >= fb - margin and compare_embedding(x, i, Fraction(b)) >= 0:
            return False
    return True


def elements_between(field, lower, upper, extra=None):
    """All x in O_K with lower < x < upper (totally), exact; sorted."""
    lo_f = lower.embed()
    hi_f = upper.embed()
    centers = [(a + b) / 2 for a, b in zip(lo_f, hi_f)]
    half = [(b - a) / 2 * (1 + 1e-9) + 1e-12 for a, b in zip(lo_f, hi_f)]
    if any(h <= 0 for h in half):
        return []
    out = []
    for y in _candidates(field, centers, half):
        x = field.element(y)
        if is_totally_positive(x - lower) and is_totally_positive(upper - x):
            if extra is None or extra(x):
                out.append(x)
    out.sort(key=lambda e: e.sort_key())
    return out


def totally_positive_window(field, trace_bound, scale=None, include_zero=False):
    """All totally positive x in O_K (or scale*O_K) with Tr(x) <= trace_bound, sorted
    by (trace, coordinates)."""
    d = field.degree
    t = Fraction(trace_bound)
    if t <= 0:
        return [field.zero] if include_zero else []
    box = EnumerationBox(lo=tuple([Fraction(0)] * d), hi=tuple([t + 1] * d), scale=scale)
    xs = enumerate_box(field, box, predicate=lambda x: x.trace() <= t and is_totally_positive(x))
    if include_zero:
        xs.append(field.zero)
    xs.sort(key=lambda e: (e.trace(), e.den, e.num))
    return xs
