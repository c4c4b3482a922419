"""Sums of squares in O_K, Pythagoras scans and Gram sum-of-squares witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .embeddings import EnumerationBox, enumerate_box, is_totally_nonnegative, is_totally_positive
from .lattice import NotPositiveDefinite, ZForm, is_positive_semidefinite, iter_short_vectors, sum_of_squares_form
from .traceforms import trace_gram
from .units import sqrt_element


class NotTotallyNonnegative(ValueError):
    pass


class RankTooLarge(ValueError):
    pass


class NotClassical(ValueError):
    pass


def square_candidates(alpha):
    """Nonzero x (first nonzero coordinate positive) with x^2 <= alpha totally,
    as (x, x^2) sorted by decreasing trace of x^2, ties lexicographic."""
    field = alpha.field
    d = field.degree
    his = []
    for v in alpha.embed():
        s = math.sqrt(max(v, 0.0))
        his.append(Fraction(s) * (1 + Fraction(1, 10 ** 9)) + Fraction(1, 10 ** 9))
    box = EnumerationBox(lo=tuple(-h for h in his), hi=tuple(his))
    out = []
    for x in enumerate_box(field, box):
        if not x:
            continue
        lead = next(c for c in x.num if c)
        if lead < 0:
            continue
        sq = x * x
        if is_totally_nonnegative(alpha - sq):
            out.append((x, sq))
    out.sort(key=lambda p: (-p[1].trace(), p[0].sort_key()))
    return out


def sos_representation(alpha, max_len):
    """A shortest list [x_1, ..., x_k] (k <= max_len) with sum x_i^2 = alpha, or None."""
    if not alpha:
        return []
    if not alpha.is_integral or not is_totally_nonnegative(alpha):
        raise NotTotallyNonnegative(f"{alpha} is not a totally nonnegative integer")
    d = alpha.field.degree
    r = sqrt_element(alpha)
    if r is not None:
        return [r]
    cands = square_candidates(alpha)
    traces = [sq.trace() for _, sq in cands]

    def search(rem, k, start):
        # rem must be a sum of exactly k nonzero squares from cands[start:]
        if k == 1:
            root = sqrt_element(rem)
            if root is None:
                return None
            key = rem.trace()
            # the root's square must come no earlier than `start` in the order
            for i in range(start, len(cands)):
                if traces[i] < key:
                    break
                if cands[i][1] == rem:
                    return [cands[i][0]]
            return None
        t = rem.trace()
        if t < k * d or rem.norm() < k ** d:
            return None
        for i in range(start, len(cands)):
            x, sq = cands[i]
            if traces[i] * k < t:
                break
            nxt = rem - sq
            if not is_totally_positive(nxt):
                continue
            rest = search(nxt, k - 1, i)
            if rest is not None:
                return [x] + rest
        return None

    for k in range(2, max_len + 1):
        found = search(alpha, k, 0)
        if found is not None:
            return found
    return None


def sos_length(alpha, max_len):
    rep = sos_representation(alpha, max_len)
    return None if rep is None else len(rep)


@dataclass(frozen=True)
class PythagorasReport:
    observed_max: int
    histogram: dict
    trace_bound: int
    upper_bound: int | None
    first_non_sos: object = None
    capped: bool = False
    note: str = "observed_max is a lower bound for the Pythagoras number"


def squares_in_window(field, trace_bound):
    """Distinct nonzero squares x^2 with Tr(x^2) <= trace_bound (via the trace form t_1)."""
    t1 = ZForm.from_gram(trace_gram(field, field.one))
    out = {}
    for v, _ in iter_short_vectors(t1, trace_bound):
        x = field.element(v)
        sq = x * x
        out[tuple(sq.num)] = sq
    return out


def pythagoras_scan(field, trace_bound, max_len=None):
    """Exact square lengths of every sum of squares with trace <= trace_bound."""
    d = field.degree
    if trace_bound < d:
        raise ValueError("trace_bound must be at least the degree")
    upper = d + 3 if d <= 5 else None
    max_len = max_len or d + 3
    sq = squares_in_window(field, trace_bound)
    sq_traces = {k: v.trace() for k, v in sq.items()}
    length = {tuple([0] * d): 0}
    frontier = {tuple([0] * d): Fraction(0)}
    k = 0
    capped = False
    while frontier:
        if k == max_len:
            capped = True
            break
        k += 1
        nxt = {}
        for a, ta in frontier.items():
            for s, ts in sq_traces.items():
                if ta + ts > trace_bound:
                    continue
                b = tuple(x + y for x, y in zip(a, s))
                if b not in length and b not in nxt:
                    nxt[b] = ta + ts
        for b in nxt:
            length[b] = k
        frontier = nxt
    hist = {}
    for v in length.values():
        hist[v] = hist.get(v, 0) + 1
    from .embeddings import totally_positive_window

    first = None
    for a in totally_positive_window(field, trace_bound):
        if tuple(a.num) not in length:
            first = a
            break
    return PythagorasReport(
        observed_max=max(hist),
        histogram=dict(sorted(hist.items())),
        trace_bound=trace_bound,
        upper_bound=upper,
        first_non_sos=first,
        capped=capped,
    )


def gram_sos_decomposition(q, s_max):
    """Integer X (s x r, s <= s_max minimal) with M_Q = X^T X, or None."""
    if not q.classical:
        raise NotClassical("sum-of-squares decomposition needs a classical form")
    if q.rank > 5:
        raise RankTooLarge("rank > 5 is outside the k(r) = 1 range")
    if not is_positive_semidefinite(q):
        raise NotPositiveDefinite("form is not positive semidefinite")
    m = [[x // 2 for x in row] for row in q.doubled]
    r = q.rank
    for s in range(1, s_max + 1):
        cols = _columns(m, r, s)
        if cols is not None:
            return [[cols[j][i] for j in range(r)] for i in range(s)]
    return None


def _norm_vectors(s, n, cache):
    key = (s, n)
    if key not in cache:
        if n == 0:
            cache[key] = ([(0,) * s], [(0,) * s])
        else:
            reps = [v for v, _ in iter_short_vectors(sum_of_squares_form(s), n, exact=n)]
            full = set(reps) | {tuple(-x for x in v) for v in reps}
            cache[key] = (sorted(reps, reverse=True), sorted(full, reverse=True))
    return cache[key]


def _columns(m, r, s):
    cache = {}
    cols = []

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    def extend(j):
        if j == r:
            return True
        reps, full = _norm_vectors(s, m[j][j], cache)
        pool = reps if j == 0 else full
        for c in pool:
            if all(dot(cols[i], c) == m[i][j] for i in range(j)):
                cols.append(c)
                if extend(j + 1):
                    return True
                cols.pop()
        return False

    return cols if extend(0) else None
