"""Helpers around the listed unit generators: words, squares, square roots."""

from __future__ import annotations

import itertools

from .embeddings import _float_solve, is_totally_positive


def unit_words(field, max_exp=1):
    """(exponents, sign, unit) for +-prod u_i^e_i with |e_i| <= max_exp, graded by
    word length sum |e_i| then lexicographically; the sign +1 before -1."""
    gens = field.units
    words = list(itertools.product(range(-max_exp, max_exp + 1), repeat=len(gens)))
    words.sort(key=lambda e: (sum(abs(x) for x in e), [abs(x) for x in e], e))
    for exps in words:
        u = field.one
        for g, e in zip(gens, exps):
            if e:
                u = u * g ** e
        for sign in (1, -1):
            yield exps, sign, u if sign == 1 else -u


def unit_square_steps(field):
    """u^2 and u^-2 for each listed generator, in generator order."""
    out = []
    for u in field.units:
        sq = u * u
        out.append(sq)
        out.append(sq.inverse())
    return out


def reduce_by_unit_squares(x, key=None):
    """Greedy descent of Tr(x * eps^2) over generator squares.

    Returns (rep, multiplier) with rep = x * multiplier, multiplier a product of
    squares of listed units; stops when no single step lowers the key."""
    field = x.field
    key = key or (lambda e: (e.trace(), e.sort_key()))
    steps = unit_square_steps(field)
    rep, mult = x, field.one
    best = key(rep)
    improved = True
    while improved:
        improved = False
        for s in steps:
            cand = rep * s
            k = key(cand)
            if k < best:
                rep, mult, best = cand, mult * s, k
                improved = True
                break
    return rep, mult


def sqrt_element(a):
    """An x in O_K with x^2 = a (the one with sigma_1(x) > 0), or None."""
    if not a:
        return a
    if not a.is_integral or not is_totally_positive(a):
        return None
    field = a.field
    d = field.degree
    roots = field.real_roots()
    vand = [[r ** j for j in range(d)] for r in roots]
    mags = [v ** 0.5 for v in a.embed()]
    for signs in itertools.product((1, -1), repeat=d - 1):
        target = [mags[0]] + [s * m for s, m in zip(signs, mags[1:])]
        y = _float_solve(vand, target)
        x = field.element([round(c) for c in y])
        if x * x == a:
            return x if x.embed()[0] > 0 else -x
    return None


def is_unit(x):
    return x.is_integral and abs(x.norm()) == 1


def is_unit_square_ratio(a, b):
    """True iff a / b is the square of a unit."""
    q = a / b
    return is_unit(q) and sqrt_element(q) is not None


def totally_positive_units(field, max_exp=2):
    """Distinct totally positive units among the words with |e_i| <= max_exp."""
    seen = set()
    out = []
    for _, _, u in unit_words(field, max_exp):
        if u not in seen and is_totally_positive(u):
            seen.add(u)
            out.append(u)
    return out


def signature_group(field):
    """Set of signatures realized by +-products of listed units."""
    from .embeddings import signature_of

    sigs = set()
    for _, _, u in unit_words(field, 1):
        sigs.add(signature_of(u))
    return sigs
