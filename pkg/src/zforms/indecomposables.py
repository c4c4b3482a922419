"""Indecomposable totally positive integers and their classes modulo unit squares."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embeddings import elements_between, is_totally_positive, totally_positive_window
from .exact import root_enclosure
from .units import is_unit_square_ratio, reduce_by_unit_squares


class NotTotallyPositive(ValueError):
    pass


class NotIntegral(ValueError):
    pass


def _check(alpha):
    if not alpha.is_integral:
        raise NotIntegral(f"{alpha} is not in the order")
    if not is_totally_positive(alpha):
        raise NotTotallyPositive(f"{alpha} is not totally positive")


def decomposition_witness(alpha):
    """First beta (sorted) with 0 < beta < alpha, as the pair (beta, alpha - beta)."""
    field = alpha.field
    found = elements_between(field, field.zero, alpha)
    if not found:
        return None
    return found[0], alpha - found[0]


def is_indecomposable(alpha, fast_path=True):
    """(True, None) if alpha is indecomposable, else (False, (beta, alpha - beta))."""
    _check(alpha)
    d = alpha.field.degree
    if fast_path and alpha.norm() < 2 ** d:
        return True, None
    w = decomposition_witness(alpha)
    return (w is None), w


@dataclass(frozen=True)
class IndecompClass:
    representative: object
    norm: int
    trace: int
    indecomposable: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class IndecomposableScan:
    classes: tuple
    trace_bound: int
    norm_bound: int
    note: str = "complete relative to the trace window and the listed units"

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]


def orbit_representatives(elements):
    """Deduplicate totally positive elements up to squares of listed units:
    greedy trace reduction, then pairwise quotient tests among equal norms."""
    reps = []
    seen = set()
    for a in elements:
        rep, _ = reduce_by_unit_squares(a)
        if rep in seen:
            continue
        if any(r.norm() == rep.norm() and is_unit_square_ratio(rep, r) for r in reps):
            continue
        seen.add(rep)
        reps.append(rep)
    return reps


def indecomposable_classes(field, norm_bound, trace_bound):
    if norm_bound < 1:
        return IndecomposableScan((), trace_bound, norm_bound)
    window = totally_positive_window(field, trace_bound)
    small = [a for a in window if a.norm() <= norm_bound]
    classes = []
    for rep in orbit_representatives(small):
        ok, _ = is_indecomposable(rep)
        if ok:
            classes.append(IndecompClass(rep, int(rep.norm()), int(rep.trace()), True))
    classes.sort(key=lambda c: (c.norm, c.trace, c.representative.sort_key()))
    return IndecomposableScan(tuple(classes), trace_bound, norm_bound)


def norm_superadditivity_check(a1, a2, max_bits=4096):
    """N(a1 + a2)^(1/d) >= N(a1)^(1/d) + N(a2)^(1/d), decided exactly.

    Equality holds iff a2 / a1 is rational, which is tested first; otherwise the
    inequality is strict and rational root enclosures are refined until they
    separate."""
    for a in (a1, a2):
        if not is_totally_positive(a):
            raise NotTotallyPositive(f"{a} is not totally positive")
    d = a1.field.degree
    q = a2 / a1
    if all(c == 0 for c in q.num[1:]):
        return True
    n1, n2, n3 = Fraction(a1.norm()), Fraction(a2.norm()), Fraction((a1 + a2).norm())
    bits = 64
    while bits <= max_bits:
        r1, r2, r3 = (root_enclosure(x, d, bits) for x in (n1, n2, n3))
        if r3.lo >= r1.hi + r2.hi:
            return True
        if r3.hi < r1.lo + r2.lo:
            return False
        bits *= 2
    raise ArithmeticError("norm enclosures failed to separate")
